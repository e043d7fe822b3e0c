// fspec: command-line front end for the spectrum laboratory.
//
//   transform   evaluate the transform at explicit frequencies
//   energy      partial energies and ball averages over dyadic shells
//   spectrum    estimate the spectrum curve, with structural diagnostics
//   oracle      closed-form curves as CSV
//   compare     estimate vs closed form with tolerance gating
//   convolve    k-fold convolution curve and the improvement test
//   sumset      sumset dimension conclusions from spectrum curves
//   distance    distance-set conclusions (curve sup and fourth moment)
//   plotdata    long-format CSV of several curves
//
// Exit codes: 0 success, 1 usage/parse/comparison failure, 2 diagnostics
// failure (curve computed but a structural check did not hold).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fspec/applications.hpp"
#include "fspec/csv.hpp"
#include "fspec/descriptor.hpp"
#include "fspec/energy.hpp"
#include "fspec/measures.hpp"
#include "fspec/oracles.hpp"
#include "fspec/spectrum.hpp"
#include "fspec/transform.hpp"

namespace {

using namespace fspec;

struct CommonFlags {
  int shells = 0;  // 0 = pick by dimension
  std::string theta_grid = "0:1:0.05";
  bool as_set = false;
  double tol = 1e-10;
  std::string out;
  int threads = 0;
  std::string cache;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool wants_grid = true) {
  if (wants_grid)
    cmd->add_option("--grid-shells", f.shells,
                    "dyadic shells J (default 16/10/8 for d = 1/2/3)");
  cmd->add_option("--theta-grid", f.theta_grid,
                  "theta values: 'a:b:step' or comma list");
  cmd->add_flag("--as-set", f.as_set, "clamp estimates at the ambient d");
  cmd->add_option("--tol", f.tol, "per-point quadrature tolerance");
  cmd->add_option("--out", f.out, "output file (or directory for spectrum)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  cmd->add_option("--cache", f.cache,
                  "sample cache directory (FSPEC_CACHE_DIR honored)");
}

SampleOptions sample_options(const CommonFlags& f) {
  SampleOptions o;
  o.threads = f.threads;
  o.tol = f.tol;
  o.cache_dir = f.cache;
  if (o.cache_dir.empty()) {
    if (const char* env = std::getenv("FSPEC_CACHE_DIR")) o.cache_dir = env;
  }
  return o;
}

int default_shells(int dim) { return dim == 1 ? 16 : dim == 2 ? 10 : 8; }

std::vector<double> parse_theta_grid(const std::string& text) {
  std::vector<double> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    double a, b, step;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0.0)
      throw std::invalid_argument("bad theta grid '" + text + "'");
    for (double t = a; t <= b + 1e-12; t += step)
      out.push_back(std::min(t, b));
  } else {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ','))
      if (!tok.empty()) out.push_back(std::stod(tok));
  }
  for (double t : out)
    if (t < 0.0 || t > 1.0)
      throw std::invalid_argument("theta values must lie in [0,1]");
  if (out.empty()) throw std::invalid_argument("empty theta grid");
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

// "name:k=v,k=v" oracle constructor
ClosedFormSpectrum parse_oracle(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("bad oracle parameter '" + tok + "'");
      kv[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(std::string("oracle '" + name +
                                              "' needs parameter ") +
                                  key);
    return it->second;
  };
  if (name == "cube")
    return oracle_embedded_cube(int(need("k")), int(need("d")));
  if (name == "riesz") return oracle_riesz(need("a"), int(need("lambda")));
  if (name == "cantor") return oracle_cantor(need("p"));
  if (name == "bernoulli") return oracle_bernoulli_half(need("p"));
  if (name == "curve") return oracle_curve(need("p"));
  if (name == "firstsharp") return oracle_firstsharp(int(need("d")));
  throw std::invalid_argument("unknown oracle '" + name + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(tok);
  return out;
}

SpectrumCurve read_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  const auto header = split_csv_line(line);
  auto col = [&](const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw std::runtime_error(path + ": missing column " + name);
  };
  const int c_theta = col("theta"), c_value = col("estimate"),
            c_ci = col("ci_halfwidth"), c_lo = col("liminf_proxy"),
            c_hi = col("limsup_proxy"), c_flags = col("flags"),
            c_dim = col("dim"), c_set = col("as_set");
  SpectrumCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    SpectrumPoint p;
    p.theta = std::stod(cells.at(c_theta));
    p.value = std::stod(cells.at(c_value));
    p.ci_halfwidth = std::stod(cells.at(c_ci));
    p.liminf_proxy = std::stod(cells.at(c_lo));
    p.limsup_proxy = std::stod(cells.at(c_hi));
    p.flags = static_cast<unsigned>(std::stoul(cells.at(c_flags)));
    curve.dim = std::stoi(cells.at(c_dim));
    curve.as_set = cells.at(c_set) == "1";
    curve.points.push_back(p);
  }
  if (curve.points.empty()) throw std::runtime_error(path + ": no rows");
  return curve;
}

// curve source: "oracle:<spec>" or a spectrum.csv path
CurveAlgebra load_curve(const std::string& src) {
  if (src.rfind("oracle:", 0) == 0)
    return CurveAlgebra::from_oracle(parse_oracle(src.substr(7)));
  return CurveAlgebra::from_points(read_spectrum_csv(src));
}

// output helper: file when --out given, stdout otherwise.  The companion
// text report then goes to stdout or stderr respectively, so piping the CSV
// stays clean.
struct OutputPair {
  std::ofstream file;
  bool to_file = false;
  std::ostream& csv() { return to_file ? file : std::cout; }
  std::ostream& text() { return to_file ? std::cout : std::cerr; }
  explicit OutputPair(const std::string& out) {
    if (!out.empty()) {
      file.open(out);
      if (!file) throw std::runtime_error("cannot write " + out);
      to_file = true;
    }
  }
};

std::string spectrum_csv_text(const SpectrumCurve& curve) {
  std::ostringstream out;
  out << "theta,estimate,ci_halfwidth,liminf_proxy,limsup_proxy,flags,dim,"
         "as_set\n";
  for (const auto& p : curve.points)
    out << csv_double(p.theta) << ',' << csv_double(p.value) << ','
        << csv_double(p.ci_halfwidth) << ',' << csv_double(p.liminf_proxy)
        << ',' << csv_double(p.limsup_proxy) << ',' << p.flags << ','
        << curve.dim << ',' << (curve.as_set ? 1 : 0) << '\n';
  return out.str();
}

// per-theta shell table: both profiles at the probe exponent s = theta d
std::string energy_csv_text(const TransformSamples& samples,
                            const std::vector<double>& thetas,
                            const std::vector<double>& s_list) {
  std::ostringstream out;
  out << "theta,s,shell_index,R,log_partial_energy,log_ball_average,rel_err\n";
  for (double theta : thetas) {
    for (double s : s_list) {
      const EnergyProfile pe = partial_energy_profile(samples, theta, s);
      const bool with_ball = theta > 0.0;
      BallProfile ball;
      if (with_ball) ball = ball_average_profile(samples, theta);
      for (size_t j = 0; j < pe.radii.size(); ++j) {
        const double ball_v = with_ball ? ball.log_average[j]
                                        : std::numeric_limits<double>::quiet_NaN();
        const double err = with_ball ? std::max(pe.rel_err[j], ball.rel_err[j])
                                     : pe.rel_err[j];
        out << csv_double(theta) << ',' << csv_double(s) << ',' << (j + 1)
            << ',' << csv_double(pe.radii[j]) << ','
            << csv_double(pe.log_value[j]) << ',' << csv_double(ball_v) << ','
            << csv_double(err) << '\n';
      }
    }
  }
  return out.str();
}

const char* moment_name(DistanceReport::Moment m) {
  switch (m) {
    case DistanceReport::Moment::kConverges: return "converges";
    case DistanceReport::Moment::kDiverges: return "diverges";
    case DistanceReport::Moment::kInconclusive: return "inconclusive";
    default: return "not_run";
  }
}

int cmd_transform(const std::string& path, const std::vector<std::string>& zs,
                  const CommonFlags& flags) {
  const Measure m = load_measure(path);
  OutputPair out(flags.out);
  out.csv() << "z1,z2,z3,re,im,abs,err\n";
  for (const auto& ztext : zs) {
    const auto comps = parse_list(ztext);
    if (comps.empty() || comps.size() > std::size_t(m.dim()))
      throw std::invalid_argument("frequency '" + ztext + "' needs 1 to " +
                                  std::to_string(m.dim()) + " components");
    Vec z{};
    for (size_t i = 0; i < comps.size(); ++i) z[i] = comps[i];
    const TransformValue v = eval_transform(m, z, flags.tol);
    out.csv() << csv_double(z[0]) << ',' << csv_double(z[1]) << ','
              << csv_double(z[2]) << ',' << csv_double(v.value.real()) << ','
              << csv_double(v.value.imag()) << ','
              << csv_double(std::abs(v.value)) << ',' << csv_double(v.err)
              << '\n';
  }
  return 0;
}

int cmd_energy(const std::string& path, const std::string& theta_list,
               const std::string& s_list, const CommonFlags& flags) {
  const Measure m = load_measure(path);
  const int shells = flags.shells ? flags.shells : default_shells(m.dim());
  const FrequencyGrid grid = FrequencyGrid::standard(m, shells);
  const TransformSamples samples = sample_grid(m, grid, sample_options(flags));
  const std::vector<double> thetas = parse_theta_grid(theta_list);
  const std::vector<double> ss = parse_list(s_list);
  if (ss.empty()) throw std::invalid_argument("empty s list");
  OutputPair out(flags.out);
  for (double s : ss)
    if (s == 0.0)
      out.text() << "note: s=0 rows omit the inner ball (not integrable "
                    "there); partial energies are exterior-only\n";
  out.csv() << energy_csv_text(samples, thetas, ss);
  return 0;
}

int cmd_spectrum(const std::string& path, const CommonFlags& flags) {
  const Measure m = load_measure(path);
  const int shells = flags.shells ? flags.shells : default_shells(m.dim());
  if (shells < 6)
    throw std::invalid_argument("spectrum runs need at least 6 shells");
  const FrequencyGrid grid = FrequencyGrid::standard(m, shells);
  const TransformSamples samples = sample_grid(m, grid, sample_options(flags));
  const std::vector<double> thetas = parse_theta_grid(flags.theta_grid);

  EstimateOptions eopts;
  eopts.as_set = flags.as_set;
  const SpectrumCurve curve = estimate_spectrum(samples, thetas, eopts);
  const DiagnosticsReport report = run_diagnostics(curve, m.holder());

  // probe exponent s = theta d for the energy table
  std::ostringstream energy;
  energy << "theta,s,shell_index,R,log_partial_energy,log_ball_average,rel_err\n";
  for (double theta : thetas) {
    const double s = theta * m.dim();
    const EnergyProfile pe = partial_energy_profile(samples, theta, s);
    const bool with_ball = theta > 0.0;
    BallProfile ball;
    if (with_ball) ball = ball_average_profile(samples, theta);
    for (size_t j = 0; j < pe.radii.size(); ++j) {
      const double ball_v = with_ball ? ball.log_average[j]
                                      : std::numeric_limits<double>::quiet_NaN();
      const double err = with_ball ? std::max(pe.rel_err[j], ball.rel_err[j])
                                   : pe.rel_err[j];
      energy << csv_double(theta) << ',' << csv_double(s) << ',' << (j + 1)
             << ',' << csv_double(pe.radii[j]) << ','
             << csv_double(pe.log_value[j]) << ',' << csv_double(ball_v)
             << ',' << csv_double(err) << '\n';
    }
  }

  if (flags.out.empty()) {
    std::cout << spectrum_csv_text(curve);
    std::cerr << report.str();
  } else {
    std::filesystem::create_directories(flags.out);
    const auto dir = std::filesystem::path(flags.out);
    std::ofstream(dir / "spectrum.csv") << spectrum_csv_text(curve);
    std::ofstream(dir / "energy.csv") << energy.str();
    std::ofstream(dir / "diagnostics.txt")
        << report.str() << (report.ok() ? "ok\n" : "FAILED\n");
    std::cout << "wrote " << (dir / "spectrum.csv").string() << ", energy.csv, "
              << "diagnostics.txt (" << (report.ok() ? "ok" : "FAILED")
              << ")\n";
  }
  return report.ok() ? 0 : 2;
}

int cmd_oracle(const std::string& spec, const CommonFlags& flags) {
  const ClosedFormSpectrum cf = parse_oracle(spec);
  const std::vector<double> thetas = parse_theta_grid(flags.theta_grid);
  OutputPair out(flags.out);
  out.csv() << "theta,value,kind\n";
  for (double t : thetas) {
    const OracleValue v = cf.eval(t);
    if (v.kind == OracleKind::kExact) {
      out.csv() << csv_double(t) << ',' << csv_double(v.lo) << ",exact\n";
    } else {
      out.csv() << csv_double(t) << ',' << csv_double(v.lo)
                << ",lower_bound\n";
      out.csv() << csv_double(t) << ',' << csv_double(v.hi)
                << ",upper_bound\n";
    }
  }
  return 0;
}

int cmd_compare(const std::string& path, const std::string& oracle_spec,
                double gate, const CommonFlags& flags) {
  const Measure m = load_measure(path);
  const ClosedFormSpectrum cf = parse_oracle(oracle_spec);
  const int shells = flags.shells ? flags.shells : default_shells(m.dim());
  const FrequencyGrid grid = FrequencyGrid::standard(m, shells);
  const TransformSamples samples = sample_grid(m, grid, sample_options(flags));
  const std::vector<double> thetas = parse_theta_grid(flags.theta_grid);
  EstimateOptions eopts;
  eopts.as_set = flags.as_set;
  const SpectrumCurve curve = estimate_spectrum(samples, thetas, eopts);

  OutputPair out(flags.out);
  out.csv() << "theta,estimate,ci_halfwidth,oracle_lo,oracle_hi,oracle_kind,"
               "gap,within\n";
  int breaches = 0;
  double max_gap = 0.0, sum_sq = 0.0;
  int exact_rows = 0;
  for (const auto& p : curve.points) {
    const OracleValue v = cf.eval(p.theta);
    double gap = 0.0;
    bool within = true;
    const char* kind = "exact";
    if (v.kind == OracleKind::kExact) {
      gap = p.value - v.lo;
      within = std::fabs(gap) <= gate;
      max_gap = std::max(max_gap, std::fabs(gap));
      sum_sq += gap * gap;
      ++exact_rows;
      if (!within) ++breaches;
    } else {
      kind = v.kind == OracleKind::kBand ? "band" : "lower_bound";
      // one-sided: estimates may exceed a lower bound freely
      if (p.value < v.lo) gap = p.value - v.lo;
      if (p.value > v.hi) gap = p.value - v.hi;
      within = p.value >= v.lo - gate && p.value <= v.hi + gate;
    }
    out.csv() << csv_double(p.theta) << ',' << csv_double(p.value) << ','
              << csv_double(p.ci_halfwidth) << ',' << csv_double(v.lo) << ','
              << csv_double(v.hi) << ',' << kind << ',' << csv_double(gap)
              << ',' << (within ? 1 : 0) << '\n';
  }
  const double rms = exact_rows ? std::sqrt(sum_sq / exact_rows) : 0.0;
  out.text() << "compare vs " << cf.name << ": max exact gap "
             << csv_double(max_gap) << ", rms " << csv_double(rms) << ", "
             << breaches << " breach(es) at tolerance " << csv_double(gate)
             << "\n";
  return breaches ? 1 : 0;
}

int cmd_convolve(const std::string& src, int k, double theta,
                 const CommonFlags& flags) {
  const CurveAlgebra curve = load_curve(src);
  const CurveAlgebra conv = convolve_spectrum(curve, k);
  const ImprovementResult imp = convolution_improves(curve, theta);
  OutputPair out(flags.out);
  out.csv() << "theta,value,lo,hi\n";
  for (size_t i = 0; i < conv.thetas.size(); ++i)
    out.csv() << csv_double(conv.thetas[i]) << ','
              << csv_double(0.5 * (conv.lo[i] + conv.hi[i])) << ','
              << csv_double(conv.lo[i]) << ',' << csv_double(conv.hi[i])
              << '\n';
  out.text() << "k = " << k << ": value at theta = 1 is "
             << csv_double(0.5 * (conv.lo.back() + conv.hi.back()))
             << " (Sobolev dimension of the k-fold convolution)\n"
             << "self-convolution at theta = " << csv_double(theta)
             << (imp.improves ? " strictly improves" : " does not improve")
             << " the spectrum (margin " << csv_double(imp.margin)
             << ", witness lambda " << csv_double(imp.witness_lambda)
             << ", tol " << csv_double(imp.tol) << ")\n";
  return 0;
}

int cmd_sumset(const std::string& src_x, const std::string& src_y,
               double dimh_y, int d, bool measure_level,
               const CommonFlags& flags) {
  const CurveAlgebra cx = load_curve(src_x);
  const CurveAlgebra cy = src_y.empty() ? cx : load_curve(src_y);
  const SumsetReport r = sumset_bounds(cx, cy, dimh_y, d, measure_level);
  OutputPair out(flags.out);
  out.csv() << "conclusion,decision,value,witness_lambda,margin\n";
  out.csv() << "dimension," << (r.improves ? "improves" : "trivial") << ','
            << csv_double(r.dim_lower) << ','
            << csv_double(r.witness_lambda_dim) << ','
            << csv_double(r.dim_lower - r.dimh_y) << '\n';
  out.csv() << "positive_measure," << (r.positive_measure ? "yes" : "no")
            << ",," << csv_double(r.witness_lambda_measure) << ','
            << csv_double(r.margin_measure) << '\n';
  out.csv() << "nonempty_interior," << (r.nonempty_interior ? "yes" : "no")
            << ",," << csv_double(r.witness_lambda_interior) << ','
            << csv_double(r.margin_interior) << '\n';
  out.text() << "X+Y with dimH(Y) = " << csv_double(r.dimh_y)
             << ": dim lower bound " << csv_double(r.dim_lower)
             << (r.positive_measure ? ", positive Lebesgue measure" : "")
             << (r.nonempty_interior ? ", non-empty interior" : "") << "\n";
  if (!r.note.empty()) out.text() << "note: " << r.note << "\n";
  return 0;
}

int cmd_distance(const std::string& src_x, const std::string& src_y, int d,
                 const std::string& measure_path, const CommonFlags& flags) {
  OutputPair out(flags.out);
  out.csv() << "check,decision,value,witness,margin\n";
  if (!src_x.empty()) {
    const CurveAlgebra cx = load_curve(src_x);
    const CurveAlgebra cy = src_y.empty() ? cx : load_curve(src_y);
    const int dd = d ? d : cx.dim;
    const DistanceReport r = distance_set_check(cx, cy, dd);
    out.csv() << "curve_sup,"
              << (r.positive_measure ? "positive_measure" : "dimension_bound")
              << ','
              << csv_double(r.positive_measure ? r.sup_value : r.dim_lower)
              << ',' << csv_double(r.witness_theta) << ','
              << csv_double(r.sup_value - dd) << '\n';
    out.csv() << "half_shortcut,"
              << (r.half_positive ? "positive_measure" : "dimension_bound")
              << ',' << csv_double(r.half_shortcut) << ",0.5,"
              << csv_double(r.half_shortcut - dd) << '\n';
    out.text() << "sup_theta curve(theta) + curve(1-theta) = "
               << csv_double(r.sup_value) << " vs d = " << dd << ": "
               << (r.positive_measure
                       ? "distance set has positive Lebesgue measure"
                       : "dimension bound " + csv_double(r.dim_lower))
               << "\ncaveat: " << r.caveat << "\n";
  }
  if (!measure_path.empty()) {
    const Measure m = load_measure(measure_path);
    const int shells = flags.shells ? flags.shells : default_shells(m.dim());
    const FrequencyGrid grid = FrequencyGrid::standard(m, shells);
    const DistanceReport r =
        fourth_moment_check(m, grid, sample_options(flags));
    out.csv() << "fourth_moment," << moment_name(r.moment) << ','
              << csv_double(r.fitted_rate) << ",," << csv_double(r.delta)
              << '\n';
    out.text() << "fourth moment of the transform: shell rate "
               << csv_double(r.fitted_rate) << " -> " << moment_name(r.moment)
               << (r.moment == DistanceReport::Moment::kConverges
                       ? " (distance set of the support has positive measure)"
                       : "")
               << "\n";
  }
  return 0;
}

int cmd_plotdata(const std::vector<std::string>& series,
                 const CommonFlags& flags) {
  OutputPair out(flags.out);
  out.csv() << "series,theta,value\n";
  for (const auto& item : series) {
    const auto eq = item.find('=');
    const std::string name =
        eq == std::string::npos ? item : item.substr(0, eq);
    const std::string src = eq == std::string::npos ? item : item.substr(eq + 1);
    if (src.rfind("oracle:", 0) == 0) {
      const ClosedFormSpectrum cf = parse_oracle(src.substr(7));
      const std::vector<double> thetas = parse_theta_grid(flags.theta_grid);
      for (double t : thetas) {
        const OracleValue v = cf.eval(t);
        if (v.kind == OracleKind::kExact) {
          out.csv() << name << ',' << csv_double(t) << ',' << csv_double(v.lo)
                    << '\n';
        } else {
          out.csv() << name << ":lo," << csv_double(t) << ','
                    << csv_double(v.lo) << '\n';
          out.csv() << name << ":hi," << csv_double(t) << ','
                    << csv_double(v.hi) << '\n';
        }
      }
    } else {
      const SpectrumCurve curve = read_spectrum_csv(src);
      for (const auto& p : curve.points)
        out.csv() << name << ',' << csv_double(p.theta) << ','
                  << csv_double(p.value) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Fourier spectra of measures"};
  app.require_subcommand(1);

  CommonFlags flags;

  // transform
  std::string t_measure;
  std::vector<std::string> t_zs;
  auto* transform = app.add_subcommand("transform", "evaluate the transform");
  transform->add_option("measure", t_measure, "measure descriptor (JSON)")
      ->required();
  transform->add_option("--z", t_zs, "frequency, comma-separated components")
      ->required();
  add_common(transform, flags, false);

  // energy
  std::string e_measure, e_thetas = "0.5", e_ss = "0.5";
  auto* energy = app.add_subcommand("energy", "shell energy tables");
  energy->add_option("measure", e_measure)->required();
  energy->add_option("--theta", e_thetas, "theta values (list or a:b:step)");
  energy->add_option("--s", e_ss, "energy exponents s (comma list)");
  add_common(energy, flags);

  // spectrum
  std::string s_measure;
  auto* spectrum = app.add_subcommand("spectrum", "estimate the curve");
  spectrum->add_option("measure", s_measure)->required();
  add_common(spectrum, flags);

  // oracle
  std::string o_spec;
  auto* oracle = app.add_subcommand("oracle", "closed-form curves");
  oracle
      ->add_option("spec", o_spec,
                   "cube:k=,d= | riesz:a=,lambda= | cantor:p= | bernoulli:p= "
                   "| curve:p= | firstsharp:d=")
      ->required();
  add_common(oracle, flags, false);

  // compare
  std::string c_measure, c_oracle;
  double c_gate = 0.05;
  auto* compare = app.add_subcommand("compare", "estimate vs closed form");
  compare->add_option("measure", c_measure)->required();
  compare->add_option("--oracle", c_oracle, "oracle spec")->required();
  compare->add_option("--gate", c_gate, "allowed gap on exact ranges");
  add_common(compare, flags);

  // convolve
  std::string v_src;
  int v_k = 2;
  double v_theta = 1.0;
  auto* convolve = app.add_subcommand("convolve", "convolution curve");
  convolve
      ->add_option("curve", v_src, "spectrum.csv or oracle:<spec>")
      ->required();
  convolve->add_option("--k", v_k, "convolution power");
  convolve->add_option("--theta", v_theta, "where to test improvement");
  add_common(convolve, flags, false);

  // sumset
  std::string m_src_x, m_src_y;
  double m_dimh = 0.0;
  int m_d = 1;
  bool m_measure_level = false;
  auto* sumset = app.add_subcommand("sumset", "sumset conclusions");
  sumset->add_option("curve", m_src_x, "curve for X")->required();
  sumset->add_option("--curve-y", m_src_y, "curve for Y (defaults to X)");
  sumset->add_option("--dimh-y", m_dimh, "Hausdorff dimension of Y")
      ->required();
  sumset->add_option("--dim", m_d, "ambient dimension")->required();
  sumset->add_flag("--measure-level", m_measure_level,
                   "curve describes a measure (enables interior conclusion)");
  add_common(sumset, flags, false);

  // distance
  std::string d_src_x, d_src_y, d_measure;
  int d_d = 0;
  auto* distance = app.add_subcommand("distance", "distance-set conclusions");
  distance->add_option("--curve", d_src_x, "curve for X");
  distance->add_option("--curve-y", d_src_y, "second curve (mixed distances)");
  distance->add_option("--dim", d_d, "ambient dimension (default: curve's)");
  distance->add_option("--measure", d_measure,
                       "measure descriptor for the fourth-moment test");
  add_common(distance, flags);

  // plotdata
  std::vector<std::string> p_series;
  auto* plotdata = app.add_subcommand("plotdata", "long-format curve CSV");
  plotdata
      ->add_option("--series", p_series,
                   "name=source (spectrum.csv or oracle:<spec>)")
      ->required();
  add_common(plotdata, flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (transform->parsed()) return cmd_transform(t_measure, t_zs, flags);
    if (energy->parsed()) return cmd_energy(e_measure, e_thetas, e_ss, flags);
    if (spectrum->parsed()) return cmd_spectrum(s_measure, flags);
    if (oracle->parsed()) return cmd_oracle(o_spec, flags);
    if (compare->parsed())
      return cmd_compare(c_measure, c_oracle, c_gate, flags);
    if (convolve->parsed()) return cmd_convolve(v_src, v_k, v_theta, flags);
    if (sumset->parsed())
      return cmd_sumset(m_src_x, m_src_y, m_dimh, m_d, m_measure_level,
                        flags);
    if (distance->parsed())
      return cmd_distance(d_src_x, d_src_y, d_d, d_measure, flags);
    if (plotdata->parsed()) return cmd_plotdata(p_series, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
