#include "fspec/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fft.hpp"
#include "quadrature.hpp"

namespace fspec {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::complex<double> cis(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

double dot(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// frequency grids

double FrequencyGrid::radius(int j) const { return r0 * std::ldexp(1.0, j); }

std::string FrequencyGrid::signature() const {
  std::ostringstream os;
  os.precision(17);
  os << "d" << dim << ":r0=" << r0 << ":J=" << shells;
  if (dim == 1)
    os << ":step=" << step << ":lattice=" << (lattice ? 1 : 0);
  else
    os << ":sub=" << radial_sub << ":ang=" << angular_scale;
  return os.str();
}

namespace {

void finish_shell(FrequencyGrid& g) { g.shell_begin.push_back(g.nodes.size()); }

// Half-circle node count at radius R: four nodes per unit wavelength at the
// support diameter, i.e. tangential spacing 1 / (4 diam).  The cap only
// matters for grids far beyond the default shell counts.
int half_circle_count(double diam, double R) {
  double want = 4.0 * M_PI * diam * R;
  return int(std::min(40000.0, std::max(16.0, std::ceil(want))));
}

}  // namespace

FrequencyGrid FrequencyGrid::line(int shells, double diam, double r0) {
  if (shells < 1) throw std::invalid_argument("grid needs at least one shell");
  FrequencyGrid g;
  g.dim = 1;
  g.r0 = r0;
  g.shells = shells;
  int m = std::max(1, int(std::ceil(4.0 * std::max(diam, 1e-9))));
  g.step = 1.0 / double(m);
  g.shell_begin.push_back(0);
  for (int j = 1; j <= shells; ++j) {
    double lo = g.radius(j - 1), hi = g.radius(j);
    auto count = std::llround((hi - lo) / g.step);
    for (long long k = 0; k < count; ++k) {
      GridNode n;
      n.z[0] = lo + (double(k) + 0.5) * g.step;
      n.radius = n.z[0];
      n.weight = 2.0 * g.step;  // reflection z -> -z folded in
      n.shell = j;
      g.nodes.push_back(n);
    }
    finish_shell(g);
  }
  return g;
}

FrequencyGrid FrequencyGrid::line_lattice(int shells, double r0) {
  if (shells < 1) throw std::invalid_argument("grid needs at least one shell");
  FrequencyGrid g;
  g.dim = 1;
  g.r0 = r0;
  g.shells = shells;
  g.step = 1.0;
  g.lattice = true;
  g.shell_begin.push_back(0);
  for (int j = 1; j <= shells; ++j) {
    // shell 1 starts at m = 1: the point on the inner boundary belongs here
    long long lo = j == 1 ? 1 : (long long)(g.radius(j - 1)) + 1;
    long long hi = (long long)(g.radius(j));
    for (long long mval = lo; mval <= hi; ++mval) {
      GridNode n;
      n.z[0] = double(mval);
      n.radius = n.z[0];
      n.weight = 2.0;
      n.shell = j;
      g.nodes.push_back(n);
    }
    finish_shell(g);
  }
  return g;
}

FrequencyGrid FrequencyGrid::polar(int shells, double diam, double r0,
                                   int radial_sub) {
  if (shells < 1) throw std::invalid_argument("grid needs at least one shell");
  FrequencyGrid g;
  g.dim = 2;
  g.r0 = r0;
  g.shells = shells;
  g.radial_sub = radial_sub;
  g.angular_scale = 4.0 * M_PI * std::max(diam, 1e-9);
  g.shell_begin.push_back(0);
  const double dlogr = std::log(2.0) / double(radial_sub);
  for (int j = 1; j <= shells; ++j) {
    double lo = g.radius(j - 1);
    int nang = half_circle_count(std::max(diam, 1e-9), g.radius(j));
    for (int i = 0; i < radial_sub; ++i) {
      double r = lo * std::exp2((double(i) + 0.5) / double(radial_sub));
      double w = r * r * dlogr * (kTwoPi / double(nang));  // x2 symmetry folded
      for (int k = 0; k < nang; ++k) {
        double ang = (double(k) + 0.5) * (M_PI / double(nang));
        GridNode n;
        n.z[0] = r * std::cos(ang);
        n.z[1] = r * std::sin(ang);
        n.radius = r;
        n.weight = w;
        n.shell = j;
        g.nodes.push_back(n);
      }
    }
    finish_shell(g);
  }
  return g;
}

FrequencyGrid FrequencyGrid::sphere(int shells, double diam, double r0,
                                    int radial_sub) {
  if (shells < 1) throw std::invalid_argument("grid needs at least one shell");
  FrequencyGrid g;
  g.dim = 3;
  g.r0 = r0;
  g.shells = shells;
  g.radial_sub = radial_sub;
  g.angular_scale = 4.0 * M_PI * std::max(diam, 1e-9);
  g.shell_begin.push_back(0);
  const double dlogr = std::log(2.0) / double(radial_sub);
  for (int j = 1; j <= shells; ++j) {
    double lo = g.radius(j - 1);
    // Spread ~4 pi diam R nodes over the whole sphere.  That is linear in R
    // (not the R^2 a full product grid would need), which keeps desk-scale
    // runs cheap; these integrands are positive, so the residual angular
    // error averages out rather than biasing the shell sums.
    int target = half_circle_count(std::max(diam, 1e-9), g.radius(j));
    int naz = std::max(4, int(std::ceil(std::sqrt(2.0 * double(target)))));
    int npol = std::max(2, int(std::ceil(double(target) / double(naz))));
    std::vector<double> ux, uw;
    detail::gauss_legendre(npol, ux, uw);
    for (int i = 0; i < radial_sub; ++i) {
      double r = lo * std::exp2((double(i) + 0.5) / double(radial_sub));
      double base = r * r * r * dlogr * (kTwoPi / double(naz));
      for (int iu = 0; iu < npol; ++iu) {
        double u = ux[iu];
        double rho = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int k = 0; k < naz; ++k) {
          double ang = (double(k) + 0.5) * (kTwoPi / double(naz));
          GridNode n;
          n.z[0] = r * rho * std::cos(ang);
          n.z[1] = r * rho * std::sin(ang);
          n.z[2] = r * u;
          n.radius = r;
          n.weight = base * uw[iu];
          n.shell = j;
          g.nodes.push_back(n);
        }
      }
    }
    finish_shell(g);
  }
  return g;
}

namespace {

// Highest frequency the family can be sampled at faithfully (densities are
// midpoint models, exact only below Nyquist); +inf for closed families.
double max_resolvable(const Measure& m) {
  return std::visit(
      [](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, DensityMeasure>) {
          return 0.5 / fam.cell_size;
        } else if constexpr (std::is_same_v<T, EmbeddedMeasure>) {
          return max_resolvable(*fam.base);
        } else if constexpr (std::is_same_v<T, ConvolutionMeasure>) {
          double lim = std::numeric_limits<double>::infinity();
          for (const auto& f : fam.factors) lim = std::min(lim, max_resolvable(*f));
          return lim;
        } else {
          return std::numeric_limits<double>::infinity();
        }
      },
      m.family);
}

}  // namespace

FrequencyGrid FrequencyGrid::standard(const Measure& m, int shells) {
  int d = m.dim();
  double rmax = std::ldexp(1.0, shells);
  if (rmax > max_resolvable(m)) {
    throw std::invalid_argument(
        "grid reaches past the Nyquist frequency of the density; use fewer "
        "shells or a finer grid density");
  }
  if (d == 1) {
    if (std::holds_alternative<RieszProductMeasure>(m.family))
      return line_lattice(shells);
    return line(shells, m.support().diameter());
  }
  double diam = m.support().diameter();
  if (d == 2) return polar(shells, diam);
  return sphere(shells, diam);
}

// ---------------------------------------------------------------------------
// pointwise evaluation

double riesz_coefficient(const RieszProductMeasure& r, std::int64_t m) {
  if (m < 0) m = -m;  // coefficients are even in m
  if (m == 0) return 1.0;
  const auto& lam = r.frequencies;
  const int n = int(lam.size());
  // prefix[k] = lambda_0 + ... + lambda_{k-1}: the largest |value| a signed
  // 0/1 combination of the first k frequencies can reach.  Lacunarity makes
  // prefix[k] < lambda_k / 2, so the greedy digit choice below is forced.
  std::vector<std::int64_t> prefix(n + 1, 0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + lam[k];
  double val = 1.0;
  for (int k = n - 1; k >= 0 && m != 0; --k) {
    if (m > prefix[k]) {
      if (m < lam[k] - prefix[k]) return 0.0;  // gap: unreachable either way
      val *= r.coefficients[k] / 2.0;
      m = std::llabs(m - lam[k]);
    }
  }
  return m == 0 ? val : 0.0;
}

namespace {

// Off-lattice Riesz transform.  For integer m the unit-interval kernel is
// E(z - m) = e^{-i pi z} sin(pi z) / (pi (z - m)), so the transform is a
// Hilbert-type sum of the lattice coefficients,
//   mu^(z) = e^{-i pi z} sin(pi z) / pi * sum_m c_m / (z - m).
// The sum is taken exactly over a window of lattice points around z; the
// excluded mass is bounded per top digit (combos whose largest frequency is
// lambda_j lie within reach_j = sum of the lower frequencies of +-lambda_j)
// and the bound carries the sin(pi z) factor, so it vanishes toward lattice
// points where the values themselves are exact coefficients.
TransformValue eval_riesz(const RieszProductMeasure& r, double z, double) {
  const double rounded = std::nearbyint(z);
  if (std::abs(z - rounded) < 1e-12 && std::abs(rounded) < 9e15) {
    return {riesz_coefficient(r, std::int64_t(rounded)),
            double(r.frequencies.size()) * 1e-16};
  }
  const auto& lam = r.frequencies;
  const int n = int(lam.size());
  std::vector<std::int64_t> prefix(n + 1, 0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + lam[k];

  // riesz_coefficient with the prefix table hoisted out of the hot loop
  const auto coefficient = [&](std::int64_t m) -> double {
    if (m < 0) m = -m;
    double val = 1.0;
    for (int k = n - 1; k >= 0 && m != 0; --k) {
      if (m > prefix[k]) {
        if (m < lam[k] - prefix[k]) return 0.0;
        val *= r.coefficients[k] / 2.0;
        m = std::llabs(m - lam[k]);
      }
    }
    return m == 0 ? val : 0.0;
  };

  constexpr std::int64_t kWindow = 8192;
  const std::int64_t z0 = std::llround(z);
  double s = 0.0;
  for (std::int64_t m = z0 - kWindow; m <= z0 + kWindow; ++m) {
    const double c = coefficient(m);
    if (c != 0.0) s += c / (z - double(m));
  }
  const double sz = std::sin(M_PI * z);
  const std::complex<double> phase(std::cos(M_PI * z), -sz);
  const std::complex<double> value = phase * (sz / M_PI) * s;

  double tail = 0.0;
  {
    const double az = std::abs(z);
    const double w = double(kWindow);
    if (az > w) tail += 1.0 / az;  // the m = 0 coefficient
    double amp = 1.0, reach = 0.0;
    for (int j = 0; j < n; ++j) {
      const double l = double(lam[j]);
      const double mass = std::abs(r.coefficients[j]) * amp;
      double dist = 0.0;
      if (az < l - reach)
        dist = l - reach - az;
      else if (az > l + reach)
        dist = az - (l + reach);
      tail += mass / std::max(w, dist);
      reach += l;
      amp *= 1.0 + std::abs(r.coefficients[j]);
    }
  }
  const double err = std::abs(sz) / M_PI * tail + double(n) * 1e-15;
  return {value, err};
}

TransformValue eval_selfsim(const SelfSimilarMeasure& m, double z, double tol) {
  double maxt = 0.0;
  for (double t : m.translations) maxt = std::max(maxt, std::abs(t));
  double mass = 0.0;
  for (double p : m.weights) mass += p;
  double az = std::abs(z);
  if (az * maxt < 1e-300) return {mass, 0.0};
  double eps = std::min(tol, 1e-10);
  // After N factors the remaining product differs from 1 by at most
  // sum_{n >= N} 2 pi |z| r^n max|t| <= eps.
  int N = std::max(
      1, int(std::ceil(std::log(kTwoPi * az * maxt / ((1.0 - m.ratio) * eps)) /
                       std::log(1.0 / m.ratio))));
  std::complex<double> prod = 1.0;
  double w = z;
  for (int n = 0; n < N; ++n) {
    std::complex<double> f = 0.0;
    for (std::size_t i = 0; i < m.translations.size(); ++i)
      f += m.weights[i] * cis(-kTwoPi * w * m.translations[i]);
    prod *= f;
    w *= m.ratio;
  }
  return {prod, eps * std::abs(prod) + double(N) * 2e-16 + eps};
}

TransformValue eval_density(const DensityMeasure& m, const Vec& z) {
  double h = m.cell_size;
  if (m.dim == 1) {
    std::complex<double> acc = 0.0;
    double x0 = m.origin[0] + 0.5 * h;
    for (std::size_t c = 0; c < m.cells[0]; ++c)
      acc += m.values[c] * cis(-kTwoPi * z[0] * (x0 + double(c) * h));
    double mass = 0.0;
    for (double v : m.values) mass += v;
    return {acc * h, double(m.values.size()) * 1e-16 * mass * h};
  }
  // separable phases: one pass of exps per axis, then a rank-1 style sweep
  std::size_t nx = m.cells[0], ny = m.cells[1];
  std::vector<std::complex<double>> colph(nx);
  double x0 = m.origin[0] + 0.5 * h, y0 = m.origin[1] + 0.5 * h;
  for (std::size_t c = 0; c < nx; ++c)
    colph[c] = cis(-kTwoPi * z[0] * (x0 + double(c) * h));
  std::complex<double> acc = 0.0;
  for (std::size_t rrow = 0; rrow < ny; ++rrow) {
    std::complex<double> rowsum = 0.0;
    const double* row = &m.values[rrow * nx];
    for (std::size_t c = 0; c < nx; ++c) rowsum += row[c] * colph[c];
    acc += rowsum * cis(-kTwoPi * z[1] * (y0 + double(rrow) * h));
  }
  double mass = 0.0;
  for (double v : m.values) mass += v;
  return {acc * h * h, double(m.values.size()) * 2e-16 * mass * h * h};
}

struct EvalVisitor {
  const Vec& z;
  double tol;

  TransformValue operator()(const AtomicMeasure& m) const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < m.points.size(); ++i)
      acc += m.weights[i] * cis(-kTwoPi * dot(z, m.points[i], m.dim));
    double mass = 0.0;
    for (double w : m.weights) mass += w;
    return {acc, double(m.points.size()) * 2e-16 * mass};
  }
  TransformValue operator()(const DensityMeasure& m) const {
    return eval_density(m, z);
  }
  TransformValue operator()(const SelfSimilarMeasure& m) const {
    return eval_selfsim(m, z[0], tol);
  }
  TransformValue operator()(const RieszProductMeasure& m) const {
    return eval_riesz(m, z[0], tol);
  }
  TransformValue operator()(const CurveMeasure& m) const {
    return eval_curve_transform(m.exponent, z[0], z[1], tol);
  }
  TransformValue operator()(const EmbeddedMeasure& m) const {
    Vec w{};
    for (std::size_t j = 0; j < m.frame.size(); ++j)
      w[j] = dot(z, m.frame[j], m.dim);
    TransformValue base = eval_transform(*m.base, w, tol);
    base.value *= cis(-kTwoPi * dot(z, m.offset, m.dim));
    return base;
  }
  TransformValue operator()(const ConvolutionMeasure& m) const {
    std::complex<double> prod = 1.0;
    double magw = 1.0;  // product of (|v_i| + err_i), to bound the total error
    double mag = 1.0;
    for (const auto& f : m.factors) {
      TransformValue v = eval_transform(*f, z, tol);
      prod *= v.value;
      mag *= std::abs(v.value);
      magw *= std::abs(v.value) + v.err;
    }
    return {prod, magw - mag + 1e-16};
  }
};

}  // namespace

TransformValue eval_transform(const Measure& m, const Vec& z, double tol) {
  return std::visit(EvalVisitor{z, tol}, m.family);
}

// ---------------------------------------------------------------------------
// grid sampling

namespace {

// One-dimensional density on a commensurate grid: all node frequencies are
// (k + 1/2) * step (or k * step on the lattice), so a single zero-padded FFT
// of length L = 1 / (step * h) yields every value at once.
bool density_fft_path(const DensityMeasure& den, const FrequencyGrid& grid,
                      TransformSamples& out) {
  if (den.dim != 1 || grid.dim != 1 || grid.step <= 0.0) return false;
  double h = den.cell_size;
  double Lreal = 1.0 / (grid.step * h);
  double Lround = std::nearbyint(Lreal);
  if (std::abs(Lreal - Lround) > 1e-6 || Lround < double(den.cells[0]))
    return false;
  std::size_t L = std::size_t(Lround);
  if ((L & (L - 1)) != 0) return false;
  // highest node must sit below the foldover bin
  double binmax = grid.radius(grid.shells) / grid.step;
  if (binmax >= 0.5 * double(L)) return false;

  std::vector<std::complex<double>> buf(L, 0.0);
  if (grid.lattice) {
    for (std::size_t c = 0; c < den.cells[0]; ++c) buf[c] = den.values[c];
  } else {
    // nodes at half-integer bins: fold the half-bin shift into the input
    for (std::size_t c = 0; c < den.cells[0]; ++c)
      buf[c] = den.values[c] * cis(-M_PI * double(c) / double(L));
  }
  detail::fft_pow2(buf);

  double mass = 0.0;
  for (double v : den.values) mass += v;
  double x0 = den.origin[0] + 0.5 * h;
  double everr = 1.2e-15 * std::log2(double(L)) * mass * h;
  for (std::size_t i = 0; i < out.grid.nodes.size(); ++i) {
    double z = out.grid.nodes[i].z[0];
    auto bin = std::size_t(std::llround(z / grid.step - (grid.lattice ? 0.0 : 0.5)));
    out.values[i] = h * cis(-kTwoPi * z * x0) * buf[bin];
    out.err[i] = everr;
  }
  return true;
}

void pointwise_fill(const Measure& m, TransformSamples& out,
                    const SampleOptions& opts) {
  std::size_t n = out.grid.nodes.size();
  unsigned hw = std::thread::hardware_concurrency();
  int threads = opts.threads > 0 ? opts.threads : int(hw ? hw : 1);
  threads = std::max(1, std::min<int>(threads, 64));
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      TransformValue v = eval_transform(m, out.grid.nodes[i].z, opts.tol);
      out.values[i] = v.value;
      out.err[i] = v.err;
    }
  };
  if (threads == 1 || n < 256) {
    worker(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + std::size_t(threads) - 1) / std::size_t(threads);
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = std::size_t(t) * chunk;
    if (lo >= n) break;
    pool.emplace_back(worker, lo, std::min(n, lo + chunk));
  }
  for (auto& th : pool) th.join();
}

void fill_samples(const Measure& m, TransformSamples& out,
                  const SampleOptions& opts);

// Convolutions multiply factor transforms node by node; sample each distinct
// factor once (k-fold self-convolutions share one factor object).
void fill_convolution(const ConvolutionMeasure& conv, TransformSamples& out,
                      const SampleOptions& opts) {
  std::map<const Measure*, std::shared_ptr<TransformSamples>> cache;
  std::fill(out.values.begin(), out.values.end(), std::complex<double>(1.0));
  std::vector<double> mag(out.values.size(), 1.0);
  std::vector<double> magw(out.values.size(), 1.0);
  for (const auto& f : conv.factors) {
    auto it = cache.find(f.get());
    if (it == cache.end()) {
      auto s = std::make_shared<TransformSamples>();
      s->grid = out.grid;
      s->values.resize(out.values.size());
      s->err.resize(out.values.size());
      s->mass = f->mass();
      fill_samples(*f, *s, opts);
      it = cache.emplace(f.get(), std::move(s)).first;
    }
    const TransformSamples& fs = *it->second;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      out.values[i] *= fs.values[i];
      double a = std::abs(fs.values[i]);
      mag[i] *= a;
      magw[i] *= a + fs.err[i];
    }
  }
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.err[i] = magw[i] - mag[i] + 1e-16;
}

void fill_samples(const Measure& m, TransformSamples& out,
                  const SampleOptions& opts) {
  if (const auto* conv = std::get_if<ConvolutionMeasure>(&m.family)) {
    fill_convolution(*conv, out, opts);
    return;
  }
  if (const auto* rz = std::get_if<RieszProductMeasure>(&m.family);
      rz && out.grid.lattice) {
    for (std::size_t i = 0; i < out.grid.nodes.size(); ++i) {
      auto mm = std::int64_t(std::llround(out.grid.nodes[i].z[0]));
      out.values[i] = riesz_coefficient(*rz, mm);
      out.err[i] = double(rz->frequencies.size()) * 1e-16;
    }
    return;
  }
  if (const auto* den = std::get_if<DensityMeasure>(&m.family)) {
    if (density_fft_path(*den, out.grid, out)) return;
  }
  pointwise_fill(m, out, opts);
}

}  // namespace

TransformSamples sample_grid(const Measure& m, const FrequencyGrid& grid,
                             const SampleOptions& opts) {
  TransformSamples out;
  out.grid = grid;
  out.values.assign(grid.nodes.size(), 0.0);
  out.err.assign(grid.nodes.size(), 0.0);
  out.mass = m.mass();

  std::string key;
  if (!opts.cache_dir.empty()) {
    key = sample_cache_key(m, grid);
    if (load_samples(opts.cache_dir, key, grid, out)) return out;
  }
  fill_samples(m, out, opts);
  if (!opts.cache_dir.empty()) save_samples(opts.cache_dir, key, out);
  return out;
}

}  // namespace fspec
