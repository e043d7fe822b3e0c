#include "fspec/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fspec {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double sphere_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
  }
  throw std::invalid_argument("dimension must be 1, 2 or 3");
}

double ball_volume(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
  }
  throw std::invalid_argument("dimension must be 1, 2 or 3");
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

namespace {

// shared two-pass log-sum-exp over each shell of exponents produced by `term`
template <class Term>
std::vector<double> per_shell_logsum(const TransformSamples& s, Term term) {
  const auto& g = s.grid;
  std::vector<double> out(std::size_t(g.shells), kNegInf);
  std::vector<double> scratch;
  for (int j = 0; j < g.shells; ++j) {
    std::size_t lo = g.shell_begin[j], hi = g.shell_begin[j + 1];
    scratch.clear();
    double peak = kNegInf;
    for (std::size_t i = lo; i < hi; ++i) {
      double t = term(i);
      scratch.push_back(t);
      peak = std::max(peak, t);
    }
    if (peak == kNegInf) continue;
    double acc = 0.0;
    for (double t : scratch)
      if (t != kNegInf) acc += std::exp(t - peak);
    out[std::size_t(j)] = peak + std::log(acc);
  }
  return out;
}

}  // namespace

std::vector<double> shell_log_sums(const TransformSamples& s, double q, double e) {
  return per_shell_logsum(s, [&](std::size_t i) {
    double av = std::abs(s.values[i]);
    if (av <= 0.0) return kNegInf;
    const GridNode& n = s.grid.nodes[i];
    return q * std::log(av) + e * std::log(n.radius) + std::log(n.weight);
  });
}

std::vector<double> shell_log_err_sums(const TransformSamples& s, double q,
                                       double e) {
  return per_shell_logsum(s, [&](std::size_t i) {
    double av = std::abs(s.values[i]);
    double er = s.err[i];
    if (er <= 0.0) return kNegInf;
    // d(v^q) = q v^(q-1) dv; when v < err fall back to err^q itself
    double base = std::max(av, er);
    const GridNode& n = s.grid.nodes[i];
    return std::log(q) + (q - 1.0) * std::log(base) + std::log(er) +
           e * std::log(n.radius) + std::log(n.weight);
  });
}

std::vector<double> shell_log_sup(const TransformSamples& s, double s_exp) {
  const auto& g = s.grid;
  std::vector<double> out(std::size_t(g.shells), kNegInf);
  for (int j = 0; j < g.shells; ++j) {
    for (std::size_t i = g.shell_begin[j]; i < g.shell_begin[j + 1]; ++i) {
      double av = std::abs(s.values[i]);
      if (av <= 0.0) continue;
      double t = 2.0 * std::log(av) + s_exp * std::log(g.nodes[i].radius);
      out[std::size_t(j)] = std::max(out[std::size_t(j)], t);
    }
  }
  return out;
}

EnergyProfile partial_energy_profile(const TransformSamples& s, double theta,
                                     double s_exp) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("theta must lie in [0, 1]");
  if (s_exp < 0.0) throw std::invalid_argument("s must be >= 0");
  const auto& g = s.grid;
  EnergyProfile out;
  out.theta = theta;
  out.s = s_exp;
  out.radii.resize(std::size_t(g.shells));
  for (int j = 1; j <= g.shells; ++j) out.radii[std::size_t(j - 1)] = g.radius(j);

  if (theta == 0.0) {
    auto sup = shell_log_sup(s, s_exp);
    double run = 2.0 * std::log(s.mass) + s_exp * std::log(g.r0);
    out.log_value.resize(sup.size());
    out.rel_err.assign(sup.size(), 0.0);
    double rel = 0.0;
    for (std::size_t j = 0; j < sup.size(); ++j) {
      run = std::max(run, sup[j]);
      // error at the achieving node is at most max 2 err/|v| over the shell
      for (std::size_t i = g.shell_begin[j]; i < g.shell_begin[j + 1]; ++i) {
        double av = std::abs(s.values[i]);
        if (av > 0.0 && s.err[i] > 0.0)
          rel = std::max(rel, std::min(1.0, 2.0 * s.err[i] / av));
      }
      out.log_value[j] = run;
      out.rel_err[j] = rel;
    }
    return out;
  }

  double q = 2.0 / theta;
  double e = s_exp / theta - double(g.dim);
  auto sums = shell_log_sums(s, q, e);
  auto errs = shell_log_err_sums(s, q, e);
  double inner = s_exp > 0.0
                     ? q * std::log(s.mass) +
                           std::log(sphere_area(g.dim) * theta / s_exp) +
                           (s_exp / theta) * std::log(g.r0)
                     : kNegInf;
  out.log_value.resize(sums.size());
  out.rel_err.resize(sums.size());
  double cum = inner, cum_err = kNegInf;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    cum = log_add(cum, sums[j]);
    cum_err = log_add(cum_err, errs[j]);
    out.log_value[j] = theta * cum;
    out.rel_err[j] = cum == kNegInf ? 0.0 : std::exp(cum_err - cum);
  }
  return out;
}

BallProfile ball_average_profile(const TransformSamples& s, double theta) {
  if (theta <= 0.0 || theta > 1.0)
    throw std::invalid_argument("ball averages need theta in (0, 1]");
  const auto& g = s.grid;
  double q = 2.0 / theta;
  auto sums = shell_log_sums(s, q, 0.0);
  auto errs = shell_log_err_sums(s, q, 0.0);
  BallProfile out;
  out.theta = theta;
  out.radii.resize(sums.size());
  out.log_average.resize(sums.size());
  out.rel_err.resize(sums.size());
  double cum = q * std::log(s.mass) + std::log(ball_volume(g.dim)) +
               double(g.dim) * std::log(g.r0);
  double cum_err = kNegInf;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    cum = log_add(cum, sums[j]);
    cum_err = log_add(cum_err, errs[j]);
    double R = g.radius(int(j) + 1);
    out.radii[j] = R;
    out.log_average[j] = cum - double(g.dim) * std::log(R);
    out.rel_err[j] = std::exp(cum_err - cum);
  }
  return out;
}

LatticeEnergy lattice_energy(const Measure& m, double theta, double s_exp,
                             int shells, const SampleOptions& opts) {
  if (theta <= 0.0 || theta > 1.0)
    throw std::invalid_argument("lattice sums need theta in (0, 1]");
  // The comparison with the integral energy is proved only for theta = 1/k:
  // it rescales the k-fold convolution power back into the unit cube, which
  // is what turns the integral into a sum over the refined lattice.
  double kd = 1.0 / theta;
  long long k = std::llround(kd);
  if (k < 1 || std::abs(kd - double(k)) > 1e-9)
    throw std::invalid_argument("lattice sums need theta = 1/k for integer k");
  int d = m.dim();
  if (!(s_exp > 0.0 && s_exp < double(d) * theta))
    throw std::invalid_argument("lattice sums need 0 < s < d theta");
  SupportBox box = m.support();
  for (int i = 0; i < d; ++i) {
    if (box.axis[std::size_t(i)].lo < -1e-9 ||
        box.axis[std::size_t(i)].hi > 1.0 + 1e-9)
      throw std::invalid_argument(
          "lattice sums need support inside the unit cube");
  }

  LatticeEnergy out;
  out.theta = theta;
  out.s = s_exp;
  double q = 2.0 / theta;
  double e = s_exp / theta - double(d);

  if (d == 1 && k == 1) {
    // Integer frequencies: exact Riesz coefficients and the density FFT both
    // apply, so go through the sampler.
    FrequencyGrid grid = FrequencyGrid::line_lattice(shells);
    TransformSamples samples = sample_grid(m, grid, opts);
    auto sums = shell_log_sums(samples, q, e);
    double cum = kNegInf;
    for (std::size_t j = 0; j < sums.size(); ++j) {
      cum = log_add(cum, sums[j]);
      out.radii.push_back(grid.radius(int(j) + 1));
      out.log_partial.push_back(cum);
    }
    return out;
  }

  if (d == 1) {
    // Refined lattice (1/k)Z: pointwise evaluation, fine for the closed-form
    // families this is meant for.  Points with |z| <= 1 land in shell 1.
    long long R = 1ll << shells;
    std::vector<double> shell_acc(std::size_t(shells), kNegInf);
    for (long long n = 1; n <= k * R; ++n) {
      double z = double(n) / double(k);
      int j = std::max(1, int(std::ceil(std::log2(z))));
      if (j > shells) continue;
      double av = std::abs(eval_transform(m, Vec{z, 0.0, 0.0}, opts.tol).value);
      if (av <= 0.0) continue;
      double t = std::log(2.0) + q * std::log(av) + e * std::log(z);
      shell_acc[std::size_t(j - 1)] = log_add(shell_acc[std::size_t(j - 1)], t);
    }
    double cum = kNegInf;
    for (int j = 1; j <= shells; ++j) {
      cum = log_add(cum, shell_acc[std::size_t(j - 1)]);
      out.radii.push_back(std::ldexp(1.0, j));
      out.log_partial.push_back(cum);
    }
    return out;
  }
  if (d != 2)
    throw std::invalid_argument("lattice sums are implemented for d = 1 and 2");

  long long R = 1ll << shells;
  std::vector<double> shell_acc(std::size_t(shells), kNegInf);
  for (long long m1 = -k * R; m1 <= k * R; ++m1) {
    for (long long m2 = -k * R; m2 <= k * R; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      double rad = std::hypot(double(m1), double(m2)) / double(k);
      if (rad > double(R)) continue;
      int j = std::max(1, int(std::ceil(std::log2(rad))));
      if (j > shells) continue;
      Vec z{double(m1) / double(k), double(m2) / double(k), 0.0};
      double av = std::abs(eval_transform(m, z, opts.tol).value);
      if (av <= 0.0) continue;
      double t = q * std::log(av) + e * std::log(rad);
      shell_acc[std::size_t(j - 1)] = log_add(shell_acc[std::size_t(j - 1)], t);
    }
  }
  double cum = kNegInf;
  for (int j = 1; j <= shells; ++j) {
    cum = log_add(cum, shell_acc[std::size_t(j - 1)]);
    out.radii.push_back(std::ldexp(1.0, j));
    out.log_partial.push_back(cum);
  }
  return out;
}

}  // namespace fspec
