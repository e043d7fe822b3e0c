#include "fspec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace fspec {

namespace {

OracleValue exact(double v) { return {v, v, OracleKind::kExact}; }

std::string param_name(const char* fmt, ...) {
  char buf[128];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

double lsq_slope(const double* x, const double* y, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / det;
}

// log(1 + |a|^{2/theta} * 2^{1 - 2/theta}) evaluated stably: the inner
// quantity underflows to 0 for small theta, which log1p handles exactly.
double riesz_log_factor(double a, double theta) {
  const double q = 2.0 / theta;
  // |a|^q * 2^{1-q} = 2 * exp(q * (log|a| - log 2))
  const double t = 2.0 * std::exp(q * (std::log(std::fabs(a)) - std::log(2.0)));
  return std::log1p(t);
}

}  // namespace

ClosedFormSpectrum oracle_embedded_cube(int k, int d) {
  if (k < 1 || k >= d)
    throw std::invalid_argument("embedded cube requires 1 <= k < d");
  ClosedFormSpectrum s;
  s.name = param_name("cube(k=%d,d=%d)", k, d);
  s.dim = d;
  s.eval = [k](double theta) { return exact(k * theta); };
  return s;
}

ClosedFormSpectrum oracle_embedding_transport(const ClosedFormSpectrum& base,
                                              int k) {
  if (k < 1) throw std::invalid_argument("embedding needs k >= 1");
  ClosedFormSpectrum s;
  s.name = param_name("embed(k=%d)", k) + "[" + base.name + "]";
  s.dim = std::max(base.dim, k + 1);
  auto inner = base.eval;
  s.eval = [inner, k](double theta) {
    OracleValue v = inner(theta);
    // min with an exact curve acts on both edges and preserves the tag.
    v.lo = std::min(v.lo, k * theta);
    v.hi = std::min(v.hi, k * theta);
    if (v.lo == v.hi) v.kind = OracleKind::kExact;
    return v;
  };
  return s;
}

ClosedFormSpectrum oracle_riesz(double a, int lambda) {
  if (a == 0.0 || std::fabs(a) > 1.0)
    throw std::invalid_argument("riesz coefficient must lie in [-1,1] \\ {0}");
  if (lambda < 3) throw std::invalid_argument("riesz ratio must be >= 3");
  ClosedFormSpectrum s;
  s.name = param_name("riesz(a=%g,lambda=%d)", a, lambda);
  s.dim = 1;
  const double loglam = std::log(static_cast<double>(lambda));
  s.eval = [a, loglam](double theta) {
    if (theta <= 0.0) return exact(0.0);
    return exact(theta - theta * riesz_log_factor(a, theta) / loglam);
  };
  return s;
}

RieszGeneralResult oracle_riesz_general(const std::vector<double>& a,
                                        const std::vector<double>& lambda,
                                        double theta, double s, int K) {
  if (theta <= 0.0 || theta > 1.0)
    throw std::invalid_argument("theta must lie in (0,1]");
  if (K < 4) throw std::invalid_argument("need at least 4 terms");
  if (a.size() < static_cast<size_t>(K) ||
      lambda.size() < static_cast<size_t>(K))
    throw std::invalid_argument("sequences shorter than K");

  RieszGeneralResult out;
  out.log_terms.resize(K);
  double cum_logb = 0.0;
  double logsum = -HUGE_VAL;
  for (int k = 0; k < K; ++k) {
    cum_logb += riesz_log_factor(a[k], theta);
    const double loglam = std::log(lambda[k]);
    const double lt = (s / theta - 1.0) * loglam + cum_logb;
    out.log_terms[k] = lt;
    // log-sum-exp accumulation of the partial sum
    if (lt > logsum) {
      logsum = lt + std::log1p(std::exp(logsum - lt));
    } else {
      logsum += std::log1p(std::exp(lt - logsum));
    }
  }
  out.log_partial_sum = logsum;

  // The growth rate of log term_k against k is affine in s:
  //   slope(s') = (s'/theta) * L + M
  // with L the fitted growth of log lambda_k and M that of the s'-free part.
  const int lo = K / 2;
  const int n = K - lo;
  std::vector<double> xs(n), ylam(n), yfree(n);
  double cb = 0.0;
  for (int k = 0; k < lo; ++k) cb += riesz_log_factor(a[k], theta);
  for (int i = 0; i < n; ++i) {
    const int k = lo + i;
    cb += riesz_log_factor(a[k], theta);
    xs[i] = k;
    ylam[i] = std::log(lambda[k]);
    yfree[i] = cb - ylam[i];
  }
  const double L = lsq_slope(xs.data(), ylam.data(), n);
  const double M = lsq_slope(xs.data(), yfree.data(), n);
  out.fitted_growth = (s / theta) * L + M;
  out.divergent = out.fitted_growth >= 0.0;
  out.dimension = std::clamp(-theta * M / L, 0.0, theta);
  return out;
}

ClosedFormSpectrum oracle_cantor(double p) {
  if (p <= 0.0 || p >= 1.0)
    throw std::invalid_argument("cantor weight must lie in (0,1)");
  ClosedFormSpectrum s;
  s.name = param_name("cantor(p=%g)", p);
  s.dim = 1;
  const double q = 1.0 - p;
  const double log3 = std::log(3.0);
  const double vh =
      std::log(p * p * p * p + 4 * p * p * q * q + q * q * q * q) /
      (-2.0 * log3);
  const double v1 = std::log(p * p + q * q) / (-log3);
  s.eval = [vh, v1](double theta) {
    constexpr double eps = 1e-12;
    if (std::fabs(theta) < eps) return exact(0.0);
    if (std::fabs(theta - 0.5) < eps) return exact(vh);
    if (std::fabs(theta - 1.0) < eps) return exact(v1);
    OracleValue v;
    v.kind = OracleKind::kBand;
    if (theta < 0.5) {
      // chord from below; from above, the secant through (1/2, 1) extended
      // left together with the zero-Fourier-dimension cap theta*d
      v.lo = 2.0 * theta * vh;
      v.hi = std::min(theta, vh + (theta - 0.5) * 2.0 * (v1 - vh));
    } else {
      v.lo = vh + (theta - 0.5) * 2.0 * (v1 - vh);
      v.hi = std::min(v1, 2.0 * theta * vh);
    }
    return v;
  };
  return s;
}

ClosedFormSpectrum oracle_bernoulli_half(double p) {
  if (p <= 0.0 || p >= 1.0 || p == 0.5)
    throw std::invalid_argument("bernoulli weight must lie in (0,1) \\ {1/2}");
  ClosedFormSpectrum s;
  s.name = param_name("bernoulli(p=%g)", p);
  s.dim = 1;
  const double b = std::fabs(2.0 * p - 1.0);
  const double at_one = 1.0 - std::log2(1.0 + b * b);
  s.eval = [b, at_one](double theta) {
    if (theta <= 0.0) return exact(0.0);
    const double val =
        theta - theta * std::log2(1.0 + std::pow(b, 2.0 / theta));
    if (theta >= 1.0) return exact(val);
    // interior: only a lower bound; the vanishing Fourier dimension caps the
    // spectrum by theta*d, and monotonicity caps it by the theta = 1 value
    return OracleValue{val, std::min(theta, at_one), OracleKind::kLowerBound};
  };
  return s;
}

ClosedFormSpectrum oracle_curve(double p) {
  if (p <= 1.0) throw std::invalid_argument("curve exponent must exceed 1");
  ClosedFormSpectrum s;
  s.name = param_name("curve(p=%g)", p);
  s.dim = 2;
  s.eval = [p](double theta) {
    return exact(std::min(2.0 / p + theta * (1.0 - 1.0 / p), 1.0));
  };
  return s;
}

ClosedFormSpectrum oracle_firstsharp(int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1..3");
  ClosedFormSpectrum s;
  s.name = param_name("firstsharp(d=%d)", d);
  s.dim = d;
  s.eval = [d](double theta) { return exact(d * theta); };
  return s;
}

}  // namespace fspec
