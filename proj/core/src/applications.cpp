#include "fspec/applications.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fspec/energy.hpp"

namespace fspec {

namespace {

constexpr double kExactTol = 1e-9;
constexpr int kLambdaSteps = 100;  // uniform step 0.01 for all sups

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const size_t i = static_cast<size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

void check_range(double theta) {
  if (theta < -1e-12 || theta > 1.0 + 1e-12)
    throw std::domain_error("spectrum curves are defined on [0,1]");
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const char* kCurveCaveat =
    "bounds evaluate the supplied curve(s) only; the set-level spectrum "
    "optimizes over all supported measures and may be larger, so a failed "
    "criterion is not a counterexample";

}  // namespace

double CurveAlgebra::value(double theta) const {
  check_range(theta);
  return 0.5 * (interp(thetas, lo, theta) + interp(thetas, hi, theta));
}

double CurveAlgebra::lower(double theta) const {
  check_range(theta);
  return interp(thetas, lo, theta);
}

double CurveAlgebra::upper(double theta) const {
  check_range(theta);
  return interp(thetas, hi, theta);
}

double CurveAlgebra::halfwidth(double theta) const {
  check_range(theta);
  return 0.5 * (interp(thetas, hi, theta) - interp(thetas, lo, theta));
}

double CurveAlgebra::tol() const {
  if (exact) return kExactTol;
  double w = 0.0;
  for (size_t i = 0; i < thetas.size(); ++i) w = std::max(w, hi[i] - lo[i]);
  return std::max(kExactTol, 0.5 * w);
}

CurveAlgebra CurveAlgebra::from_oracle(const ClosedFormSpectrum& cf,
                                       int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  CurveAlgebra c;
  c.dim = cf.dim;
  c.exact = true;
  c.thetas.resize(samples);
  c.lo.resize(samples);
  c.hi.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    const OracleValue v = cf.eval(t);
    c.thetas[i] = t;
    c.lo[i] = v.lo;
    c.hi[i] = v.hi;
    if (v.kind != OracleKind::kExact) c.exact = false;
  }
  return c;
}

CurveAlgebra CurveAlgebra::from_points(const SpectrumCurve& curve) {
  if (curve.points.size() < 2)
    throw std::invalid_argument("need at least two spectrum points");
  CurveAlgebra c;
  c.dim = curve.dim;
  c.exact = false;
  if (curve.points.front().theta > 1e-9) {
    // extend to 0 conservatively: the chord from the origin is a valid
    // lower edge by concavity, monotonicity caps from above
    c.thetas.push_back(0.0);
    c.lo.push_back(0.0);
    c.hi.push_back(curve.points.front().value +
                   curve.points.front().ci_halfwidth);
  }
  for (const auto& p : curve.points) {
    c.thetas.push_back(p.theta);
    c.lo.push_back(std::max(0.0, p.value - p.ci_halfwidth));
    c.hi.push_back(p.value + p.ci_halfwidth);
  }
  if (c.thetas.back() < 1.0 - 1e-9)
    throw std::invalid_argument("spectrum grid must extend to theta = 1");
  return c;
}

CurveAlgebra CurveAlgebra::from_values(int dim, std::vector<double> thetas,
                                       std::vector<double> values) {
  if (thetas.size() != values.size() || thetas.size() < 2)
    throw std::invalid_argument("mismatched or too-short node lists");
  CurveAlgebra c;
  c.dim = dim;
  c.exact = true;
  c.thetas = std::move(thetas);
  c.lo = values;
  c.hi = std::move(values);
  return c;
}

CurveAlgebra convolve_spectrum(const CurveAlgebra& curve, int k) {
  if (k < 1) throw std::invalid_argument("convolution power must be >= 1");
  CurveAlgebra out = curve;
  for (size_t i = 0; i < curve.thetas.size(); ++i) {
    const double t = curve.thetas[i] / k;
    out.lo[i] = k * curve.lower(t);
    out.hi[i] = k * curve.upper(t);
  }
  return out;
}

ConvolutionBound convolution_lower_bound(const CurveAlgebra& a,
                                         const CurveAlgebra& b, double theta) {
  check_range(theta);
  ConvolutionBound best;
  best.value = -HUGE_VAL;
  for (int i = 0; i <= kLambdaSteps; ++i) {
    const double lam = static_cast<double>(i) / kLambdaSteps;
    const double v = a.value(lam * theta) + b.value((1.0 - lam) * theta);
    if (v > best.value) {
      best.value = v;
      best.witness_lambda = lam;
    }
  }
  return best;
}

ImprovementResult convolution_improves(const CurveAlgebra& curve,
                                       double theta) {
  check_range(theta);
  ImprovementResult r;
  r.tol = curve.tol();
  r.margin = -HUGE_VAL;
  const double ct = curve.value(theta);
  for (int i = 0; i < kLambdaSteps; ++i) {  // lambda in [0,1)
    const double lam = static_cast<double>(i) / kLambdaSteps;
    const double slack = curve.value(lam * theta) - lam * ct;
    if (slack > r.margin) {
      r.margin = slack;
      r.witness_lambda = lam;
    }
  }
  r.improves = r.margin > r.tol;
  return r;
}

IteratedLimit iterated_convolution_limit(const CurveAlgebra& curve,
                                         double alpha) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("holder exponent must lie in (0,1]");
  IteratedLimit out;
  out.fourier_dim = curve.value(0.0);
  out.zero_fourier =
      out.fourier_dim <= std::max(1e-9, 2.0 * curve.halfwidth(0.0));
  out.linear_rate = out.fourier_dim;
  out.gap_lower = std::max(0.0, curve.value(1.0) - out.fourier_dim);
  out.upper_bound = curve.dim * (1.0 + out.fourier_dim / (2.0 * alpha));

  // difference quotients at the two smallest positive knots, extrapolated
  // linearly to 0 (the quotient of a concave curve is nonincreasing, so the
  // first quotient alone is already a lower bound)
  double t1 = 0.0, t2 = 0.0;
  for (double t : curve.thetas) {
    if (t <= 1e-12) continue;
    if (t1 == 0.0) {
      t1 = t;
    } else {
      t2 = t;
      break;
    }
  }
  const double f0 = out.fourier_dim;
  const double r1 = (curve.value(t1) - f0) / t1;
  double d = r1;
  if (t2 > t1) {
    const double r2 = (curve.value(t2) - f0) / t2;
    d = r1 + (r1 - r2) * t1 / (t2 - t1);
  }
  out.semi_derivative =
      std::min(std::max({d, r1, out.gap_lower}), out.upper_bound);
  return out;
}

SumsetReport sumset_bounds(const CurveAlgebra& curve_x,
                           const CurveAlgebra& curve_y, double dimh_y, int d,
                           bool measure_level) {
  if (dimh_y < 0.0 || dimh_y > d)
    throw std::invalid_argument("Hausdorff dimension outside [0,d]");
  SumsetReport r;
  r.measure_level = measure_level;
  r.tol = std::max(curve_x.tol(), curve_y.tol());

  // a finite 1-energy certifies Hausdorff dimension of the support: the
  // second curve can only raise the caller's value
  const double energy_floor = std::min<double>(d, curve_y.lower(1.0));
  r.dimh_y = dimh_y;
  if (energy_floor > dimh_y + r.tol) {
    r.dimh_y = energy_floor;
    r.note = "dimH(Y) raised to the Sobolev-energy floor of curveY";
  }
  const double y = r.dimh_y;

  r.dim_lower = y;
  r.margin_measure = -HUGE_VAL;
  r.margin_interior = -HUGE_VAL;
  for (int i = 0; i < kLambdaSteps; ++i) {  // lambda in [0,1)
    const double lam = static_cast<double>(i) / kLambdaSteps;
    const double cx = curve_x.value(lam);
    const double cap = d - (1.0 - lam) * y;

    const double slack_measure = cx - cap;
    if (slack_measure > r.margin_measure) {
      r.margin_measure = slack_measure;
      r.witness_lambda_measure = lam;
    }
    if (measure_level) {
      const double slack_interior = cx - (2.0 * d - (1.0 - lam) * y);
      if (slack_interior > r.margin_interior) {
        r.margin_interior = slack_interior;
        r.witness_lambda_interior = lam;
      }
    }
    // dimension conclusion: admissible spectrum mass above lam*y, capped at
    // the positive-measure threshold (where the bound tops out at d)
    const double usable = std::min(cx, cap);
    if (usable > lam * y + r.tol) {
      const double bound = y + (usable - lam * y);
      if (bound > r.dim_lower) {
        r.dim_lower = bound;
        r.witness_lambda_dim = lam;
      }
    }
  }
  r.positive_measure = r.margin_measure > r.tol;
  r.nonempty_interior = measure_level && r.margin_interior > r.tol;
  if (r.positive_measure) r.dim_lower = d;
  r.improves = r.dim_lower > y + r.tol;
  return r;
}

double sobolev_improving(const CurveAlgebra& curve) {
  // on each linear segment the quotient value/theta is monotone, so the
  // knots attain the sup
  double best = 0.0;
  for (double t : curve.thetas) {
    if (t <= 1e-12) continue;
    best = std::max(best, curve.value(t) / t);
  }
  return best;
}

DistanceReport distance_set_check(const CurveAlgebra& curve_x, int d) {
  return distance_set_check(curve_x, curve_x, d);
}

DistanceReport distance_set_check(const CurveAlgebra& curve_x,
                                  const CurveAlgebra& curve_y, int d) {
  DistanceReport r;
  r.caveat = kCurveCaveat;
  const double tol = std::max(curve_x.tol(), curve_y.tol());
  r.sup_value = -HUGE_VAL;
  for (int i = 0; i <= kLambdaSteps; ++i) {
    const double t = static_cast<double>(i) / kLambdaSteps;
    const double v = curve_x.value(t) + curve_y.value(1.0 - t);
    if (v > r.sup_value) {
      r.sup_value = v;
      r.witness_theta = t;
    }
  }
  r.positive_measure = r.sup_value > d + tol;
  r.dim_lower = std::clamp(1.0 - d + r.sup_value, 0.0, 1.0);
  r.half_shortcut = curve_x.value(0.5) + curve_y.value(0.5);
  r.half_positive = r.half_shortcut > d + tol;
  return r;
}

DistanceReport fourth_moment_check(const TransformSamples& samples,
                                   double delta) {
  DistanceReport r;
  r.delta = delta;
  r.caveat = "convergence decided by a finite-range fit of shell sums";
  const std::vector<double> shell = shell_log_sums(samples, 4.0, 0.0);
  std::vector<double> xs, ys;
  for (size_t j = 0; j < shell.size(); ++j) {
    if (!std::isfinite(shell[j])) continue;
    xs.push_back(std::log(samples.grid.radius(static_cast<int>(j))));
    ys.push_back(shell[j]);
  }
  if (xs.size() < 5) {
    r.moment = DistanceReport::Moment::kInconclusive;
    return r;
  }
  const size_t half = xs.size() / 2;
  std::vector<double> xu(xs.begin() + half, xs.end());
  std::vector<double> yu(ys.begin() + half, ys.end());
  r.fitted_rate = fit_slope(xu, yu);
  if (r.fitted_rate <= -delta) {
    r.moment = DistanceReport::Moment::kConverges;
    r.positive_measure = true;
  } else if (r.fitted_rate >= delta) {
    r.moment = DistanceReport::Moment::kDiverges;
  } else {
    r.moment = DistanceReport::Moment::kInconclusive;
  }
  return r;
}

DistanceReport fourth_moment_check(const Measure& m, const FrequencyGrid& grid,
                                   const SampleOptions& opts, double delta) {
  return fourth_moment_check(sample_grid(m, grid, opts), delta);
}

}  // namespace fspec
