#pragma once

#include <string>
#include <vector>

#include "fspec/measures.hpp"
#include "fspec/oracles.hpp"
#include "fspec/spectrum.hpp"
#include "fspec/transform.hpp"

namespace fspec {

// Piecewise-linear view of a spectrum curve on [0,1], the common currency of
// the downstream predicates.  Nodes carry a lower and an upper edge: exact
// closed forms have lo == hi, estimated curves use value -+ ci, band oracles
// keep their two edges.  Linear interpolation is conservative for the lower
// edge because every curve we handle is concave.
struct CurveAlgebra {
  int dim = 1;
  bool exact = true;
  std::vector<double> thetas;  // strictly increasing, first 0, last 1
  std::vector<double> lo;
  std::vector<double> hi;

  double value(double theta) const;  // midpoint of the band
  double lower(double theta) const;
  double upper(double theta) const;
  double halfwidth(double theta) const;
  // decision tolerance for strict inequalities: 1e-9 when exact, the largest
  // halfwidth otherwise
  double tol() const;

  static CurveAlgebra from_oracle(const ClosedFormSpectrum& cf,
                                  int samples = 101);
  static CurveAlgebra from_points(const SpectrumCurve& curve);
  // synthetic exact curve through given nodes (testing / what-if inputs)
  static CurveAlgebra from_values(int dim, std::vector<double> thetas,
                                  std::vector<double> values);
};

// Spectrum of the k-fold self-convolution: theta -> k * curve(theta / k).
CurveAlgebra convolve_spectrum(const CurveAlgebra& curve, int k);

// Best convolution lower bound at theta for two (possibly distinct) factors:
// sup over lambda in [0,1] of a(lambda*theta) + b((1-lambda)*theta).
struct ConvolutionBound {
  double value = 0.0;
  double witness_lambda = 0.0;
};
ConvolutionBound convolution_lower_bound(const CurveAlgebra& a,
                                         const CurveAlgebra& b, double theta);

// Does self-convolution strictly increase the spectrum at theta?  True iff
// curve(lambda*theta) > lambda*curve(theta) for some lambda in [0,1); linear
// curves fail, strictly concave ones succeed.
struct ImprovementResult {
  bool improves = false;
  double witness_lambda = 0.0;
  double margin = 0.0;  // max over lambda of the strict-inequality slack
  double tol = 0.0;
};
ImprovementResult convolution_improves(const CurveAlgebra& curve,
                                       double theta);

// Right semi-derivative of the curve at 0 and the iterated-convolution
// consequences: when the Fourier dimension vanishes, dim_S of the k-fold
// convolution increases to the semi-derivative; otherwise it grows linearly
// at rate fourier_dim per convolution.
struct IteratedLimit {
  double fourier_dim = 0.0;
  bool zero_fourier = false;
  double semi_derivative = 0.0;  // extrapolated d/dtheta at 0+
  double linear_rate = 0.0;      // k-growth rate in the positive-dim regime
  double gap_lower = 0.0;        // sobolev - fourier, a lower bound
  double upper_bound = 0.0;      // dim*(1 + fourier_dim/(2*alpha))
};
IteratedLimit iterated_convolution_limit(const CurveAlgebra& curve,
                                         double alpha = 1.0);

// Sumset conclusions for X + Y from the spectrum of (a measure on) X and the
// Hausdorff dimension of Y, scanned over the interpolation parameter lambda.
struct SumsetReport {
  double dimh_y = 0.0;      // effective value used (possibly raised, see note)
  double dim_lower = 0.0;   // best lower bound on dim_H(X + Y)
  double witness_lambda_dim = 0.0;
  bool improves = false;    // dim_lower strictly exceeds dimh_y
  bool positive_measure = false;
  double witness_lambda_measure = 0.0;
  double margin_measure = 0.0;
  bool nonempty_interior = false;  // only claimed from measure-level curves
  double witness_lambda_interior = 0.0;
  double margin_interior = 0.0;
  bool measure_level = false;
  double tol = 0.0;
  std::string note;
};
SumsetReport sumset_bounds(const CurveAlgebra& curve_x,
                           const CurveAlgebra& curve_y, double dimh_y, int d,
                           bool measure_level = false);

// Sobolev-improving threshold: s* = sup curve(theta)/theta.  Convolving with
// the measure strictly raises the Sobolev dimension of anything below s*.
double sobolev_improving(const CurveAlgebra& curve);

// Distance-set conclusions.  The same report type serves the curve route
// (sup of theta/1-theta pairs) and the fourth-moment route; `moment` stays
// kNone for the former.
struct DistanceReport {
  double sup_value = 0.0;  // M = sup curve_x(theta) + curve_y(1-theta)
  double witness_theta = 0.0;
  bool positive_measure = false;
  double dim_lower = 0.0;     // 1 - d + M, clamped to [0,1]
  double half_shortcut = 0.0; // 2 * curve(1/2)
  bool half_positive = false;
  enum class Moment { kNone, kConverges, kDiverges, kInconclusive };
  Moment moment = Moment::kNone;
  double fitted_rate = 0.0;
  double delta = 0.0;
  std::string caveat;
};
DistanceReport distance_set_check(const CurveAlgebra& curve_x, int d);
// mixed variant for D(X, Y)
DistanceReport distance_set_check(const CurveAlgebra& curve_x,
                                  const CurveAlgebra& curve_y, int d);

// Decides finiteness of the fourth moment of the transform by the fitted
// log-growth of per-shell contributions to the integral of |transform|^4:
// rate <= -delta converges (positive-measure distance set for the support),
// rate >= +delta diverges, otherwise inconclusive.
DistanceReport fourth_moment_check(const TransformSamples& samples,
                                   double delta = 0.1);
DistanceReport fourth_moment_check(const Measure& m, const FrequencyGrid& grid,
                                   const SampleOptions& opts = {},
                                   double delta = 0.1);

}  // namespace fspec
