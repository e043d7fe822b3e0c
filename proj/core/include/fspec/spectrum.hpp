#pragma once

#include <string>
#include <vector>

#include "fspec/energy.hpp"

// The scaling estimator: reads off dim_F^theta from ball averages of
// |mu^|^{2/theta} over dyadic shells, with an energy-onset fallback for the
// saturated regime where the averages are pinned at theta d.

namespace fspec {

// Slope statistics of y against x over dyadic shells.  The headline
// exponent is the least-squares slope over the upper half of the range,
// clamped into [liminf_proxy, limsup_proxy]; the proxies are the extreme
// slopes of 4-point windows that start in the upper half.  The definition
// of the spectrum is a liminf, so liminf_proxy is the faithful point
// estimate and the spread feeds the confidence width.
struct ScalingFit {
  double exponent = 0.0;
  double liminf_proxy = 0.0;
  double limsup_proxy = 0.0;
  double slope_se = 0.0;
  bool tail_drift = false;  // window slopes still moving strictly one way at
                            // the end of the range: treat as unconverged
  std::vector<double> window_slopes;
};

ScalingFit scaling_fit(const std::vector<double>& x, const std::vector<double>& y);

enum SpectrumFlag : unsigned {
  kLowerBoundOnly = 1u,  // averages saturated at theta d and the onset route
                         // did not engage: the value may undershoot
  kEnergyOnset = 2u,     // energy-onset extrapolation supplied the value
  kClampedToSet = 4u,    // clamped to the ambient dimension (as-set mode)
};

struct SpectrumPoint {
  double theta = 0.0;
  double value = 0.0;
  double ci_halfwidth = 0.0;
  double liminf_proxy = 0.0;  // window-slope extremes of the underlying fit,
  double limsup_proxy = 0.0;  // before clamping and the onset override
  unsigned flags = 0;
};

struct SpectrumCurve {
  int dim = 1;
  bool as_set = false;
  std::vector<SpectrumPoint> points;

  const SpectrumPoint* at_theta(double theta) const;  // exact match or null
  double fourier_dim() const;  // value at theta = 0 (0 when absent)
  double sobolev_dim() const;  // value at theta = 1 (0 when absent)
};

struct EstimateOptions {
  bool as_set = false;
  double saturation_margin = 0.02;  // fraction of theta d
  double onset_min_growth = 0.25;   // weakest energy growth worth extrapolating
  double onset_drift_tol = 0.10;    // cap on theta * (onset window spread)
};

SpectrumPoint estimate_point(const TransformSamples& s, double theta,
                             const EstimateOptions& opts = {});
SpectrumCurve estimate_spectrum(const TransformSamples& s,
                                const std::vector<double>& thetas,
                                const EstimateOptions& opts = {});

struct DiagnosticCheck {
  std::string name;
  bool passed = true;
  double margin = 0.0;  // >= 0 means the check holds with room to spare
  std::string detail;
};

struct DiagnosticsReport {
  std::vector<DiagnosticCheck> checks;
  bool ok() const;
  std::string str() const;
};

// Internal consistency of an estimated curve: nondecreasing and concave in
// theta, the chord lower bound between theta = 0 and 1, and the continuity
// upper bound at theta = 0 (which needs the Holder exponent of the measure).
// Each check gets slack of three confidence halfwidths.
DiagnosticsReport run_diagnostics(const SpectrumCurve& curve, double holder);

}  // namespace fspec
