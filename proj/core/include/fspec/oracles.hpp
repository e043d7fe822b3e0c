#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fspec {

// How to read an oracle value at a given theta.  Exact values have lo == hi.
// Lower bounds leave hi at the generic cap (theta*d is always an upper bound
// for the families handled here, all of which have zero Fourier dimension and
// Lipschitz transforms).  Bands carry both edges.
enum class OracleKind { kExact, kLowerBound, kBand };

struct OracleValue {
  double lo = 0.0;
  double hi = 0.0;
  OracleKind kind = OracleKind::kExact;
};

// A closed-form spectrum curve theta -> dim estimate with validity tags.
// eval must be defined on all of [0,1]; outside the exact range it degrades
// to a bound rather than refusing.
struct ClosedFormSpectrum {
  std::string name;
  int dim = 1;
  std::function<OracleValue(double)> eval;

  OracleValue operator()(double theta) const { return eval(theta); }
};

// Lebesgue measure on an isometrically embedded k-cube in R^d (k < d):
// the spectrum is exactly k*theta.
ClosedFormSpectrum oracle_embedded_cube(int k, int d);

// Transport of a known spectrum through an isometric embedding into a space
// where it occupies a k-dimensional flat: min{k*theta, base(theta)}.
ClosedFormSpectrum oracle_embedding_transport(const ClosedFormSpectrum& base,
                                              int k);

// Geometric lacunary Riesz product with coefficient a and ratio lambda >= 3:
//   eval(theta) = theta - theta*log(1 + |a|^{2/theta} 2^{1-2/theta})/log(lambda)
// exact on (0,1], continuously extended by 0 at theta = 0.
ClosedFormSpectrum oracle_riesz(double a, int lambda);

// Truncated series diagnostics for a general lacunary Riesz product.  The
// summands of S_theta(s) = sum_k lambda_k^{s/theta-1} prod_{j<=k} b_j with
// b_j = 1 + |a_j|^{2/theta} 2^{1-2/theta} grow or decay geometrically; the
// fitted growth of log-terms over the upper half of the index range decides
// divergence, and the root of the (affine in s) growth rate gives the
// induced dimension estimate sup{s <= theta : negative growth}.
struct RieszGeneralResult {
  std::vector<double> log_terms;  // natural log of each summand, k = 1..K
  double log_partial_sum = 0.0;   // log of the K-term partial sum
  double fitted_growth = 0.0;     // LSQ slope of log_terms over upper half
  bool divergent = false;         // fitted_growth >= 0
  double dimension = 0.0;         // growth-root estimate, clamped to [0, theta]
};
RieszGeneralResult oracle_riesz_general(const std::vector<double>& a,
                                        const std::vector<double>& lambda,
                                        double theta, double s, int K);

// Cantor-Bernoulli measure on the middle-thirds set with weights (p, 1-p).
// Exact at theta in {0, 1/2, 1}; elsewhere a band: chord through the exact
// points from below, concave extrapolation plus the Lipschitz-transform
// theta*d cap from above.
ClosedFormSpectrum oracle_cantor(double p);

// Biased Bernoulli convolution with ratio 1/2 (distribution of sum +-2^{-n}
// with P(+) = p != 1/2).  Lower bound on (0,1), exact at the endpoints.
ClosedFormSpectrum oracle_bernoulli_half(double p);

// Lift of Lebesgue measure to the planar curve (x, x^p), p > 1:
//   eval(theta) = min{2/p + theta(1 - 1/p), 1}, exact on [0,1].
ClosedFormSpectrum oracle_curve(double p);

// The density 2 + sum n^{-2} sin(2pi 2^n x) on the unit cube: spectrum
// exactly theta*d with zero Fourier dimension.
ClosedFormSpectrum oracle_firstsharp(int d);

}  // namespace fspec
