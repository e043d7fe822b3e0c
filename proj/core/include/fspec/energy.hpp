#pragma once

#include <vector>

#include "fspec/transform.hpp"

// Spherical energy accumulation.  Everything is cumulative over dyadic
// shells and carried in log scale: the integrands |mu^|^{2/theta} reach
// exponents of 40 and the sums span hundreds of orders of magnitude.

namespace fspec {

// Unit-sphere surface measure and unit-ball volume, d = 1, 2, 3.
double sphere_area(int d);
double ball_volume(int d);

// log of sum over each shell of  w * |v|^q * |z|^e  (q = 2/theta,
// e = s/theta - d).  Empty or all-zero shells give -infinity.
std::vector<double> shell_log_sums(const TransformSamples& s, double q, double e);

// first-order error transfer: log of sum of  w * q * |v|^(q-1) * err * |z|^e
std::vector<double> shell_log_err_sums(const TransformSamples& s, double q,
                                       double e);

// log of max over each shell of  |v|^2 * |z|^s_exp
std::vector<double> shell_log_sup(const TransformSamples& s, double s_exp);

// Cumulative partial energy up to each R_j.  For theta > 0 this is
//   ( inner + int_{r0 < |z| <= R_j} |mu^|^{2/theta} |z|^{s/theta - d} dz )^theta
// with the inner-ball part bounded analytically by mass^{2/theta} times
// sigma_d theta/s r0^{s/theta} (requires s > 0; at s = 0 the inner ball is
// not integrable and the sum is exterior-only by convention).  For theta = 0
// it is the running sup of |mu^|^2 |z|^s, seeded with mass^2 r0^s.
struct EnergyProfile {
  double theta = 1.0, s = 0.0;
  std::vector<double> radii;
  std::vector<double> log_value;
  std::vector<double> rel_err;  // relative bound from the per-node errors
};
EnergyProfile partial_energy_profile(const TransformSamples& s, double theta,
                                     double s_exp);

// Ball averages R_j^{-d} (inner + int_{r0 < |z| <= R_j} |mu^|^{2/theta} dz),
// inner = mass^{2/theta} v_d r0^d.  No outer theta power; the estimator
// applies it in the fit.
struct BallProfile {
  double theta = 1.0;
  std::vector<double> radii;
  std::vector<double> log_average;
  std::vector<double> rel_err;
};
BallProfile ball_average_profile(const TransformSamples& s, double theta);

// Partial sums  sum_{z in theta Z^d, 0 < |z| <= R_j} |mu^(z)|^{2/theta}
// |z|^{s/theta-d}  over the refined lattice, cumulative per dyadic shell
// (d = 1 or 2).  Requires theta = 1/k, 0 < s < d theta and support inside
// the unit cube — the hypotheses under which (1 + sum)^theta is comparable
// to the integral energy.  log_partial stores log(sum) without the 1+ or
// the outer power.  k = 1 uses exact coefficients / the density FFT; k >= 2
// evaluates pointwise and is intended for closed-form families.
struct LatticeEnergy {
  double theta = 1.0, s = 0.0;
  std::vector<double> radii;
  std::vector<double> log_partial;
};
LatticeEnergy lattice_energy(const Measure& m, double theta, double s_exp,
                             int shells, const SampleOptions& opts = {});

// log(exp(a) + exp(b)) without leaving log scale
double log_add(double a, double b);

}  // namespace fspec
