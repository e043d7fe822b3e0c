#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fspec/measures.hpp"

// Evaluation of mu^(z) = int exp(-2 pi i z.x) dmu(x) for every measure
// family, pointwise and on dyadic-shell frequency grids.  Every value comes
// with an absolute error bound; exact families (atoms, lattice Riesz
// coefficients) report zero up to rounding.

namespace fspec {

struct TransformValue {
  std::complex<double> value;
  // absolute error estimate: rigorous remainder bounds for truncations and
  // integration-by-parts tails, leaf-level heuristics for Gauss-Legendre
  // pieces (may undershoot by a small factor on oscillatory integrands)
  double err = 0.0;
};

struct GridNode {
  Vec z{};
  double weight = 0.0;   // quadrature weight for integrals over the annuli
  double radius = 0.0;   // |z|
  std::int32_t shell = 0;  // 1-based dyadic shell index
};

// Frequency grid covering the annuli (R_{j-1}, R_j], R_j = r0 * 2^j,
// j = 1..shells.  Nodes are stored shell-major in a deterministic order.
// In d = 1 the grid lies on the positive axis and the weights carry the
// factor 2 for the reflection z -> -z (|mu^| is even for real measures);
// in d = 2 nodes cover the half circle [0, pi) with the same doubling.
struct FrequencyGrid {
  int dim = 1;
  double r0 = 1.0;
  int shells = 0;
  double step = 0.0;       // d = 1: node spacing (1 for the integer lattice)
  bool lattice = false;    // d = 1: nodes are exactly the integers in (0, R_J]
  int radial_sub = 8;      // d >= 2: log-spaced sub-radii per shell
  double angular_scale = 0.0;  // d >= 2: half-circle node count per unit radius

  std::vector<GridNode> nodes;
  std::vector<std::size_t> shell_begin;  // size shells + 1

  double radius(int j) const;  // R_j, with radius(0) == r0

  // Builders.  `diam` is the support diameter of the measure the grid is
  // meant for; it controls the sampling density (step 1 / (4 diam) on the
  // line, 4 pi diam half-circle nodes per unit radius in the plane).
  static FrequencyGrid line(int shells, double diam, double r0 = 1.0);
  static FrequencyGrid line_lattice(int shells, double r0 = 1.0);
  static FrequencyGrid polar(int shells, double diam, double r0 = 1.0,
                             int radial_sub = 8);
  static FrequencyGrid sphere(int shells, double diam, double r0 = 1.0,
                              int radial_sub = 8);

  // Default grid for a measure: the integer lattice for Riesz products,
  // otherwise a dense grid sized from the support box.  Throws when a
  // density grid cannot resolve R_J (Nyquist).
  static FrequencyGrid standard(const Measure& m, int shells);

  // Stable one-line description; part of the sample cache key.
  std::string signature() const;
};

struct TransformSamples {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;  // one per grid node
  std::vector<double> err;                   // absolute bounds, one per node
  double mass = 0.0;                         // mu(R^d), for inner-ball terms
};

struct SampleOptions {
  int threads = 0;          // 0 = std::thread::hardware_concurrency()
  double tol = 1e-10;       // per-point absolute tolerance for quadratures
  std::string cache_dir;    // empty = no caching
};

// Pointwise transform; z must have measure.dim() meaningful components.
TransformValue eval_transform(const Measure& m, const Vec& z, double tol = 1e-10);

// Transform of the unit interval: int_0^1 exp(-2 pi i u x) dx.
std::complex<double> unit_interval_transform(double u);

// Exact Fourier coefficient of a Riesz product at an integer: the product of
// a_j / 2 over the unique lacunary representation m = sum eps_j lambda_j,
// or 0 when no representation exists.
double riesz_coefficient(const RieszProductMeasure& r, std::int64_t m);

// Transform of the lifted curve measure on (x, x^p): the oscillatory
// integral int_0^1 exp(-2 pi i (z1 x + z2 x^p)) dx.  Adaptive bisection with
// Gauss-Legendre leaves; segments far from the stationary point go through
// a two-term integration-by-parts shortcut with an explicit remainder bound.
TransformValue eval_curve_transform(double p, double z1, double z2,
                                    double tol = 1e-10);

// Evaluates the transform at every grid node.  Deterministic for any thread
// count: the node set is fixed by the grid and each value is written
// independently.  Densities on matching one-dimensional grids go through a
// single FFT; everything else is evaluated pointwise.
TransformSamples sample_grid(const Measure& m, const FrequencyGrid& grid,
                             const SampleOptions& opts = {});

// Sample cache (binary, versioned).  Keys hash the canonical descriptor
// together with the grid signature.
std::string sample_cache_key(const Measure& m, const FrequencyGrid& grid);
bool save_samples(const std::string& dir, const std::string& key,
                  const TransformSamples& s);
bool load_samples(const std::string& dir, const std::string& key,
                  const FrequencyGrid& grid, TransformSamples& out);

}  // namespace fspec
