#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Finite Borel measures on R^d (d = 1, 2, 3) built from a small set of
// closed families.  Every family is stored by the parameters that define it,
// never by samples of its transform, so a measure object is cheap to copy
// and compare.  The transform engine knows how to evaluate each family.

namespace fspec {

inline constexpr int kMaxDim = 3;

using Vec = std::array<double, kMaxDim>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Axis-aligned bounding box of the support.
struct SupportBox {
  int dim = 1;
  std::array<Interval, kMaxDim> axis{};

  // Largest |x| over the box, measured from the origin.
  double radius() const;
  double diameter() const;
};

// Finite sum of point masses: sum_i w_i * delta(x_i), w_i >= 0.
struct AtomicMeasure {
  int dim = 1;
  std::vector<Vec> points;
  std::vector<double> weights;
};

// Nonnegative density sampled at the midpoints of a uniform grid.  The
// object the engine actually integrates against is the discrete midpoint
// model sum_c values[c] * h^d * delta(x_c).  Its transform agrees with the
// trigonometric-polynomial content of the density up to the Nyquist
// frequency (1 / (2 h)); the grid builders refuse to sample beyond that.
struct DensityMeasure {
  int dim = 1;  // 1 or 2
  std::array<std::size_t, 2> cells{1, 1};  // cells[1] == 1 when dim == 1
  double cell_size = 0.0;                  // h, the same in every axis
  std::array<double, 2> origin{0.0, 0.0};  // corner of cell (0, 0)
  std::vector<double> values;              // row-major: values[iy * cells[0] + ix]
};

// Distribution of sum_{n >= 0} X_n r^n where the X_n are i.i.d. with
// P(X = t_i) = p_i.  Lives on the line; support is [min t, max t] / (1 - r).
// The transform is the convergent product prod_{n >= 0} g(z r^n) with
// g(w) = sum_i p_i exp(-2 pi i w t_i), and satisfies mu^(z) = g(z) mu^(r z).
struct SelfSimilarMeasure {
  double ratio = 0.0;  // r in (0, 1)
  std::vector<double> translations;
  std::vector<double> weights;  // probability vector
};

// Riesz product prod_j (1 + a_j cos(2 pi lambda_j x)) dx on the circle,
// viewed 1-periodically on [0, 1].  Frequencies must be lacunary with
// lambda_{j+1} >= 3 lambda_j, which makes the representation of an integer
// as sum_j eps_j lambda_j (eps_j in {-1, 0, 1}) unique; the Fourier
// coefficient at such an integer is prod_{eps_j != 0} (a_j / 2), and zero
// at every integer with no representation.
struct RieszProductMeasure {
  std::vector<double> coefficients;        // a_j, |a_j| <= 1
  std::vector<std::int64_t> frequencies;   // lambda_j, increasing
};

// Arc-length-free lift of Lebesgue measure on [0, 1] to the planar curve
// (x, x^p), p > 1: the image of dx under x -> (x, x^p).  Always d = 2.
struct CurveMeasure {
  double exponent = 2.0;  // p
};

struct Measure;

// Pushforward of a lower-dimensional measure under the affine isometry
// x -> offset + sum_i x_i frame[i], where the frame columns are orthonormal
// vectors in R^dim.  The transform is the base transform evaluated at the
// projection of z onto the frame, times a unimodular phase from the offset.
struct EmbeddedMeasure {
  std::shared_ptr<const Measure> base;
  int dim = 2;
  std::vector<Vec> frame;  // one orthonormal column per base dimension
  Vec offset{};
};

// Convolution of two or more measures of the same dimension; the transform
// is the pointwise product of the factor transforms.
struct ConvolutionMeasure {
  std::vector<std::shared_ptr<const Measure>> factors;
};

using MeasureFamily =
    std::variant<AtomicMeasure, DensityMeasure, SelfSimilarMeasure,
                 RieszProductMeasure, CurveMeasure, EmbeddedMeasure,
                 ConvolutionMeasure>;

struct Measure {
  MeasureFamily family;
  std::string label;

  // Holder exponent of the coordinate maps used to build the measure; all
  // built-in families are images of Lipschitz maps, so this defaults to 1.
  // Kept as a field because continuity bounds on the spectrum depend on it.
  std::optional<double> holder_exponent;

  // Original descriptor text, when the measure was parsed from one.  Lets
  // emit_measure() reproduce the input instead of dumping large value
  // arrays back out.
  std::shared_ptr<const std::string> origin;

  int dim() const;
  double mass() const;  // total mass mu(R^d)
  double holder() const { return holder_exponent.value_or(1.0); }
  SupportBox support() const;
};

struct Violation {
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Checks the parameter constraints of every family (weights nonnegative,
// ratio in (0, 1), lacunarity, orthonormal frames, matching dimensions, ...).
// Recurses through embedded and convolution factors.
ValidationReport validate(const Measure& m);

// The sharpness example: density 2 + sum_{n=1}^{n_max} n^{-2} sin(2 pi 2^n x)
// on [0, 1]^d (a product of one-dimensional factors when d > 1).  The grid
// must resolve the top frequency comfortably: cells_per_unit must be a power
// of two exceeding 2^(n_max + 2), else std::invalid_argument.
Measure firstsharp_density(int dim, int n_max, std::size_t cells_per_unit);

// Convenience builders used all over the tests.
Measure make_measure(MeasureFamily fam, std::string label = {});
Measure embed_in(Measure base, int ambient_dim, const std::vector<Vec>& frame,
                 const Vec& offset = {});
Measure self_convolution(Measure m, int k);  // k-fold convolution power

}  // namespace fspec
