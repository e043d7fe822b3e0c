#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fspec/applications.hpp"
#include "fspec/measures.hpp"
#include "fspec/oracles.hpp"
#include "fspec/transform.hpp"

using namespace fspec;

namespace {

SpectrumCurve estimated_curve(std::vector<double> thetas,
                              std::vector<double> values, double ci) {
  SpectrumCurve c;
  c.dim = 1;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    SpectrumPoint p;
    p.theta = thetas[i];
    p.value = values[i];
    p.ci_halfwidth = ci;
    c.points.push_back(p);
  }
  return c;
}

TransformSamples power_law_samples(int shells, double decay) {
  TransformSamples s;
  s.grid = FrequencyGrid::line(shells, 1.0);
  s.mass = 1.0;
  for (const auto& n : s.grid.nodes) {
    s.values.push_back(std::pow(n.radius, -decay));
    s.err.push_back(0.0);
  }
  return s;
}

}  // namespace

TEST_CASE("curve algebra interpolation") {
  const CurveAlgebra c = CurveAlgebra::from_values(1, {0.0, 0.5, 1.0},
                                                   {0.1, 0.4, 0.6});
  CHECK(c.exact);
  CHECK(c.value(0.5) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(c.value(0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c.value(0.75) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.lower(0.25) == c.upper(0.25));
  CHECK(c.halfwidth(0.25) == 0.0);
  CHECK(c.tol() == doctest::Approx(1e-9));
  CHECK_THROWS_AS(c.value(-0.1), std::domain_error);
  CHECK_THROWS_AS(c.value(1.1), std::domain_error);

  CHECK_THROWS_AS(CurveAlgebra::from_values(1, {0.0, 1.0}, {0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CurveAlgebra::from_oracle(oracle_curve(4.0), 1),
                  std::invalid_argument);
}

TEST_CASE("curve algebra from estimated points") {
  const SpectrumCurve est =
      estimated_curve({0.0, 0.5, 1.0}, {0.1, 0.4, 0.6}, 0.02);
  const CurveAlgebra c = CurveAlgebra::from_points(est);
  CHECK_FALSE(c.exact);
  CHECK(c.value(0.5) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(c.lower(0.5) == doctest::Approx(0.38).epsilon(1e-12));
  CHECK(c.upper(0.5) == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(c.tol() == doctest::Approx(0.02).epsilon(1e-12));

  SpectrumCurve one;
  one.dim = 1;
  one.points.push_back({});
  CHECK_THROWS_AS(CurveAlgebra::from_points(one), std::invalid_argument);
  // grid must span [0,1]
  const SpectrumCurve half = estimated_curve({0.0, 0.5}, {0.1, 0.4}, 0.02);
  CHECK_THROWS_AS(CurveAlgebra::from_points(half), std::invalid_argument);
}

TEST_CASE("convolution spectrum arithmetic") {
  const CurveAlgebra r = CurveAlgebra::from_oracle(oracle_riesz(0.8, 3));

  // k = 1 is the identity
  const CurveAlgebra same = convolve_spectrum(r, 1);
  for (double th : {0.0, 0.3, 1.0})
    CHECK(same.value(th) == doctest::Approx(r.value(th)).epsilon(1e-12));

  // squared measure at theta = 1: twice the value at 1/2
  const CurveAlgebra sq = convolve_spectrum(r, 2);
  CHECK(sq.value(1.0) ==
        doctest::Approx(2.0 * 0.477274799643492081).epsilon(1e-9));

  // composition: (mu*2)*2 = mu*4 wherever the knots line up exactly
  const CurveAlgebra twice_twice = convolve_spectrum(sq, 2);
  const CurveAlgebra four = convolve_spectrum(r, 4);
  for (double th : {0.0, 0.2, 0.48, 1.0})
    CHECK(twice_twice.value(th) ==
          doctest::Approx(four.value(th)).epsilon(1e-9));

  // linear curves are fixed points
  const CurveAlgebra cube =
      CurveAlgebra::from_oracle(oracle_embedded_cube(1, 2));
  const CurveAlgebra cube2 = convolve_spectrum(cube, 2);
  for (double th : {0.1, 0.5, 1.0})
    CHECK(cube2.value(th) == doctest::Approx(th).epsilon(1e-12));

  CHECK_THROWS_AS(convolve_spectrum(r, 0), std::invalid_argument);
}

TEST_CASE("convolution lower bound") {
  const CurveAlgebra r = CurveAlgebra::from_oracle(oracle_riesz(0.8, 3));
  // symmetric concave factors: the balanced split wins
  const ConvolutionBound sym = convolution_lower_bound(r, r, 1.0);
  CHECK(sym.value == doctest::Approx(2.0 * r.value(0.5)).epsilon(1e-6));
  CHECK(sym.witness_lambda == doctest::Approx(0.5).epsilon(0.03));

  // a vanishing second factor degrades to the plain curve by monotonicity
  const CurveAlgebra zero = CurveAlgebra::from_values(1, {0.0, 1.0}, {0.0, 0.0});
  const ConvolutionBound plain = convolution_lower_bound(r, zero, 0.8);
  CHECK(plain.value == doctest::Approx(r.value(0.8)).epsilon(1e-12));
  CHECK(plain.witness_lambda == doctest::Approx(1.0));
}

TEST_CASE("convolution improvement predicate") {
  const CurveAlgebra line =
      CurveAlgebra::from_oracle(oracle_embedded_cube(1, 2));
  CHECK_FALSE(convolution_improves(line, 0.5).improves);
  CHECK_FALSE(convolution_improves(line, 1.0).improves);

  const CurveAlgebra r = CurveAlgebra::from_oracle(oracle_riesz(0.8, 3));
  const ImprovementResult res = convolution_improves(r, 1.0);
  CHECK(res.improves);
  CHECK(res.margin > 0.0);
  CHECK(res.witness_lambda > 0.0);
  CHECK(res.witness_lambda < 1.0);
}

TEST_CASE("iterated convolution limit") {
  const CurveAlgebra r = CurveAlgebra::from_oracle(oracle_riesz(0.8, 3), 201);
  const IteratedLimit it = iterated_convolution_limit(r);
  CHECK(it.zero_fourier);
  CHECK(it.fourier_dim == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(it.semi_derivative == doctest::Approx(1.0).epsilon(0.01));
  CHECK(it.gap_lower == doctest::Approx(0.747288702791716253).epsilon(1e-6));
  CHECK(it.upper_bound == doctest::Approx(1.0).epsilon(1e-12));

  const CurveAlgebra c = CurveAlgebra::from_oracle(oracle_curve(4.0));
  const IteratedLimit itc = iterated_convolution_limit(c);
  CHECK_FALSE(itc.zero_fourier);
  CHECK(itc.fourier_dim == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(itc.linear_rate == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS(iterated_convolution_limit(r, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(iterated_convolution_limit(r, 1.5), std::invalid_argument);
}

TEST_CASE("sumset conclusions") {
  const CurveAlgebra x =
      CurveAlgebra::from_values(1, {0.0, 1.0}, {0.3, 0.8});
  const SumsetReport r = sumset_bounds(x, x, 0.5, 1);
  // the Sobolev value of the second curve certifies more than the caller's
  // dimension, so the effective dimH is raised
  CHECK(r.dimh_y == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(!r.note.empty());
  CHECK(r.positive_measure);
  CHECK(r.witness_lambda_measure == doctest::Approx(0.0));
  CHECK(r.margin_measure == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(r.dim_lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.improves);
  CHECK_FALSE(r.nonempty_interior);  // not a measure-level claim

  // a flatter curve: dimension gain without positive measure
  const CurveAlgebra y =
      CurveAlgebra::from_values(1, {0.0, 1.0}, {0.1, 0.4});
  const SumsetReport r2 = sumset_bounds(y, y, 0.2, 1);
  CHECK(r2.dimh_y == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_FALSE(r2.positive_measure);
  CHECK(r2.dim_lower == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r2.improves);

  CHECK_THROWS_AS(sumset_bounds(x, x, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sumset_bounds(x, x, 1.5, 1), std::invalid_argument);
}

TEST_CASE("sobolev improving threshold") {
  const CurveAlgebra r = CurveAlgebra::from_oracle(oracle_riesz(0.8, 3), 201);
  CHECK(sobolev_improving(r) == doctest::Approx(1.0).epsilon(1e-4));
  const CurveAlgebra cube =
      CurveAlgebra::from_oracle(oracle_embedded_cube(2, 3));
  CHECK(sobolev_improving(cube) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("distance sets from spectrum curves") {
  // dim_F + dim_S = 0.3 + 0.9 > d = 1 forces positive measure
  const CurveAlgebra x =
      CurveAlgebra::from_values(1, {0.0, 1.0}, {0.3, 0.9});
  const DistanceReport r = distance_set_check(x, 1);
  CHECK(r.sup_value == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(r.positive_measure);
  CHECK(r.dim_lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.half_shortcut == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(r.moment == DistanceReport::Moment::kNone);

  // refining the oracle sampling can only raise the concave interpolant
  const DistanceReport coarse =
      distance_set_check(CurveAlgebra::from_oracle(oracle_riesz(0.8, 3), 51), 1);
  const DistanceReport fine = distance_set_check(
      CurveAlgebra::from_oracle(oracle_riesz(0.8, 3), 201), 1);
  CHECK(fine.sup_value >= coarse.sup_value - 1e-12);
}

TEST_CASE("fourth moment check") {
  // an atom has |mu^| = 1: the fourth power integral grows like R
  const Measure atom = make_measure(AtomicMeasure{1, {{0.4, 0, 0}}, {1.0}});
  const DistanceReport div =
      fourth_moment_check(atom, FrequencyGrid::line(12, 1.0));
  CHECK(div.moment == DistanceReport::Moment::kDiverges);
  CHECK(div.fitted_rate > 0.1);
  CHECK_FALSE(div.positive_measure);

  // |mu^| = |z|^{-s/2} with s = 0.75: |mu^|^4 |z| integrates to R^{-1/2}
  const DistanceReport conv = fourth_moment_check(power_law_samples(12, 0.375));
  CHECK(conv.moment == DistanceReport::Moment::kConverges);
  CHECK(conv.fitted_rate == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(conv.positive_measure);
  CHECK(!conv.caveat.empty());
}
