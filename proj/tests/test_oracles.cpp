#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fspec/oracles.hpp"

using namespace fspec;

namespace {

// dense-sample structural check shared by all closed forms: nondecreasing
// and midpoint-concave on the uniform grid, separately for both band edges
void check_shape(const ClosedFormSpectrum& cf) {
  const int n = 100;
  std::vector<double> lo(n + 1), hi(n + 1);
  for (int i = 0; i <= n; ++i) {
    const OracleValue v = cf(double(i) / n);
    lo[i] = v.lo;
    hi[i] = v.hi;
    CHECK(v.lo <= v.hi + 1e-12);
  }
  for (int i = 0; i < n; ++i) {
    CHECK(lo[i + 1] >= lo[i] - 1e-9);
    CHECK(hi[i + 1] >= hi[i] - 1e-9);
  }
  for (int i = 1; i < n; ++i)
    CHECK(lo[i] >= 0.5 * (lo[i - 1] + lo[i + 1]) - 1e-9);
}

}  // namespace

// Closed-form reference values below were frozen from 50-digit evaluations
// of the defining formulas.

TEST_CASE("embedded cube spectrum is k theta") {
  const ClosedFormSpectrum cube = oracle_embedded_cube(1, 2);
  CHECK(cube(1.0).lo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cube(0.0).lo == 0.0);
  CHECK(cube(0.37).lo == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(cube(0.37).kind == OracleKind::kExact);
  const ClosedFormSpectrum plane = oracle_embedded_cube(2, 3);
  CHECK(plane(0.5).lo == doctest::Approx(1.0).epsilon(1e-15));
  check_shape(cube);
  CHECK_THROWS_AS(oracle_embedded_cube(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(oracle_embedded_cube(0, 2), std::invalid_argument);
}

TEST_CASE("geometric riesz product closed form") {
  const ClosedFormSpectrum r = oracle_riesz(0.8, 3);
  CHECK(r(1.0).lo == doctest::Approx(0.747288702791716253).epsilon(1e-14));
  CHECK(r(0.5).lo == doctest::Approx(0.477274799643492081).epsilon(1e-14));
  CHECK(r(0.2).lo == doctest::Approx(0.199961825802422866).epsilon(1e-14));
  CHECK(r(0.0).lo == 0.0);
  CHECK(r(1.0).kind == OracleKind::kExact);
  const ClosedFormSpectrum full = oracle_riesz(1.0, 3);
  CHECK(full(1.0).lo == doctest::Approx(1.0 - std::log(1.5) / std::log(3.0))
                            .epsilon(1e-14));
  check_shape(r);
  CHECK_THROWS_AS(oracle_riesz(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(oracle_riesz(1.2, 3), std::invalid_argument);
  CHECK_THROWS_AS(oracle_riesz(0.8, 2), std::invalid_argument);
}

TEST_CASE("general riesz series reproduces the geometric closed form") {
  const int K = 200;
  std::vector<double> a(K, 0.8), lambda(K);
  double f = 3.0;
  for (int k = 0; k < K; ++k, f *= 3.0) lambda[k] = f;

  for (double theta : {0.4, 0.6, 1.0}) {
    const double closed = oracle_riesz(0.8, 3)(theta).lo;
    const RieszGeneralResult below =
        oracle_riesz_general(a, lambda, theta, closed - 0.01, K);
    const RieszGeneralResult above =
        oracle_riesz_general(a, lambda, theta, closed + 0.01, K);
    CHECK_FALSE(below.divergent);
    CHECK(above.divergent);
    CHECK(below.dimension == doctest::Approx(closed).epsilon(1e-6));
    CHECK(int(below.log_terms.size()) == K);
  }

  // s > theta always diverges
  CHECK(oracle_riesz_general(a, lambda, 0.5, 0.55, K).divergent);

  // rapidly vanishing coefficients: every s < theta converges and the
  // induced dimension climbs to theta itself
  std::vector<double> small(K);
  for (int k = 0; k < K; ++k) small[k] = std::pow(2.0, -(k + 1));
  const RieszGeneralResult easy =
      oracle_riesz_general(small, lambda, 0.5, 0.49, K);
  CHECK_FALSE(easy.divergent);
  CHECK(easy.dimension == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("cantor spectrum: exact knots, bands between") {
  const ClosedFormSpectrum c5 = oracle_cantor(0.5);
  CHECK(c5(0.0).lo == 0.0);
  CHECK(c5(0.5).lo == doctest::Approx(0.446394630357186156).epsilon(1e-14));
  CHECK(c5(1.0).lo == doctest::Approx(0.630929753571457437).epsilon(1e-14));
  CHECK(c5(0.5).kind == OracleKind::kExact);
  CHECK(c5(0.25).kind == OracleKind::kBand);
  CHECK(c5(0.25).lo < c5(0.25).hi);

  const ClosedFormSpectrum c3 = oracle_cantor(0.3);
  CHECK(c3(0.5).lo == doctest::Approx(0.389858978708257543).epsilon(1e-14));
  CHECK(c3(1.0).lo == doctest::Approx(0.495832042896649121).epsilon(1e-14));

  // the compression inequality dim_S < 2 dim_F^{1/2}
  CHECK(2.0 * c5(0.5).lo > c5(1.0).lo);
  CHECK(2.0 * c3(0.5).lo > c3(1.0).lo);

  check_shape(c5);
  check_shape(c3);
  CHECK_THROWS_AS(oracle_cantor(0.0), std::invalid_argument);
  CHECK_THROWS_AS(oracle_cantor(1.0), std::invalid_argument);
}

TEST_CASE("bernoulli convolution lower bound") {
  const ClosedFormSpectrum b = oracle_bernoulli_half(0.75);
  CHECK(b(1.0).lo == doctest::Approx(0.678071905112637652).epsilon(1e-14));
  CHECK(b(1.0).kind == OracleKind::kExact);
  CHECK(b(0.5).lo == doctest::Approx(0.456268579374830296).epsilon(1e-14));
  CHECK(b(0.5).kind == OracleKind::kLowerBound);
  CHECK(b(0.5).hi >= b(0.5).lo);
  // slope at zero approaches 1
  CHECK(b(0.05).lo / 0.05 >= 0.999);
  check_shape(b);
  CHECK_THROWS_AS(oracle_bernoulli_half(0.5), std::invalid_argument);
  CHECK_THROWS_AS(oracle_bernoulli_half(1.0), std::invalid_argument);
}

TEST_CASE("curve lift closed form") {
  const ClosedFormSpectrum c = oracle_curve(4.0);
  CHECK(c(0.0).lo == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c(2.0 / 3.0).lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c(1.0).lo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c(0.4).lo == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(c.dim == 2);
  check_shape(c);
  // p = 2 is the parabola: full spectrum
  const ClosedFormSpectrum par = oracle_curve(2.0);
  for (double th : {0.0, 0.5, 1.0})
    CHECK(par(th).lo == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(oracle_curve(1.0), std::invalid_argument);
}

TEST_CASE("sharpness family oracle") {
  const ClosedFormSpectrum f1 = oracle_firstsharp(1);
  CHECK(f1(0.0).lo == 0.0);
  CHECK(f1(1.0).lo == doctest::Approx(1.0).epsilon(1e-15));
  const ClosedFormSpectrum f2 = oracle_firstsharp(2);
  CHECK(f2(0.5).lo == doctest::Approx(1.0).epsilon(1e-15));
  check_shape(f1);
}

TEST_CASE("embedding transport takes the minimum") {
  const ClosedFormSpectrum base = oracle_riesz(0.8, 3);
  const ClosedFormSpectrum moved = oracle_embedding_transport(base, 1);
  for (double th : {0.1, 0.5, 1.0}) {
    const double expect = std::min(th * 1.0, base(th).lo);
    CHECK(moved(th).lo == doctest::Approx(expect).epsilon(1e-12));
  }
  // a linear base under k >= 1 transport is a fixed point
  const ClosedFormSpectrum line =
      oracle_embedding_transport(oracle_embedded_cube(1, 2), 3);
  for (double th : {0.2, 0.9})
    CHECK(line(th).lo == doctest::Approx(th).epsilon(1e-12));
}
