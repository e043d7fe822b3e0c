#include <cmath>
#include <complex>
#include <stack>
#include <utility>

#include "fspec/transform.hpp"
#include "quadrature.hpp"

namespace fspec {
namespace detail {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) {
        // one final polish with the updated t
        p0 = 1.0;
        p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
          p0 = p1;
          p1 = p2;
        }
        dp = double(n) * (t * p1 - p0) / (t * t - 1.0);
        break;
      }
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

namespace {
struct GL16 {
  std::array<double, 16> x{}, w{};
  GL16() {
    std::vector<double> xs, ws;
    gauss_legendre(16, xs, ws);
    for (int i = 0; i < 16; ++i) {
      x[i] = xs[i];
      w[i] = ws[i];
    }
  }
};
const GL16& gl16() {
  static const GL16 rule;
  return rule;
}
}  // namespace

const std::array<double, 16>& gl16_nodes() { return gl16().x; }
const std::array<double, 16>& gl16_weights() { return gl16().w; }

}  // namespace detail

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Phase and derivatives of exp(i psi), psi(x) = -2 pi (z1 x + z2 x^p).
struct CurvePhase {
  double p, z1, z2;
  double psi(double x) const { return -kTwoPi * (z1 * x + z2 * std::pow(x, p)); }
  double d1(double x) const {
    return -kTwoPi * (z1 + p * z2 * std::pow(x, p - 1.0));
  }
  double d2(double x) const {
    return -kTwoPi * p * (p - 1.0) * z2 * std::pow(x, p - 2.0);
  }
  double d3(double x) const {
    return -kTwoPi * p * (p - 1.0) * (p - 2.0) * z2 * std::pow(x, p - 3.0);
  }
  // d/dx of psi''/psi'^3, the density of the integration-by-parts remainder
  double vder(double x) const {
    double a = d1(x), b = d2(x), c = d3(x);
    double a2 = a * a;
    return c / (a2 * a) - 3.0 * b * b / (a2 * a2);
  }
  std::complex<double> boundary(double x) const {
    double a = d1(x), b = d2(x);
    std::complex<double> amp(-b / (a * a * a), -1.0 / a);  // 1/(i a) - b/a^3
    double ph = psi(x);
    return std::complex<double>(std::cos(ph), std::sin(ph)) * amp;
  }
};

std::complex<double> gl16_segment(const CurvePhase& f, double a, double b) {
  const auto& xs = detail::gl16_nodes();
  const auto& ws = detail::gl16_weights();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::complex<double> acc = 0.0;
  for (int i = 0; i < 16; ++i) {
    double ph = f.psi(mid + half * xs[i]);
    acc += ws[i] * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return acc * half;
}

}  // namespace

std::complex<double> unit_interval_transform(double u) {
  double au = M_PI * u;
  double s = std::abs(au) < 1e-8 ? 1.0 - au * au / 6.0 : std::sin(au) / au;
  return std::complex<double>(std::cos(au), -std::sin(au)) * s;
}

TransformValue eval_curve_transform(double p, double z1, double z2, double tol) {
  // Pure linear phase: closed form.
  if (std::abs(z2) * kTwoPi <= 1e-14 * std::max(1.0, std::abs(z1))) {
    return {unit_interval_transform(z1), kTwoPi * std::abs(z2) + 1e-16};
  }

  CurvePhase f{p, z1, z2};
  std::stack<std::pair<double, double>> work;

  // psi'(x) = -2 pi (z1 + p z2 x^{p-1}) has at most one root in (0, 1);
  // splitting there makes |psi'| monotone on each piece, which both the
  // cycle count and the integration-by-parts shortcut rely on.
  double s = -z1 / (p * z2);
  double xstar = s > 0.0 ? std::pow(s, 1.0 / (p - 1.0)) : -1.0;
  if (xstar > 1e-12 && xstar < 1.0 - 1e-12) {
    work.push({xstar, 1.0});
    work.push({0.0, xstar});
  } else {
    work.push({0.0, 1.0});
  }

  constexpr double kGLCycles = 2.5;
  constexpr long kMaxLeaves = 200000;

  std::complex<double> result = 0.0;
  double err = 0.0;
  long leaves = 0;

  while (!work.empty()) {
    auto [a, b] = work.top();
    work.pop();
    double len = b - a;
    double cyc = std::abs(f.psi(b) - f.psi(a)) / kTwoPi;

    if (++leaves > kMaxLeaves) {
      // budget blown; keep a coarse value and say so in the bound
      result += gl16_segment(f, a, b);
      err += len;
      continue;
    }
    if (cyc <= kGLCycles || len <= 1e-13) {
      result += gl16_segment(f, a, b);
      err += len * 1e-15 * (1.0 + cyc * cyc);
      continue;
    }

    double da = f.d1(a), db = f.d1(b);
    if (a > 0.0 && da * db > 0.0) {
      double vd = std::max({std::abs(f.vder(a)), std::abs(f.vder(0.5 * (a + b))),
                            std::abs(f.vder(b))});
      double rb = 1.5 * len * vd;
      if (rb <= tol * len + 1e-18) {
        std::complex<double> ta = f.boundary(a), tb = f.boundary(b);
        result += tb - ta;
        err += rb + 4e-16 * (std::abs(ta) + std::abs(tb));
        continue;
      }
    }
    double m = 0.5 * (a + b);
    work.push({m, b});
    work.push({a, m});
  }
  return {result, err};
}

}  // namespace fspec
