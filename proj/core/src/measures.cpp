#include "fspec/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fspec {

double SupportBox::radius() const {
  double r2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    double a = std::max(std::abs(axis[i].lo), std::abs(axis[i].hi));
    r2 += a * a;
  }
  return std::sqrt(r2);
}

double SupportBox::diameter() const {
  double d2 = 0.0;
  for (int i = 0; i < dim; ++i) d2 += axis[i].length() * axis[i].length();
  return std::sqrt(d2);
}

namespace {

struct DimVisitor {
  int operator()(const AtomicMeasure& m) const { return m.dim; }
  int operator()(const DensityMeasure& m) const { return m.dim; }
  int operator()(const SelfSimilarMeasure&) const { return 1; }
  int operator()(const RieszProductMeasure&) const { return 1; }
  int operator()(const CurveMeasure&) const { return 2; }
  int operator()(const EmbeddedMeasure& m) const { return m.dim; }
  int operator()(const ConvolutionMeasure& m) const {
    return m.factors.empty() ? 0 : m.factors.front()->dim();
  }
};

struct MassVisitor {
  double operator()(const AtomicMeasure& m) const {
    return std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
  }
  double operator()(const DensityMeasure& m) const {
    double cell = std::pow(m.cell_size, m.dim);
    return cell * std::accumulate(m.values.begin(), m.values.end(), 0.0);
  }
  double operator()(const SelfSimilarMeasure& m) const {
    return std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
  }
  double operator()(const RieszProductMeasure&) const { return 1.0; }
  double operator()(const CurveMeasure&) const { return 1.0; }
  double operator()(const EmbeddedMeasure& m) const { return m.base->mass(); }
  double operator()(const ConvolutionMeasure& m) const {
    double prod = 1.0;
    for (const auto& f : m.factors) prod *= f->mass();
    return prod;
  }
};

struct SupportVisitor {
  SupportBox operator()(const AtomicMeasure& m) const {
    SupportBox box;
    box.dim = m.dim;
    for (int i = 0; i < m.dim; ++i) {
      Interval iv{m.points.front()[i], m.points.front()[i]};
      for (const auto& p : m.points) {
        iv.lo = std::min(iv.lo, p[i]);
        iv.hi = std::max(iv.hi, p[i]);
      }
      box.axis[i] = iv;
    }
    return box;
  }
  SupportBox operator()(const DensityMeasure& m) const {
    SupportBox box;
    box.dim = m.dim;
    for (int i = 0; i < m.dim; ++i)
      box.axis[i] = {m.origin[i], m.origin[i] + m.cell_size * double(m.cells[i])};
    return box;
  }
  SupportBox operator()(const SelfSimilarMeasure& m) const {
    auto [lo, hi] = std::minmax_element(m.translations.begin(), m.translations.end());
    SupportBox box;
    box.dim = 1;
    box.axis[0] = {*lo / (1.0 - m.ratio), *hi / (1.0 - m.ratio)};
    return box;
  }
  SupportBox operator()(const RieszProductMeasure&) const {
    return SupportBox{1, {Interval{0.0, 1.0}}};
  }
  SupportBox operator()(const CurveMeasure&) const {
    return SupportBox{2, {Interval{0.0, 1.0}, Interval{0.0, 1.0}}};
  }
  SupportBox operator()(const EmbeddedMeasure& m) const {
    SupportBox base = m.base->support();
    SupportBox box;
    box.dim = m.dim;
    // Image of a box under an affine map: accumulate per-axis interval sums.
    for (int i = 0; i < m.dim; ++i) {
      double lo = m.offset[i], hi = m.offset[i];
      for (int j = 0; j < base.dim; ++j) {
        double a = m.frame[j][i] * base.axis[j].lo;
        double b = m.frame[j][i] * base.axis[j].hi;
        lo += std::min(a, b);
        hi += std::max(a, b);
      }
      box.axis[i] = {lo, hi};
    }
    return box;
  }
  SupportBox operator()(const ConvolutionMeasure& m) const {
    SupportBox box = m.factors.front()->support();
    for (std::size_t k = 1; k < m.factors.size(); ++k) {
      SupportBox next = m.factors[k]->support();
      for (int i = 0; i < box.dim; ++i) {
        box.axis[i].lo += next.axis[i].lo;
        box.axis[i].hi += next.axis[i].hi;
      }
    }
    return box;
  }
};

}  // namespace

int Measure::dim() const { return std::visit(DimVisitor{}, family); }
double Measure::mass() const { return std::visit(MassVisitor{}, family); }
SupportBox Measure::support() const { return std::visit(SupportVisitor{}, family); }

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.where << ": " << v.message << "\n";
  return os.str();
}

namespace {

void check(std::vector<Violation>& out, bool ok, const std::string& where,
           const std::string& msg) {
  if (!ok) out.push_back({where, msg});
}

void validate_family(const Measure& m, const std::string& where,
                     std::vector<Violation>& out);

struct ValidateVisitor {
  const std::string& where;
  std::vector<Violation>& out;

  void operator()(const AtomicMeasure& m) const {
    check(out, m.dim >= 1 && m.dim <= kMaxDim, where, "dim must be 1, 2 or 3");
    check(out, !m.points.empty(), where, "needs at least one point");
    check(out, m.points.size() == m.weights.size(), where,
          "points and weights differ in length");
    double total = 0.0;
    for (double w : m.weights) {
      check(out, w >= 0.0 && std::isfinite(w), where, "weights must be >= 0");
      total += w;
      if (w < 0.0) break;
    }
    check(out, total > 0.0, where, "total mass must be positive");
  }

  void operator()(const DensityMeasure& m) const {
    check(out, m.dim == 1 || m.dim == 2, where, "grid densities support dim 1 or 2");
    check(out, m.cell_size > 0.0, where, "cell_size must be positive");
    check(out, m.cells[0] >= 1 && m.cells[1] >= 1, where, "needs at least one cell");
    if (m.dim == 1)
      check(out, m.cells[1] == 1, where, "one-dimensional grid must have cells[1] == 1");
    check(out, m.values.size() == m.cells[0] * m.cells[1], where,
          "values length does not match the grid");
    bool nonneg = std::all_of(m.values.begin(), m.values.end(),
                              [](double v) { return v >= 0.0 && std::isfinite(v); });
    check(out, nonneg, where, "density values must be finite and >= 0");
  }

  void operator()(const SelfSimilarMeasure& m) const {
    check(out, m.ratio > 0.0 && m.ratio < 1.0, where, "ratio must lie in (0, 1)");
    check(out, !m.translations.empty(), where, "needs at least one translation");
    check(out, m.translations.size() == m.weights.size(), where,
          "translations and weights differ in length");
    double total = 0.0;
    for (double w : m.weights) {
      check(out, w >= 0.0 && std::isfinite(w), where, "weights must be >= 0");
      total += w;
      if (w < 0.0) break;
    }
    check(out, std::abs(total - 1.0) <= 1e-12, where, "weights must sum to 1");
  }

  void operator()(const RieszProductMeasure& m) const {
    check(out, !m.coefficients.empty(), where, "needs at least one factor");
    check(out, m.coefficients.size() == m.frequencies.size(), where,
          "coefficients and frequencies differ in length");
    for (double a : m.coefficients)
      check(out, std::abs(a) <= 1.0 && std::isfinite(a), where, "|a_j| must be <= 1");
    for (std::size_t j = 0; j < m.frequencies.size(); ++j) {
      check(out, m.frequencies[j] >= 1, where, "frequencies must be positive integers");
      if (j > 0)
        check(out, m.frequencies[j] >= 3 * m.frequencies[j - 1], where,
              "frequencies must be lacunary: lambda_{j+1} >= 3 lambda_j");
    }
  }

  void operator()(const CurveMeasure& m) const {
    check(out, m.exponent > 1.0 && std::isfinite(m.exponent), where,
          "curve exponent must be > 1");
  }

  void operator()(const EmbeddedMeasure& m) const {
    if (!m.base) {
      out.push_back({where, "embedded measure has no base"});
      return;
    }
    int k = m.base->dim();
    check(out, m.dim > k && m.dim <= kMaxDim, where,
          "ambient dimension must exceed the base dimension");
    check(out, int(m.frame.size()) == k, where, "frame needs one column per base axis");
    for (std::size_t i = 0; i < m.frame.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double dot = 0.0;
        for (int c = 0; c < kMaxDim; ++c) dot += m.frame[i][c] * m.frame[j][c];
        double want = (i == j) ? 1.0 : 0.0;
        check(out, std::abs(dot - want) <= 1e-12, where, "frame must be orthonormal");
      }
      for (int c = m.dim; c < kMaxDim; ++c)
        check(out, m.frame[i][c] == 0.0, where, "frame has entries beyond dim");
    }
    validate_family(*m.base, where + ".base", out);
  }

  void operator()(const ConvolutionMeasure& m) const {
    check(out, m.factors.size() >= 2, where, "convolution needs at least two factors");
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const auto& f = m.factors[i];
      std::string sub = where + ".factor[" + std::to_string(i) + "]";
      if (!f) {
        out.push_back({sub, "factor is missing"});
        continue;
      }
      if (i > 0 && m.factors.front() && f->dim() != m.factors.front()->dim())
        out.push_back({sub, "factors must share one dimension"});
      validate_family(*f, sub, out);
    }
  }
};

void validate_family(const Measure& m, const std::string& where,
                     std::vector<Violation>& out) {
  if (m.holder_exponent)
    check(out, *m.holder_exponent > 0.0 && *m.holder_exponent <= 1.0, where,
          "holder exponent must lie in (0, 1]");
  std::visit(ValidateVisitor{where, out}, m.family);
}

}  // namespace

ValidationReport validate(const Measure& m) {
  ValidationReport report;
  validate_family(m, m.label.empty() ? "measure" : m.label, report.violations);
  return report;
}

Measure firstsharp_density(int dim, int n_max, std::size_t cells_per_unit) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("firstsharp: dim must be 1 or 2");
  if (n_max < 1) throw std::invalid_argument("firstsharp: n_max must be >= 1");
  bool pow2 = cells_per_unit > 0 && (cells_per_unit & (cells_per_unit - 1)) == 0;
  // The density contains frequency 2^n_max; midpoint sampling is exact only
  // below Nyquist, and we insist on a margin of 4x.
  if (!pow2 || cells_per_unit <= (std::size_t{1} << (n_max + 2)))
    throw std::invalid_argument(
        "firstsharp: cells_per_unit must be a power of two above 2^(n_max + 2)");

  std::vector<double> line(cells_per_unit);
  for (std::size_t i = 0; i < cells_per_unit; ++i) {
    double x = (double(i) + 0.5) / double(cells_per_unit);
    double f = 2.0;
    for (int n = 1; n <= n_max; ++n)
      f += std::sin(2.0 * M_PI * std::ldexp(1.0, n) * x) / (double(n) * double(n));
    line[i] = f;
  }

  DensityMeasure density;
  density.dim = dim;
  density.cell_size = 1.0 / double(cells_per_unit);
  density.cells = {cells_per_unit, dim == 2 ? cells_per_unit : 1};
  if (dim == 1) {
    density.values = std::move(line);
  } else {
    density.values.resize(cells_per_unit * cells_per_unit);
    for (std::size_t iy = 0; iy < cells_per_unit; ++iy)
      for (std::size_t ix = 0; ix < cells_per_unit; ++ix)
        density.values[iy * cells_per_unit + ix] = line[iy] * line[ix];
  }

  Measure m;
  m.family = std::move(density);
  m.label = "sharpness density d=" + std::to_string(dim) + " n=" + std::to_string(n_max);
  return m;
}

Measure make_measure(MeasureFamily fam, std::string label) {
  Measure m;
  m.family = std::move(fam);
  m.label = std::move(label);
  return m;
}

Measure embed_in(Measure base, int ambient_dim, const std::vector<Vec>& frame,
                 const Vec& offset) {
  EmbeddedMeasure emb;
  emb.base = std::make_shared<Measure>(std::move(base));
  emb.dim = ambient_dim;
  emb.frame = frame;
  emb.offset = offset;
  Measure m;
  m.label = emb.base->label.empty() ? "" : emb.base->label + " embedded";
  m.family = std::move(emb);
  return m;
}

Measure self_convolution(Measure m, int k) {
  if (k < 1) throw std::invalid_argument("self_convolution: k must be >= 1");
  if (k == 1) return m;
  ConvolutionMeasure conv;
  auto shared = std::make_shared<Measure>(std::move(m));
  conv.factors.assign(std::size_t(k), shared);
  Measure out;
  out.label = shared->label.empty() ? "" : shared->label + " *" + std::to_string(k);
  out.family = std::move(conv);
  return out;
}

}  // namespace fspec
