#include "fspec/descriptor.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fspec {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

double need_number(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(path, std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::vector<double> need_vector(const json& j, const std::string& path,
                                const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(path, std::string("missing array field '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) fail(path, std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

Vec to_vec(const json& arr, const std::string& path) {
  if (!arr.is_array() || arr.size() < 1 || arr.size() > kMaxDim)
    fail(path, "expected an array of 1 to 3 coordinates");
  Vec v{};
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(path, "non-numeric coordinate");
    v[i] = arr[i].get<double>();
  }
  return v;
}

MeasureFamily parse_family(const json& j, const std::string& path);

MeasureFamily parse_atomic(const json& j, const std::string& path) {
  AtomicMeasure m;
  m.dim = int(need_number(j, path, "dim"));
  if (!j.contains("points") || !j["points"].is_array()) fail(path, "missing 'points'");
  for (const auto& p : j["points"]) m.points.push_back(to_vec(p, path + ".points"));
  m.weights = need_vector(j, path, "weights");
  return m;
}

MeasureFamily parse_density(const json& j, const std::string& path) {
  DensityMeasure m;
  m.dim = int(need_number(j, path, "dim"));
  auto cells = need_vector(j, path, "cells");
  if (cells.empty() || cells.size() > 2) fail(path, "'cells' needs 1 or 2 entries");
  m.cells[0] = std::size_t(cells[0]);
  m.cells[1] = cells.size() > 1 ? std::size_t(cells[1]) : 1;
  m.cell_size = need_number(j, path, "cell_size");
  if (j.contains("origin")) {
    auto o = need_vector(j, path, "origin");
    for (std::size_t i = 0; i < o.size() && i < 2; ++i) m.origin[i] = o[i];
  }
  m.values = need_vector(j, path, "values");
  return m;
}

MeasureFamily parse_selfsimilar(const json& j, const std::string& path) {
  SelfSimilarMeasure m;
  m.ratio = need_number(j, path, "ratio");
  m.translations = need_vector(j, path, "translations");
  m.weights = need_vector(j, path, "weights");
  return m;
}

MeasureFamily parse_riesz(const json& j, const std::string& path) {
  RieszProductMeasure m;
  if (j.contains("a") || j.contains("lambda")) {
    // geometric shorthand: coefficients a, a, ... at lambda, lambda^2, ...
    double a = need_number(j, path, "a");
    double lam = need_number(j, path, "lambda");
    int count = int(need_number(j, path, "count"));
    if (lam < 3.0 || lam != std::floor(lam))
      fail(path, "'lambda' must be an integer >= 3");
    if (count < 1 || std::pow(lam, count) > 9e15) fail(path, "bad 'count'");
    std::int64_t f = std::int64_t(lam);
    for (int k = 0; k < count; ++k) {
      m.coefficients.push_back(a);
      m.frequencies.push_back(f);
      if (k + 1 < count) f *= std::int64_t(lam);
    }
    return m;
  }
  m.coefficients = need_vector(j, path, "coefficients");
  if (!j.contains("frequencies") || !j["frequencies"].is_array())
    fail(path, "missing 'frequencies'");
  for (const auto& v : j["frequencies"]) {
    if (!v.is_number_integer()) fail(path, "frequencies must be integers");
    m.frequencies.push_back(v.get<std::int64_t>());
  }
  return m;
}

MeasureFamily parse_embedded(const json& j, const std::string& path) {
  EmbeddedMeasure m;
  m.dim = int(need_number(j, path, "dim"));
  if (!j.contains("base")) fail(path, "missing 'base'");
  auto base = std::make_shared<Measure>();
  base->family = parse_family(j["base"], path + ".base");
  m.base = base;
  if (!j.contains("frame") || !j["frame"].is_array()) fail(path, "missing 'frame'");
  for (const auto& col : j["frame"]) m.frame.push_back(to_vec(col, path + ".frame"));
  if (j.contains("offset")) m.offset = to_vec(j["offset"], path + ".offset");
  return m;
}

MeasureFamily parse_convolution(const json& j, const std::string& path) {
  ConvolutionMeasure m;
  if (j.contains("factor")) {
    // power shorthand: k identical factors
    int k = int(need_number(j, path, "power"));
    if (k < 2) fail(path, "'power' must be >= 2");
    auto f = std::make_shared<Measure>();
    f->family = parse_family(j["factor"], path + ".factor");
    m.factors.assign(std::size_t(k), f);
    return m;
  }
  if (!j.contains("factors") || !j["factors"].is_array())
    fail(path, "missing 'factors'");
  std::size_t i = 0;
  for (const auto& fj : j["factors"]) {
    auto f = std::make_shared<Measure>();
    f->family = parse_family(fj, path + ".factors[" + std::to_string(i++) + "]");
    m.factors.push_back(f);
  }
  return m;
}

MeasureFamily parse_family(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    fail(path, "descriptor must be an object with a 'family' string");
  std::string fam = j["family"].get<std::string>();
  if (fam == "atomic") return parse_atomic(j, path);
  if (fam == "density") return parse_density(j, path);
  if (fam == "selfsimilar") return parse_selfsimilar(j, path);
  if (fam == "riesz") return parse_riesz(j, path);
  if (fam == "curve") {
    CurveMeasure m;
    m.exponent = j.contains("p") ? need_number(j, path, "p")
                                 : need_number(j, path, "exponent");
    return m;
  }
  if (fam == "embedded") return parse_embedded(j, path);
  if (fam == "convolution") return parse_convolution(j, path);
  if (fam == "firstsharp") {
    int dim = j.contains("dim") ? int(need_number(j, path, "dim")) : 1;
    int nmax = int(need_number(j, path, "n_max"));
    std::size_t cells = j.contains("cells_per_unit")
                            ? std::size_t(need_number(j, path, "cells_per_unit"))
                            : (std::size_t{1} << (nmax + 3));
    try {
      return firstsharp_density(dim, nmax, cells).family;
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  fail(path, "unknown family '" + fam + "'");
}

json emit_family(const MeasureFamily& fam);

struct EmitVisitor {
  json operator()(const AtomicMeasure& m) const {
    json j;
    j["family"] = "atomic";
    j["dim"] = m.dim;
    json pts = json::array();
    for (const auto& p : m.points) {
      json row = json::array();
      for (int i = 0; i < m.dim; ++i) row.push_back(p[i]);
      pts.push_back(row);
    }
    j["points"] = pts;
    j["weights"] = m.weights;
    return j;
  }
  json operator()(const DensityMeasure& m) const {
    json j;
    j["family"] = "density";
    j["dim"] = m.dim;
    j["cells"] = m.dim == 1 ? json::array({m.cells[0]})
                            : json::array({m.cells[0], m.cells[1]});
    j["cell_size"] = m.cell_size;
    j["origin"] = m.dim == 1 ? json::array({m.origin[0]})
                             : json::array({m.origin[0], m.origin[1]});
    j["values"] = m.values;
    return j;
  }
  json operator()(const SelfSimilarMeasure& m) const {
    json j;
    j["family"] = "selfsimilar";
    j["ratio"] = m.ratio;
    j["translations"] = m.translations;
    j["weights"] = m.weights;
    return j;
  }
  json operator()(const RieszProductMeasure& m) const {
    json j;
    j["family"] = "riesz";
    j["coefficients"] = m.coefficients;
    j["frequencies"] = m.frequencies;
    return j;
  }
  json operator()(const CurveMeasure& m) const {
    json j;
    j["family"] = "curve";
    j["exponent"] = m.exponent;
    return j;
  }
  json operator()(const EmbeddedMeasure& m) const {
    json j;
    j["family"] = "embedded";
    j["dim"] = m.dim;
    j["base"] = emit_family(m.base->family);
    json frame = json::array();
    for (const auto& col : m.frame) {
      json row = json::array();
      for (int i = 0; i < m.dim; ++i) row.push_back(col[i]);
      frame.push_back(row);
    }
    j["frame"] = frame;
    json off = json::array();
    for (int i = 0; i < m.dim; ++i) off.push_back(m.offset[i]);
    j["offset"] = off;
    return j;
  }
  json operator()(const ConvolutionMeasure& m) const {
    json j;
    j["family"] = "convolution";
    json factors = json::array();
    for (const auto& f : m.factors) factors.push_back(emit_family(f->family));
    j["factors"] = factors;
    return j;
  }
};

json emit_family(const MeasureFamily& fam) { return std::visit(EmitVisitor{}, fam); }

}  // namespace

Measure parse_measure(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("descriptor is not valid JSON: ") + e.what());
  }
  Measure m;
  m.family = parse_family(j, "measure");
  if (j.contains("label") && j["label"].is_string())
    m.label = j["label"].get<std::string>();
  if (j.contains("holder")) m.holder_exponent = need_number(j, "measure", "holder");
  auto report = validate(m);
  if (!report.ok()) throw ParseError("invalid measure:\n" + report.str());
  m.origin = std::make_shared<const std::string>(text);
  return m;
}

Measure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open measure file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

std::string emit_measure(const Measure& m) {
  if (m.origin) return *m.origin;
  return canonical_descriptor(m);
}

std::string canonical_descriptor(const Measure& m) {
  json j = emit_family(m.family);
  if (!m.label.empty()) j["label"] = m.label;
  if (m.holder_exponent) j["holder"] = *m.holder_exponent;
  return j.dump();
}

}  // namespace fspec
