#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fspec/descriptor.hpp"
#include "fspec/measures.hpp"

using namespace fspec;

namespace {

const char* kCantor =
    R"({"family":"selfsimilar","ratio":0.3333333333333333,)"
    R"("translations":[0.0,0.6666666666666666],"weights":[0.5,0.5]})";

}  // namespace

TEST_CASE("every family round-trips through its canonical form") {
  const std::vector<std::string> descriptors = {
      R"({"family":"atomic","dim":2,"points":[[0.25,0.5],[0.75,0.1]],"weights":[0.4,0.6]})",
      R"({"family":"density","dim":1,"cells":[4],"cell_size":0.25,"values":[0.5,1.5,1.0,1.0]})",
      kCantor,
      R"({"family":"riesz","coefficients":[0.8,0.8],"frequencies":[3,9]})",
      R"({"family":"curve","exponent":4})",
      R"({"family":"embedded","dim":2,"base":)" + std::string(kCantor) +
          R"(,"frame":[[0.6,0.8]],"offset":[0.1,-0.2]})",
      R"({"family":"convolution","factors":[)" + std::string(kCantor) + "," +
          kCantor + "]}",
      R"({"family":"firstsharp","n_max":3,"cells_per_unit":64})",
  };
  for (const auto& text : descriptors) {
    CAPTURE(text);
    const Measure once = parse_measure(text);
    const std::string canon = canonical_descriptor(once);
    const Measure twice = parse_measure(canon);
    CHECK(canonical_descriptor(twice) == canon);
    CHECK(twice.dim() == once.dim());
    CHECK(twice.mass() == doctest::Approx(once.mass()).epsilon(1e-15));
  }
}

TEST_CASE("emit preserves the original descriptor text") {
  const std::string spaced =
      "{\n  \"family\": \"curve\",\n  \"p\": 4\n}\n";
  const Measure m = parse_measure(spaced);
  CHECK(emit_measure(m) == spaced);

  // measures built in code have no original text: the canonical form is used
  const Measure built = make_measure(CurveMeasure{4.0});
  CHECK(emit_measure(built) == canonical_descriptor(built));
}

TEST_CASE("generator shorthands expand to explicit parameters") {
  const Measure geo =
      parse_measure(R"({"family":"riesz","a":0.8,"lambda":3,"count":3})");
  const auto& rp = std::get<RieszProductMeasure>(geo.family);
  CHECK(rp.coefficients == std::vector<double>{0.8, 0.8, 0.8});
  CHECK(rp.frequencies == std::vector<std::int64_t>{3, 9, 27});
  const Measure explicit_form = parse_measure(
      R"({"family":"riesz","coefficients":[0.8,0.8,0.8],"frequencies":[3,9,27]})");
  CHECK(canonical_descriptor(geo) == canonical_descriptor(explicit_form));

  // curve accepts "p" for the exponent
  CHECK(canonical_descriptor(parse_measure(R"({"family":"curve","p":4})")) ==
        canonical_descriptor(
            parse_measure(R"({"family":"curve","exponent":4})")));

  // convolution powers expand to repeated factors
  const Measure square = parse_measure(
      R"({"family":"convolution","factor":)" + std::string(kCantor) +
      R"(,"power":2})");
  const auto& conv = std::get<ConvolutionMeasure>(square.family);
  CHECK(conv.factors.size() == 2);
  const Measure listed = parse_measure(
      R"({"family":"convolution","factors":[)" + std::string(kCantor) + "," +
      kCantor + "]}");
  CHECK(canonical_descriptor(square) == canonical_descriptor(listed));

  // the sharpness density defaults to the smallest admissible grid
  CHECK(canonical_descriptor(
            parse_measure(R"({"family":"firstsharp","n_max":3})")) ==
        canonical_descriptor(parse_measure(
            R"({"family":"firstsharp","n_max":3,"cells_per_unit":64})")));
}

TEST_CASE("labels and the smoothness exponent ride along") {
  const Measure m = parse_measure(
      R"({"family":"curve","exponent":2.5,"label":"lifted parabola","holder":0.5})");
  CHECK(m.label == "lifted parabola");
  REQUIRE(m.holder_exponent.has_value());
  CHECK(*m.holder_exponent == 0.5);
  const std::string canon = canonical_descriptor(m);
  CHECK(canon.find("lifted parabola") != std::string::npos);
  CHECK(canon.find("holder") != std::string::npos);
  const Measure again = parse_measure(canon);
  CHECK(canonical_descriptor(again) == canon);
}

TEST_CASE("malformed descriptors are rejected") {
  CHECK_THROWS_AS(parse_measure("not json"), ParseError);
  CHECK_THROWS_AS(parse_measure("5"), ParseError);
  CHECK_THROWS_AS(parse_measure(R"({"family":"nosuch"})"), ParseError);
  // missing fields
  CHECK_THROWS_AS(parse_measure(R"({"family":"selfsimilar","ratio":0.5})"),
                  ParseError);
  // geometric shorthand needs an integer ratio of at least 3
  CHECK_THROWS_AS(
      parse_measure(R"({"family":"riesz","a":0.8,"lambda":2,"count":4})"),
      ParseError);
  // frequencies too close together fail validation
  CHECK_THROWS_AS(
      parse_measure(
          R"({"family":"riesz","coefficients":[0.5,0.5],"frequencies":[3,5]})"),
      ParseError);
  // weights must sum to one
  CHECK_THROWS_AS(
      parse_measure(
          R"({"family":"selfsimilar","ratio":0.5,"translations":[0,0.5],"weights":[0.5,0.6]})"),
      ParseError);
  CHECK_THROWS_AS(parse_measure(R"({"family":"curve","exponent":1.0})"),
                  ParseError);
  // grid sizes must be powers of two with margin over the top frequency
  CHECK_THROWS_AS(
      parse_measure(R"({"family":"firstsharp","n_max":3,"cells_per_unit":100})"),
      ParseError);
  CHECK_THROWS_AS(parse_measure(R"({"family":"convolution","factor":)" +
                                std::string(kCantor) + R"(,"power":1})"),
                  ParseError);
}

TEST_CASE("load_measure reads descriptor files") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "fspec-descriptor-test.json";
  {
    std::ofstream out(path);
    out << kCantor;
  }
  const Measure loaded = load_measure(path.string());
  CHECK(canonical_descriptor(loaded) ==
        canonical_descriptor(parse_measure(kCantor)));
  fs::remove(path);

  CHECK_THROWS_AS(load_measure((fs::temp_directory_path() /
                                "fspec-no-such-file.json").string()),
                  ParseError);
}
