#pragma once

#include <stdexcept>
#include <string>

#include "fspec/measures.hpp"

// JSON descriptors for measures.  parse_measure accepts the family schemas
// documented in the README (plus generator shorthands for geometric Riesz
// products, convolution powers and the sharpness density) and validates the
// result; emit_measure reproduces the original descriptor when the measure
// came from one, and otherwise prints the canonical form.

namespace fspec {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Measure parse_measure(const std::string& json_text);
Measure load_measure(const std::string& path);  // file convenience wrapper

std::string emit_measure(const Measure& m);

// Canonical parameter dump, independent of descriptor formatting; used for
// sample-cache keys.
std::string canonical_descriptor(const Measure& m);

}  // namespace fspec
