#pragma once

#include <string>

namespace fspec {

// Decimal rendering used by every CSV the tools emit: 17 significant digits
// round-trips any double, and the fixed format keeps outputs byte-identical
// across runs and thread counts.
std::string csv_double(double v);

}  // namespace fspec
