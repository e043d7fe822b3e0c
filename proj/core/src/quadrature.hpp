#pragma once

#include <array>
#include <vector>

namespace fspec::detail {

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// on the Legendre polynomial (accurate to ~1e-15 for the sizes used here).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// The 16-point rule, computed once; workhorse of the oscillatory quadrature.
const std::array<double, 16>& gl16_nodes();
const std::array<double, 16>& gl16_weights();

}  // namespace fspec::detail
