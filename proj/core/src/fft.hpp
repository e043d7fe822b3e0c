#pragma once

#include <complex>
#include <vector>

namespace fspec::detail {

// In-place radix-2 decimation-in-time FFT with the e^{-2 pi i kn/N} sign
// convention; a.size() must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a);

}  // namespace fspec::detail
