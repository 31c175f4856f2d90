#pragma once

#include <complex>
#include <cstddef>

namespace weightlab::detail {

/// Unnormalized in-place DFT: sign -1 is sum x_j e^{-2 pi i jk/n}, +1 the inverse kernel.
/// 2D arrays are n x n, row-major.
void fft_inplace(std::complex<double>* data, int dim, std::size_t n, int sign);

bool is_power_of_two(std::size_t n);

}  // namespace weightlab::detail
