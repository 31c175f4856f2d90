#pragma once

// Window sums over grid-aligned intervals / squares. Internal to the library.

#include <cstddef>
#include <span>
#include <vector>

namespace weightlab::detail {

/// Summed-area table in extended precision. 1D: size n+1; 2D: (n+1)^2.
class PrefixTable {
 public:
  PrefixTable(std::span<const double> values, int dim, std::size_t n);

  /// Sum over the window with lower corner (x, y) and side s (y ignored in 1D).
  long double window(std::size_t x, std::size_t y, std::size_t s) const {
    if (dim_ == 1) return table_[x + s] - table_[x];
    const std::size_t w = n_ + 1;
    return table_[(x + s) * w + (y + s)] - table_[x * w + (y + s)] - table_[(x + s) * w + y] + table_[x * w + y];
  }

 private:
  int dim_;
  std::size_t n_;
  std::vector<long double> table_;
};

/// For every cell c in [0, n) store max(out[c], max A[lo..hi]) where
/// [lo, hi] = [max(0, c-s+1), min(c, m-1)] and A has m = n-s+1 entries
/// read with stride `a_stride`. Output written with stride `out_stride`.
void range_max_scatter(const double* a, std::size_t a_stride, std::size_t n, std::size_t s, double* out,
                       std::size_t out_stride, std::vector<double>& scratch_prefix,
                       std::vector<double>& scratch_suffix);

}  // namespace weightlab::detail
