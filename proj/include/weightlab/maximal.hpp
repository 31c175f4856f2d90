#pragma once

#include "weightlab/grid.hpp"

namespace weightlab {

/// How the supremum over windows is evaluated.
///
/// `fast` uses summed-area tables plus a block range-maximum per window size
/// (O(N^2) in 1D, O(N^3) in 2D). `oracle` enumerates every window, sums it
/// directly and scatters the average onto the cells it covers.
enum class MaximalMethod { fast, oracle };

struct MaximalOutput {
  SampledFunction result;
  MaximalMethod method;
};

// Windows are grid-aligned intervals (1D) or squares (2D) clipped to the box;
// f is treated as zero outside. Every result is >= |f| cellwise since the
// single cell is a window.

/// Mf(c) = max over windows Q containing c of |Q|^-1 sum_Q |f|.
SampledFunction hl_maximal(const SampledFunction& f, MaximalMethod method = MaximalMethod::fast);
MaximalOutput hl_maximal_output(const SampledFunction& f, MaximalMethod method);

/// M_{u0} f(c) = max over windows Q containing c of u0(Q)^-1 sum_Q |f| u0.
SampledFunction weighted_maximal(const SampledFunction& f, const Weight& u0,
                                 MaximalMethod method = MaximalMethod::fast);

/// M_mu f = M(|f|^{1/mu})^mu for 0 < mu <= 1; mu == 1 is exactly hl_maximal.
SampledFunction power_maximal(const SampledFunction& f, double mu, MaximalMethod method = MaximalMethod::fast);

}  // namespace weightlab
