#include "weightlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "windows.hpp"

namespace weightlab {

namespace detail {

PrefixTable::PrefixTable(std::span<const double> values, int dim, std::size_t n) : dim_(dim), n_(n) {
  if (dim == 1) {
    table_.assign(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) table_[i + 1] = table_[i] + static_cast<long double>(values[i]);
    return;
  }
  const std::size_t w = n + 1;
  table_.assign(w * w, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      row += static_cast<long double>(values[i * n + j]);
      table_[(i + 1) * w + (j + 1)] = table_[i * w + (j + 1)] + row;
    }
  }
}

void range_max_scatter(const double* a, std::size_t a_stride, std::size_t n, std::size_t s, double* out,
                       std::size_t out_stride, std::vector<double>& pre, std::vector<double>& suf) {
  const std::size_t m = n - s + 1;
  pre.resize(m);
  suf.resize(m);
  for (std::size_t start = 0; start < m; start += s) {
    const std::size_t end = std::min(start + s, m);  // exclusive
    double run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = start; i < end; ++i) {
      run = std::max(run, a[i * a_stride]);
      pre[i] = run;
    }
    run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = end; i-- > start;) {
      run = std::max(run, a[i * a_stride]);
      suf[i] = run;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t lo = c + 1 >= s ? c + 1 - s : 0;
    const std::size_t hi = std::min(c, m - 1);
    double best;
    if (lo / s != hi / s) {
      best = std::max(suf[lo], pre[hi]);
    } else if (lo % s == 0) {
      best = pre[hi];
    } else {
      // Only reachable when hi is clipped to the last start, which ends its block.
      best = suf[lo];
    }
    double& slot = out[c * out_stride];
    slot = std::max(slot, best);
  }
}

}  // namespace detail

namespace {

using detail::PrefixTable;

/// Cellwise max over windows of sum(num)/sum(den); den == nullptr means cell counts.
std::vector<double> window_ratio_max_fast(std::span<const double> num, const std::span<const double>* den, int dim,
                                          std::size_t n, std::vector<double> out) {
  const PrefixTable tn(num, dim, n);
  std::optional<PrefixTable> td;
  if (den) td.emplace(*den, dim, n);
  std::vector<double> pre, suf;
  if (dim == 1) {
    std::vector<double> a(n);
    for (std::size_t s = 1; s <= n; ++s) {
      const std::size_t m = n - s + 1;
      for (std::size_t x = 0; x < m; ++x) {
        const long double d = td ? td->window(x, 0, s) : static_cast<long double>(s);
        a[x] = static_cast<double>(tn.window(x, 0, s) / d);
      }
      detail::range_max_scatter(a.data(), 1, n, s, out.data(), 1, pre, suf);
    }
    return out;
  }
  std::vector<double> a(n * n), b(n * n);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s <= n; ++s) {
    const std::size_t m = n - s + 1;
    const long double area = static_cast<long double>(s) * static_cast<long double>(s);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        const long double d = td ? td->window(x, y, s) : area;
        a[x * m + y] = static_cast<double>(tn.window(x, y, s) / d);
      }
    }
    // Rows of b hold, for start row x, the max over admissible start columns.
    std::fill(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m * n), neg_inf);
    for (std::size_t x = 0; x < m; ++x) detail::range_max_scatter(&a[x * m], 1, n, s, &b[x * n], 1, pre, suf);
    for (std::size_t cy = 0; cy < n; ++cy) detail::range_max_scatter(&b[cy], n, n, s, &out[cy], n, pre, suf);
  }
  return out;
}

std::vector<double> window_ratio_max_oracle(std::span<const double> num, const std::span<const double>* den, int dim,
                                            std::size_t n, std::vector<double> out) {
  if (dim == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      long double sn = 0.0L, sd = 0.0L;
      for (std::size_t j = i; j < n; ++j) {
        sn += num[j];
        sd += den ? static_cast<long double>((*den)[j]) : 1.0L;
        const double avg = static_cast<double>(sn / sd);
        for (std::size_t c = i; c <= j; ++c) out[c] = std::max(out[c], avg);
      }
    }
    return out;
  }
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t x = 0; x + s <= n; ++x) {
      for (std::size_t y = 0; y + s <= n; ++y) {
        long double sn = 0.0L, sd = 0.0L;
        for (std::size_t i = x; i < x + s; ++i) {
          for (std::size_t j = y; j < y + s; ++j) {
            sn += num[i * n + j];
            sd += den ? static_cast<long double>((*den)[i * n + j]) : 1.0L;
          }
        }
        const double avg = static_cast<double>(sn / sd);
        for (std::size_t i = x; i < x + s; ++i) {
          for (std::size_t j = y; j < y + s; ++j) out[i * n + j] = std::max(out[i * n + j], avg);
        }
      }
    }
  }
  return out;
}

std::vector<double> abs_values(const SampledFunction& f) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f[i]);
  return a;
}

SampledFunction run(const GridPtr& grid, std::span<const double> num, const std::span<const double>* den,
                    std::vector<double> init, MaximalMethod method) {
  auto out = method == MaximalMethod::fast
                 ? window_ratio_max_fast(num, den, grid->dim(), grid->n(), std::move(init))
                 : window_ratio_max_oracle(num, den, grid->dim(), grid->n(), std::move(init));
  return SampledFunction(grid, std::move(out));
}

}  // namespace

SampledFunction hl_maximal(const SampledFunction& f, MaximalMethod method) {
  auto a = abs_values(f);
  return run(f.grid(), a, nullptr, a, method);
}

MaximalOutput hl_maximal_output(const SampledFunction& f, MaximalMethod method) {
  return {hl_maximal(f, method), method};
}

SampledFunction weighted_maximal(const SampledFunction& f, const Weight& u0, MaximalMethod method) {
  check_same_grid(f.grid(), u0.grid());
  auto a = abs_values(f);
  std::vector<double> fu(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) fu[i] = a[i] * u0[i];
  const std::span<const double> den = u0.span();
  return run(f.grid(), fu, &den, a, method);
}

SampledFunction power_maximal(const SampledFunction& f, double mu, MaximalMethod method) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("power_maximal requires 0 < mu <= 1");
  if (mu == 1.0) return hl_maximal(f, method);
  auto a = abs_values(f);
  for (double& x : a) x = std::pow(x, 1.0 / mu);
  auto m = run(f.grid(), a, nullptr, a, method);
  const auto abs_f = abs_values(f);
  // Rounding in the two pow calls must not break the domination M_mu f >= |f|.
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::max(std::pow(m[i], mu), abs_f[i]);
  return m;
}

}  // namespace weightlab
