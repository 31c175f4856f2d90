#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace weightlab::detail {

namespace {

// The FFTW planner is not thread-safe; execution of an existing plan is.
std::mutex planner_mutex;
std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans;

fftw_plan get_plan(int dim, std::size_t n, int sign) {
  std::lock_guard<std::mutex> lock(planner_mutex);
  const auto key = std::make_tuple(dim, n, sign);
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  const std::size_t total = dim == 1 ? n : n * n;
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  // ESTIMATE keeps plans independent of timing, so results are reproducible run to run.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int fsign = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(static_cast<int>(n), buf, buf, fsign, flags)
                            : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf, fsign, flags);
  fftw_free(buf);
  plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(std::complex<double>* data, int dim, std::size_t n, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(get_plan(dim, n, sign), p, p);
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace weightlab::detail
