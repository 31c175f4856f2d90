#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <mutex>
#include <thread>

#include "weightlab/harness.hpp"

namespace weightlab {

std::vector<NamedSet> set_dictionary(const GridPtr& grid) {
  static const double scales[] = {0.05, 0.2, 0.5};
  static const double centres[] = {-0.5, 0.0, 0.35};
  std::vector<NamedSet> out;
  const bool plane = grid->dim() == 2;
  const auto cube = [&](double a, double b) {
    return plane ? CellSet::box(grid, {a, a}, {b, b}) : CellSet::interval(grid, a, b);
  };
  for (double s : scales) {
    for (double c : centres) {
      const std::string name = std::string(plane ? "Q" : "I") + "(c=" + format_number(c) + ",s=" + format_number(s) + ")";
      out.push_back({name, cube(c - 0.5 * s, c + 0.5 * s)});
    }
  }
  out.push_back({"union(-0.6:-0.5,0.3:0.45)", cube(-0.6, -0.5) | cube(0.3, 0.45)});
  return out;
}

DeltaAtom make_delta_atom(const GridPtr& grid, double center, double delta) {
  if (grid->dim() != 1) throw DomainError("delta-atoms are built on 1D grids");
  const double h = grid->h();
  const long m = static_cast<long>(std::floor(delta / (2.0 * h) + 1e-9));
  if (m < 1) throw DomainError("delta is below two grid cells");
  const long start = std::lround((center - grid->lo()) / h - static_cast<double>(m));
  if (start < 0 || start + 2 * m > static_cast<long>(grid->n())) throw DomainError("atom support leaves the box");
  const double length = static_cast<double>(2 * m) * h;
  SampledFunction a(grid, 0.0);
  for (long k = 0; k < 2 * m; ++k) a[static_cast<std::size_t>(start + k)] = (k < m ? 1.0 : -1.0) / length;
  return {center, length, std::move(a)};
}

SlopeFit fit_loglog(const std::string& name, const std::vector<double>& x, const std::vector<double>& y) {
  SlopeFit fit;
  fit.name = name;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  fit.points = lx.size();
  const double nan = std::nan("");
  if (lx.size() < 2) {
    fit.slope = fit.intercept = fit.residual = nan;
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    fit.slope = fit.intercept = fit.residual = nan;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

Verdict stability_verdict(const std::string& name, const std::vector<double>& measured,
                          const std::vector<double>& reference, double factor) {
  Verdict v;
  v.name = name;
  v.kind = VerdictKind::stability;
  v.tolerance = factor;
  if (measured.empty() || measured.size() != reference.size()) {
    v.pass = false;
    v.detail = "no family members";
    return v;
  }
  const double q0 = measured[0] / reference[0];
  double hi = 1.0, lo = 1.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double q = (measured[i] / reference[i]) / q0;
    hi = std::max(hi, q);
    lo = std::min(lo, q);
  }
  v.value = hi;
  v.pass = std::isfinite(hi) && hi <= factor;
  v.detail = "max (ratio/reference) relative to the first member; min is " + format_number(lo);
  return v;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads) {
  if (n == 0) return;
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> list = {
      {"maximal_weak11", "weak (1,1) of M on power weights against the A_1 constant", suite_maximal_weak11},
      {"main_theorem", "restricted weak type (p,p) of a multiplier on hat A_p weights against Phi", suite_main_theorem},
      {"lemma_difi", "weak L^{p'} bound for M_mu(chi_E v_theta)/v_theta against C_{p,theta,mu}", suite_lemma_difi},
      {"sawyer", "restricted weak type of M_{u0} on hat A_p weights", suite_sawyer},
      {"fefferman_stein", "int (Mf)^q w against int |f|^q Mw", suite_fefferman_stein},
      {"atoms", "L^1 + L^inf size of K * a for shrinking delta-atoms", suite_atoms},
      {"average", "averaged and series multipliers against the averaged constant", suite_average},
      {"grid_refinement", "convergence under grid doubling (report only)", suite_grid_refinement},
  };
  return list;
}

Report run_experiment(const ExperimentConfig& cfg) {
  const auto& name = cfg.get("run.suite");
  for (const auto& s : suites()) {
    if (s.name != name) continue;
    const auto start = std::chrono::steady_clock::now();
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    Report r = s.run(cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    r.runtime = Runtime{stamp, elapsed.count()};
    return r;
  }
  std::string known;
  for (const auto& s : suites()) known += (known.empty() ? "" : ", ") + s.name;
  throw NameError("unknown suite '" + name + "' (available: " + known + ")");
}

}  // namespace weightlab
