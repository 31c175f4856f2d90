#include "weightlab/weights.hpp"

#include <algorithm>
#include <cmath>

#include "windows.hpp"

namespace weightlab {

namespace {

void require_positive_mh(const SampledFunction& mh) {
  for (std::size_t i = 0; i < mh.size(); ++i) {
    if (!(mh[i] > 0.0)) throw DomainError("Mh must be positive on the grid (h vanishes identically)");
  }
}

double max_relative_deviation(const SampledFunction& a, const SampledFunction& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return worst;
}

}  // namespace

double a1_constant(const Weight& u, MaximalMethod method) {
  const auto mu = hl_maximal(u.base(), method);
  double c = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) c = std::max(c, mu[i] / u[i]);
  return c;
}

double ap_constant(const Weight& v, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("ap_constant requires 1 < p < inf");
  const auto& g = *v.grid();
  std::vector<double> dual(v.size());
  for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = std::pow(v[i], 1.0 / (1.0 - p));
  const std::size_t n = g.n();
  const detail::PrefixTable tv(v.span(), g.dim(), n), td(dual, g.dim(), n);
  long double best = 1.0L;
  const long double ep = static_cast<long double>(p) - 1.0L;
  for (std::size_t s = 1; s <= n; ++s) {
    const long double cells = g.dim() == 1 ? static_cast<long double>(s) : static_cast<long double>(s) * s;
    const std::size_t m = n - s + 1;
    const std::size_t my = g.dim() == 1 ? 1 : m;
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < my; ++y) {
        const long double q = (tv.window(x, y, s) / cells) * std::pow(td.window(x, y, s) / cells, ep);
        best = std::max(best, q);
      }
    }
  }
  return static_cast<double>(best);
}

double a1_bound(const Weight& u) { return u.certified_a1() ? *u.certified_a1() : a1_constant(u); }

double HatApWeight::reconstruction_residual() const {
  const auto mh = hl_maximal(h);
  return max_relative_deviation(v.base(), multiply(pow(mh, 1.0 - p), u.base()));
}

HatApWeight hat_ap_from_factors(const SampledFunction& h, const Weight& u, double p) {
  if (!(p > 1.0)) throw DomainError("hat A_p requires p > 1");
  check_same_grid(h.grid(), u.grid());
  const auto mh = hl_maximal(h);
  require_positive_mh(mh);
  Weight v(multiply(pow(mh, 1.0 - p), u.base()));
  const double norm = std::pow(a1_bound(u), 1.0 / p);
  return {std::move(v), h, u, p, norm};
}

Weight power_a1_compose(const SampledFunction& h, const Weight& u, double mu, double kappa) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("power_a1_compose requires 0 < mu < 1");
  check_same_grid(h.grid(), u.grid());
  const auto mh = hl_maximal(h);
  require_positive_mh(mh);
  return Weight(multiply(pow(mh, mu), pow(u.base(), 1.0 - mu)), kappa * a1_constant(u) / (1.0 - mu));
}

double self_improvement_exponent(double a1, int n_dim) {
  return 1.0 + 1.0 / (std::ldexp(1.0, n_dim + 1) * a1);
}

SelfImproved self_improve(const Weight& u, int n_dim) {
  const double t = self_improvement_exponent(a1_bound(u), n_dim);
  return {t, Weight(pow(u.base(), t))};
}

double LimitedWeight::reconstruction_residual() const {
  SampledFunction second = kind == LimitedKind::ap_ab ? pow(v1->base(), beta * (1.0 - p))
                                                      : pow(hl_maximal(*h), beta * (1.0 - p));
  return max_relative_deviation(v.base(), multiply(pow(v0.base(), alpha), second));
}

namespace {

void check_limited(double p, double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
    throw DomainError("limited weights require 0 <= alpha, beta <= 1");
  if (alpha == 0.0 && beta == 0.0) throw DomainError("alpha and beta cannot both vanish");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("limited weights require 1 <= p < inf");
}

}  // namespace

LimitedWeight limited_weight_ap(double p, double alpha, double beta, const Weight& v0, const Weight& v1) {
  check_limited(p, alpha, beta);
  check_same_grid(v0.grid(), v1.grid());
  Weight v(multiply(pow(v0.base(), alpha), pow(v1.base(), beta * (1.0 - p))));
  const double norm = std::pow(a1_bound(v0), alpha) * std::pow(a1_bound(v1), beta * (p - 1.0));
  return {LimitedKind::ap_ab, std::move(v), p, alpha, beta, v0, v1, std::nullopt, norm};
}

LimitedWeight limited_weight_hat(double p, double alpha, double beta, const Weight& v0, const SampledFunction& h) {
  check_limited(p, alpha, beta);
  check_same_grid(v0.grid(), h.grid());
  const auto mh = hl_maximal(h);
  require_positive_mh(mh);
  Weight v(multiply(pow(v0.base(), alpha), pow(mh, beta * (1.0 - p))));
  const double norm = std::pow(a1_bound(v0), alpha / (1.0 + beta * (p - 1.0)));
  return {LimitedKind::hat_ap_ab, std::move(v), p, alpha, beta, v0, std::nullopt, h, norm};
}

double power_weight_a1_bound(double a) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("power weight exponent must lie in [0, 1)");
  if (a == 0.0) return 1.0;
  const auto g = [a](double x) { return (1.0 + std::pow(x, 1.0 - a)) / ((1.0 - a) * (1.0 + x)); };
  // Coarse scan, then golden-section refinement around the best sample.
  const int samples = 4096;
  int best = 0;
  for (int k = 1; k <= samples; ++k) {
    if (g(static_cast<double>(k) / samples) > g(static_cast<double>(best) / samples)) best = k;
  }
  double lo = std::max(0, best - 1) / static_cast<double>(samples);
  double hi = std::min(samples, best + 1) / static_cast<double>(samples);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (g(c) > g(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - r * (hi - lo);
    d = lo + r * (hi - lo);
  }
  const double peak = std::max({g(lo), g(hi), g(0.5 * (lo + hi)), g(static_cast<double>(best) / samples)});
  return peak * (1.0 + 1e-12);
}

namespace {

double euclid_abs(const Point& x, int dim) { return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]); }

struct KFactor {
  SampledFunction values;
  double ratio;  // sup K / inf K
};

KFactor k_factor(const std::string& name, const GridPtr& grid) {
  if (name == "one") return {SampledFunction(grid, 1.0), 1.0};
  if (name == "sine") {
    SampledFunction k(grid, 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = 1.0 + 0.5 * std::sin(grid->center_point(i)[0]);
    return {std::move(k), 3.0};
  }
  throw NameError("unknown K factor '" + name + "' (expected one, sine)");
}

}  // namespace

std::vector<double> family_parameters(const std::string& name, const FamilyParams& params) {
  if (name == "power" || name == "composed_power") return params.a_list;
  if (name == "mh_power") return params.mu_list;
  throw NameError("unknown weight family '" + name + "' (expected power, composed_power, mh_power)");
}

std::vector<Weight> weight_family(const std::string& name, const FamilyParams& params, const GridPtr& grid) {
  const auto list = family_parameters(name, params);
  std::vector<Weight> out;
  if (name == "power" || name == "composed_power") {
    if (!grid->centers_avoid_origin()) throw DomainError("power weights need a grid whose cell centres avoid 0");
    const auto k = name == "power" ? k_factor("one", grid) : k_factor(params.k_factor, grid);
    for (double a : list) {
      if (!(a >= 0.0 && a < 1.0)) throw DomainError("power weight exponent must lie in [0, 1)");
      SampledFunction u(grid, 0.0);
      for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = k.values[i] * std::pow(euclid_abs(grid->center_point(i), grid->dim()), -a);
      // The closed-form bound is for the line; in 2D the constant is left to the computation.
      std::optional<double> cert;
      if (grid->dim() == 1) cert = k.ratio * power_weight_a1_bound(a);
      else if (a == 0.0) cert = k.ratio;
      out.emplace_back(std::move(u), cert);
    }
    return out;
  }
  const auto k = k_factor(params.k_factor, grid);
  const Point lo{params.h_lo, params.h_lo}, hi{params.h_hi, params.h_hi};
  const auto mh = hl_maximal(CellSet::box(grid, lo, hi).indicator());
  require_positive_mh(mh);
  for (double mu : list) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mh_power exponent must lie in (0, 1)");
    std::optional<double> cert;
    if (params.kappa) cert = *params.kappa * k.ratio / (1.0 - mu);
    out.emplace_back(multiply(k.values, pow(mh, mu)), cert);
  }
  return out;
}

KappaFit fit_kappa(const std::vector<double>& measured, const std::vector<double>& nominal) {
  if (measured.size() != nominal.size() || measured.empty())
    throw DomainError("fit_kappa needs matching non-empty lists");
  KappaFit fit;
  double lo = INFINITY;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double r = measured[i] / nominal[i];
    fit.per_member.push_back(r);
    fit.kappa = std::max(fit.kappa, r);
    lo = std::min(lo, r);
  }
  fit.spread = fit.kappa / lo;
  return fit;
}

}  // namespace weightlab
