#include "weightlab/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weightlab/maximal.hpp"

namespace weightlab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_r(double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("growth functions are evaluated at r >= 1");
}

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

double to_double(const Rational& q) { return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator()); }

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double GrowthFn::operator()(double r) const {
  if (opaque) throw DomainError("growth function '" + label + "' is not known in closed form");
  check_r(r);
  const double l = log_form == LogForm::one_plus_log ? 1.0 + std::log(r) : std::log1p(r);
  const double pa = a == Rational(0) ? 1.0 : std::pow(r, to_double(a));
  const double pb = b == Rational(0) ? 1.0 : std::pow(l, to_double(b));
  return A * pa * pb;
}

GrowthFn GrowthFn::power_log(double A, Rational a, Rational b, LogForm form) {
  if (!(A > 0.0)) throw DomainError("growth prefactor must be positive");
  if (a < 0 || b < 0) throw DomainError("growth exponents must be nonnegative");
  GrowthFn g;
  g.A = A;
  g.a = a;
  g.b = b;
  g.log_form = form;
  return g;
}

double phi_up(const GrowthFn& phi, double p, double r, double c1, double c2) {
  if (!(p > 1.0)) throw DomainError("phi_up requires p > 1");
  check_r(r);
  const double dual_inv = (p - 1.0) / p;  // 1/p'
  return c1 * phi(c2 * std::pow(r, p)) * std::pow(r, p - 1.0) * std::pow(1.0 + std::log(r), 2.0 * dual_inv);
}

GrowthFn phi_up_symbolic(const GrowthFn& phi, const Rational& p, double c1, double c2) {
  if (!(p > 1)) throw DomainError("phi_up requires p > 1");
  if (phi.opaque) throw DomainError("phi_up_symbolic needs a closed-form phi");
  GrowthFn out;
  out.a = phi.a * p + p - 1;
  out.b = phi.b + Rational(2) * (p - 1) / p;
  // 1 + log(C2 r^p) <= p (1 + log+ C2)(1 + log r), and log(1 + x) <= 1 + log x for x >= 1.
  const double pd = to_double(p);
  out.A = c1 * phi.A * std::pow(c2, to_double(phi.a)) * std::pow(pd * (1.0 + log_plus(c2)), to_double(phi.b));
  out.log_form = LogForm::one_plus_log;
  out.label = "Phi[" + phi.label + "]";
  return out;
}

double down_constant(const std::function<double(double)>& phi, double p0, double r, double c) {
  if (!(p0 > 1.0)) throw DomainError("down_constant requires p0 > 1");
  check_r(r);
  return c * std::pow(r, 1.0 - 1.0 / p0) * phi(std::pow(r, 1.0 / p0));
}

double down_constant(const GrowthFn& phi, double p0, double r, double c) {
  return down_constant([&phi](double x) { return phi(x); }, p0, r, c);
}

double average_constant(const GrowthFn& phi, double c_l1_norm, double r, double c1, double c2) {
  check_r(r);
  if (!(c_l1_norm >= 0.0)) throw DomainError("coefficient norm must be >= 0");
  if (c_l1_norm == 0.0) return 0.0;
  return c1 * c_l1_norm * phi(c2 * r) * (1.0 + std::log(r));
}

double averaged_down_factor(double r, double p) {
  check_r(r);
  if (!(p > 1.0)) throw DomainError("averaged_down_factor requires p > 1");
  const double dual = p / (p - 1.0);
  return dual * std::pow(r, 2.0 / dual) * std::pow(1.0 + std::log(r) / p, 2.0 / dual);
}

InfimumOverP averaged_down_infimum(double r, int points) {
  InfimumOverP best{inf, 0.0};
  const double lo = std::log(1e-6), hi = std::log(1e6);
  for (int k = 0; k < points; ++k) {
    const double q = std::exp(lo + (hi - lo) * k / (points - 1));  // p' - 1
    const double p = (1.0 + q) / q;
    const double v = averaged_down_factor(r, p);
    if (v < best.value) best = {v, p};
  }
  return best;
}

double c_p_theta_mu(double p, double theta, double mu, double r) {
  if (!(p > 1.0)) throw DomainError("c_p_theta_mu requires p > 1");
  check_r(r);
  const double dual_inv = 1.0 - 1.0 / p;
  if (!(theta > dual_inv)) throw DomainError("c_p_theta_mu requires theta > 1/p'");
  if (!(mu > theta) || mu > 1.0) throw DomainError("c_p_theta_mu requires theta < mu <= 1");
  const double gap = theta - dual_inv;
  const double base = p * p / ((p - 1.0) * (p - 1.0) * (mu - theta) * gap * gap);
  return std::pow(base, theta) * std::pow(r, 2.0 * theta - 2.0 * dual_inv);
}

SawyerBound sawyer_bound(double p, double theta, double hat_norm, double c_np) {
  if (!(p > 1.0)) throw DomainError("sawyer_bound requires p > 1");
  const double dual = p / (p - 1.0);
  if (!(theta > 1.0 / dual) || theta > 1.0) throw DomainError("sawyer_bound requires 1/p' < theta <= 1");
  const double margin = 1.0 - p * (1.0 - theta);
  if (!(margin > 0.0)) throw DomainError("sawyer_bound requires 1 - p(1 - theta) > 0");
  if (!(hat_norm >= 1.0)) throw DomainError("hat A_p norms are >= 1");
  SawyerBound s;
  const double tp = theta * dual;
  s.lorentz_exponent = tp / (tp - 1.0);
  s.prefactor = theta * theta * dual * c_np / margin;
  s.norm_exponent = 2.0 * (tp - 1.0) / (theta * (dual - 1.0));
  s.value = s.prefactor * std::pow(hat_norm, s.norm_exponent);
  return s;
}

ThetaMuT theta_mu_t_selection(double p, double r, int n_dim) {
  if (!(p > 1.0)) throw DomainError("theta_mu_t_selection requires p > 1");
  check_r(r);
  ThetaMuT s;
  s.R = 1.0 + std::log(r);
  s.theta = (1.0 - 1.0 / p) * (1.0 + 1.0 / ((p + 1.0) * s.R));
  s.t = self_improvement_exponent(r, n_dim);
  s.mu = 1.0 - (1.0 - s.theta) / s.t;
  return s;
}

Weight witness_weight_alpha(const CellSet& F, const SampledFunction& v_theta, const Weight& u, double alpha,
                            double mu, double t, double kappa) {
  if (F.empty()) throw DomainError("witness weight needs a nonempty set F");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("witness weight requires 0 < alpha <= 1");
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("witness weight requires 0 < mu < 1");
  if (!(t >= 1.0)) throw DomainError("witness weight requires t >= 1");
  check_same_grid(F.grid(), v_theta.grid());
  check_same_grid(F.grid(), u.grid());
  const double e = 1.0 / (alpha * mu);
  SampledFunction g(F.grid(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (F.contains(i)) g[i] = std::pow(v_theta[i], e);
  const auto mg = hl_maximal(g);
  SampledFunction u0(F.grid(), 0.0);
  for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = std::pow(mg[i], mu) * std::pow(std::pow(u[i], t), 1.0 - mu);
  return Weight(std::move(u0), kappa * a1_bound(u) / (1.0 - mu));
}

Weight witness_weight(const CellSet& F, const HatApWeight& v, double theta, double mu, double t, double kappa) {
  const auto mh = hl_maximal(v.h);
  const auto v_theta = multiply(pow(mh, 1.0 - v.p), pow(v.u.base(), theta));
  return witness_weight_alpha(F, v_theta, v.u, 1.0, mu, t, kappa);
}

// ---------------------------------------------------------------------------

namespace {

void check_limited_params(bool alpha_ok, bool beta_ok, bool both_zero, bool p0_ok) {
  if (!alpha_ok || !beta_ok) throw DomainError("limited indices require 0 <= alpha, beta <= 1");
  if (both_zero) throw DomainError("alpha and beta cannot both vanish");
  if (!p0_ok) throw DomainError("limited indices require p0 >= 1");
}

}  // namespace

double LimitedIndices::alpha_of(double p) const { return std::isinf(p_plus) ? 1.0 : (p_plus - p) / p_plus; }

double LimitedIndices::beta_of(double p) const {
  if (p_minus == 1.0) return 1.0;
  return (p - p_minus) / (p_minus * (p - 1.0));
}

LimitedIndices limited_indices(double p0, double alpha, double beta) {
  check_limited_params(alpha >= 0.0 && alpha <= 1.0, beta >= 0.0 && beta <= 1.0, alpha == 0.0 && beta == 0.0,
                       p0 >= 1.0 && std::isfinite(p0));
  LimitedIndices li{p0, alpha, beta, p0 / (1.0 + beta * (p0 - 1.0)), alpha == 1.0 ? inf : p0 / (1.0 - alpha)};
  return li;
}

Rational LimitedIndicesExact::alpha_of(const Rational& p) const {
  if (!p_plus) return Rational(1);
  return (*p_plus - p) / *p_plus;
}

Rational LimitedIndicesExact::beta_of(const Rational& p) const {
  if (p_minus == Rational(1)) return Rational(1);
  return (p - p_minus) / (p_minus * (p - 1));
}

LimitedIndicesExact limited_indices_exact(const Rational& p0, const Rational& alpha, const Rational& beta) {
  check_limited_params(alpha >= 0 && alpha <= 1, beta >= 0 && beta <= 1, alpha == Rational(0) && beta == Rational(0), p0 >= 1);
  LimitedIndicesExact li{p0, alpha, beta, p0 / (1 + beta * (p0 - 1)), std::nullopt};
  if (alpha != Rational(1)) li.p_plus = p0 / (1 - alpha);
  return li;
}

BochnerWindow bochner_limited_window(int n, const Rational& lambda) {
  Rational p0, alpha;
  if (n == 2) {
    if (!(lambda > 0 && lambda < Rational(1, 2))) throw DomainError("n = 2 window needs 0 < lambda < 1/2");
    p0 = Rational(4) / (3 + 2 * lambda);
    alpha = 2 * lambda / (3 + 2 * lambda);
  } else if (n > 2) {
    if (!(lambda > Rational(n - 1, 2 * (n + 1)) && lambda < Rational(n - 1, 2)))
      throw DomainError("n > 2 window needs (n-1)/(2(n+1)) < lambda < (n-1)/2");
    p0 = Rational(2);
    alpha = (1 + 2 * lambda) / n;
  } else {
    throw DomainError("Bochner-Riesz windows are defined for n >= 2");
  }
  auto idx = limited_indices_exact(p0, alpha, Rational(0));
  return {p0, *idx.p_plus, idx};
}

double limited_psi(const GrowthFn& phi, double p0, double alpha, double p, double r, double c1, double c2) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("limited_psi requires 0 < alpha <= 1");
  const double hi = alpha == 1.0 ? inf : p0 / (1.0 - alpha);
  if (!(p >= p0 && p < hi)) throw DomainError("limited_psi requires p0 <= p < p0/(1 - alpha)");
  check_r(r);
  const double d = p0 - p * (1.0 - alpha);
  const double lead = std::pow(1.0 / d, (p - p0) / p);
  return c1 * lead * phi(c2 * std::pow(r, alpha * p / d)) * std::pow(r, alpha * (p - p0) / d) *
         std::pow(1.0 + std::log(r), 2.0 * (p - p0) / p);
}

GrowthFn limited_psi_symbolic(const GrowthFn& phi, const Rational& p0, const Rational& alpha, const Rational& p,
                              double c1, double c2) {
  if (phi.opaque) throw DomainError("limited_psi_symbolic needs a closed-form phi");
  if (!(alpha > 0 && alpha <= 1)) throw DomainError("limited_psi requires 0 < alpha <= 1");
  if (!(p >= p0) || (alpha != Rational(1) && !(p < p0 / (1 - alpha))))
    throw DomainError("limited_psi requires p0 <= p < p0/(1 - alpha)");
  const Rational d = p0 - p * (1 - alpha);
  const Rational e = alpha * p / d;
  GrowthFn out;
  out.a = phi.a * e + alpha * (p - p0) / d;
  out.b = phi.b + 2 * (p - p0) / p;
  const double ed = std::max(1.0, to_double(e));
  out.A = c1 * std::pow(1.0 / to_double(d), to_double((p - p0) / p)) * phi.A * std::pow(c2, to_double(phi.a)) *
          std::pow(ed * (1.0 + log_plus(c2)), to_double(phi.b));
  out.label = "Psi[" + phi.label + "]";
  return out;
}

double limited_extrapolation_exponent(double p0, double alpha, double beta, double p) {
  const auto li = limited_indices(p0, alpha, beta);
  if (!(p > li.p_minus && p < li.p_plus)) throw DomainError("p must lie in the open window (p-, p+)");
  const double up = std::isinf(li.p_plus) ? 1.0 : (li.p_plus - p0) / (li.p_plus - p);
  const double down = (p0 - li.p_minus) / (p - li.p_minus);
  return std::max(up, down);
}

GrowthFn reference_constants(const std::string& name, const Rational& lambda, int n) {
  if (name == "bochner_critical") {
    auto g = GrowthFn::power_log(1.0, Rational(2), Rational(1), LogForm::log_one_plus);
    g.label = name;
    return g;
  }
  if (name == "bochner_n2") {
    if (!(lambda > 0)) throw DomainError("bochner_n2 needs lambda > 0");
    auto g = GrowthFn::power_log(1.0, lambda * (7 + 4 * lambda) / (6 + 4 * lambda), Rational(0));
    g.label = name;
    return g;
  }
  if (name == "bochner_high_dim") {
    if (n < 3) throw DomainError("bochner_high_dim needs n > 2");
    GrowthFn g;
    g.opaque = true;
    g.arg_exponent = (1 + 2 * lambda) / n;
    g.label = name;
    return g;
  }
  throw NameError("unknown reference constant '" + name + "' (expected bochner_critical, bochner_n2, bochner_high_dim)");
}

}  // namespace weightlab
