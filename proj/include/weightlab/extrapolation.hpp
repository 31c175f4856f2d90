#pragma once

#include <functional>
#include <optional>
#include <string>

#include <boost/rational.hpp>

#include "weightlab/grid.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

using Rational = boost::rational<long long>;

double to_double(const Rational& q);
std::string to_string(const Rational& q);

enum class LogForm {
  /// (1 + log r)^b
  one_plus_log,
  /// log(1 + r)^b; bounded by (1 + log r)^b for r >= 1 when exponents are compared.
  log_one_plus,
};

/// r -> A r^a L(r)^b on [1, inf). Opaque members stand for a nondecreasing
/// function the theory does not spell out; only arg_exponent is known.
struct GrowthFn {
  double A = 1.0;
  Rational a{0};
  Rational b{0};
  LogForm log_form = LogForm::one_plus_log;
  bool opaque = false;
  /// For opaque members: the function is phi(r^arg_exponent) with phi unknown.
  Rational arg_exponent{1};
  std::string label;

  double operator()(double r) const;

  static GrowthFn power_log(double A, Rational a, Rational b, LogForm form = LogForm::one_plus_log);
};

/// Phi(r) = C1 phi(C2 r^p) r^{p-1} (1 + log r)^{2/p'}.
double phi_up(const GrowthFn& phi, double p, double r, double c1 = 1.0, double c2 = 1.0);
/// Power-log upper envelope of Phi: exponents a p + p - 1 and b + 2/p'.
GrowthFn phi_up_symbolic(const GrowthFn& phi, const Rational& p, double c1 = 1.0, double c2 = 1.0);

/// C r^{1 - 1/p0} phi(r^{1/p0}).
double down_constant(const GrowthFn& phi, double p0, double r, double c = 1.0);
/// Same, for an arbitrary callable phi (used with Phi from phi_up).
double down_constant(const std::function<double(double)>& phi, double p0, double r, double c = 1.0);

/// C1 ||c||_1 phi(C2 r) (1 + log r).
double average_constant(const GrowthFn& phi, double c_l1_norm, double r, double c1 = 1.0, double c2 = 1.0);

/// The phi-free factor left after averaging at p and coming back down to p = 1:
/// p' r^{2/p'} (1 + log(r)/p)^{2/p'}.
double averaged_down_factor(double r, double p);
struct InfimumOverP {
  double value;
  double argmin_p;
};
/// Minimum of averaged_down_factor over a log-spaced grid of p' in [1 + 1e-6, 1e6].
InfimumOverP averaged_down_infimum(double r, int points = 4001);

/// (p^2 / ((p-1)^2 (mu - theta)(theta - 1/p')^2))^theta r^{2 theta - 2/p'}.
double c_p_theta_mu(double p, double theta, double mu, double r);

struct SawyerBound {
  /// theta p' / (theta p' - 1)
  double lorentz_exponent;
  /// theta^2 p' C / (1 - p(1 - theta))
  double prefactor;
  /// 2 (theta p' - 1) / (theta (p' - 1))
  double norm_exponent;
  double value;
};

SawyerBound sawyer_bound(double p, double theta, double hat_norm, double c_np = 1.0);

struct ThetaMuT {
  double theta, mu, t, R;
};

ThetaMuT theta_mu_t_selection(double p, double r, int n_dim);

/// u0 = M(chi_F v_theta^{1/(alpha mu)})^mu (u^t)^{1-mu}, certified by kappa ||u||_{A_1} / (1 - mu).
Weight witness_weight_alpha(const CellSet& F, const SampledFunction& v_theta, const Weight& u, double alpha,
                            double mu, double t, double kappa = 1.0);
/// Main construction: v_theta = (Mh)^{1-p} u^theta and alpha = 1.
Weight witness_weight(const CellSet& F, const HatApWeight& v, double theta, double mu, double t, double kappa = 1.0);

struct LimitedIndices {
  double p0, alpha, beta, p_minus;
  /// +inf when alpha = 1.
  double p_plus;

  double alpha_of(double p) const;
  double beta_of(double p) const;
};

LimitedIndices limited_indices(double p0, double alpha, double beta);

struct LimitedIndicesExact {
  Rational p0, alpha, beta, p_minus;
  /// Empty when alpha = 1 (p_+ = inf).
  std::optional<Rational> p_plus;

  Rational alpha_of(const Rational& p) const;
  Rational beta_of(const Rational& p) const;
};

LimitedIndicesExact limited_indices_exact(const Rational& p0, const Rational& alpha, const Rational& beta);

/// Restricted weak-type window for Bochner-Riesz below the critical index:
/// [p0, p0 / (1 - alpha)) with the index pair at every p.
struct BochnerWindow {
  Rational lo, hi;
  LimitedIndicesExact indices;
};

BochnerWindow bochner_limited_window(int n, const Rational& lambda);

/// Psi(r) of the limited restricted extrapolation theorem.
double limited_psi(const GrowthFn& phi, double p0, double alpha, double p, double r, double c1 = 1.0,
                   double c2 = 1.0);
GrowthFn limited_psi_symbolic(const GrowthFn& phi, const Rational& p0, const Rational& alpha, const Rational& p,
                              double c1 = 1.0, double c2 = 1.0);

/// max((p+ - p0)/(p+ - p), (p0 - p-)/(p - p-)) for p- < p < p+.
double limited_extrapolation_exponent(double p0, double alpha, double beta, double p);

/// Growth functions of the cited Bochner-Riesz bounds:
///   bochner_critical  r^2 log(1 + r)
///   bochner_n2        r^{lambda(7 + 4 lambda)/(6 + 4 lambda)}
///   bochner_high_dim  opaque phi(r^{(1 + 2 lambda)/n})
GrowthFn reference_constants(const std::string& name, const Rational& lambda = Rational(1, 2), int n = 2);

}  // namespace weightlab
