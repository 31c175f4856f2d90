#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"
#include "weightlab/maximal.hpp"

namespace weightlab {

/// ||u||_{A_1} on the grid: max over cells of Mu / u. Always >= 1.
double a1_constant(const Weight& u, MaximalMethod method = MaximalMethod::fast);

/// sup over windows of avg(v) * avg(v^{1/(1-p)})^{p-1}, same window set as hl_maximal.
double ap_constant(const Weight& v, double p);

/// The certified A_1 bound if the weight carries one, else the computed constant.
double a1_bound(const Weight& u);

/// v = (Mh)^{1-p} u with u in A_1.
struct HatApWeight {
  Weight v;
  SampledFunction h;
  Weight u;
  double p;
  /// Upper bound for ||v||_{hat A_p} from this single factorization: ||u||_{A_1}^{1/p}.
  double certified_hat_norm;

  /// max relative deviation of v from (Mh)^{1-p} u.
  double reconstruction_residual() const;
};

HatApWeight hat_ap_from_factors(const SampledFunction& h, const Weight& u, double p);

/// (Mh)^mu u^{1-mu}, certified by kappa * ||u||_{A_1} / (1 - mu).
Weight power_a1_compose(const SampledFunction& h, const Weight& u, double mu, double kappa = 1.0);

struct SelfImproved {
  double t;
  Weight weight;
};

/// t = 1 + 1/(2^{n+1} ||u||_{A_1}) and u^t.
double self_improvement_exponent(double a1, int n_dim);
SelfImproved self_improve(const Weight& u, int n_dim);

enum class LimitedKind { ap_ab, hat_ap_ab };

/// v = v0^alpha v1^{beta(1-p)} (ap_ab) or v = v0^alpha (Mh)^{beta(1-p)} (hat_ap_ab).
struct LimitedWeight {
  LimitedKind kind;
  Weight v;
  double p, alpha, beta;
  Weight v0;
  std::optional<Weight> v1;
  std::optional<SampledFunction> h;
  double certified_norm;

  double reconstruction_residual() const;
};

LimitedWeight limited_weight_ap(double p, double alpha, double beta, const Weight& v0, const Weight& v1);
LimitedWeight limited_weight_hat(double p, double alpha, double beta, const Weight& v0, const SampledFunction& h);

/// Analytic ||·||_{A_1} of |x|^{-a} on the real line: max_{0<=x<=1} (1 + x^{1-a}) / ((1-a)(1+x)).
double power_weight_a1_bound(double a);

struct FamilyParams {
  std::vector<double> a_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> mu_list{0.3, 0.6, 0.9};
  /// Bi-bounded factor K: "one" (K = 1) or "sine" (K = 1 + sin(x)/2).
  std::string k_factor = "one";
  double h_lo = 0.0;
  double h_hi = 0.1;
  /// If set, mh_power members carry certificates kappa * ratio(K) / (1 - mu).
  std::optional<double> kappa;
};

/// Named weight families on a grid.
///   power          |x|^{-a},            a in a_list
///   composed_power K(x) |x|^{-a},        a in a_list
///   mh_power       K(x) (M chi_[h_lo,h_hi])^mu, mu in mu_list
std::vector<Weight> weight_family(const std::string& name, const FamilyParams& params, const GridPtr& grid);

/// Family parameter (a or mu) attached to each member of weight_family.
std::vector<double> family_parameters(const std::string& name, const FamilyParams& params);

/// Fit of an unspecified implicit constant: kappa = max(measured / nominal).
struct KappaFit {
  double kappa = 0.0;
  /// max/min of the per-member ratios; > 4 flags a degraded fit.
  double spread = 1.0;
  std::vector<double> per_member;
  bool degraded() const { return spread > 4.0; }
};

KappaFit fit_kappa(const std::vector<double>& measured, const std::vector<double>& nominal);

}  // namespace weightlab
