#pragma once

#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

/// Distribution function y -> v({|f| > y}) of a sampled function.
///
/// Built once by sorting the cell values; every norm below is an exact
/// finite sum over the breakpoints, so the only error is in the sampling.
class DistributionFn {
 public:
  DistributionFn(const SampledFunction& f, const Weight& v);
  explicit DistributionFn(const SampledFunction& f);

  /// Distinct positive values of |f|, increasing.
  const std::vector<double>& breakpoints() const { return levels_; }
  /// masses()[i] = v({|f| >= breakpoints()[i]}), i.e. the left limit of lambda at that breakpoint.
  const std::vector<double>& masses() const { return mass_ge_; }
  /// v({f != 0}).
  double support_mass() const { return mass_ge_.empty() ? 0.0 : mass_ge_.front(); }
  double total_mass() const { return total_; }

  /// lambda(y) = v({|f| > y}), right-continuous, y >= 0.
  double operator()(double y) const;

 private:
  void build(const SampledFunction& f, const std::vector<double>& cell_mass);

  std::vector<double> levels_;
  std::vector<double> mass_ge_;
  double total_ = 0.0;
};

double distribution(const SampledFunction& f, const Weight& v, double y);

/// sup_{y>0} y lambda(y)^{1/p}, evaluated at left limits of the breakpoints.
double weak_norm(const SampledFunction& f, const Weight& v, double p);
double weak_norm(const DistributionFn& lambda, double p);

/// p * int_0^inf lambda(y)^{1/p} dy.
double lorentz_p1_norm(const SampledFunction& f, const Weight& v, double p);
double lorentz_p1_norm(const DistributionFn& lambda, double p);

/// (sum |f|^p v h^dim)^{1/p}.
double lp_norm(const SampledFunction& f, const Weight& v, double p);
/// The same quantity through the layer-cake formula int p y^{p-1} lambda(y) dy.
double lp_norm_layer_cake(const DistributionFn& lambda, double p);

/// max over super-level sets F = {|f| >= b} of v(F)^{1/p - 1/r} (int_F |f|^r v)^{1/r}, 1 <= r < p.
/// Sandwiched between ||f||_{L^{p,inf}(v)} and (p/(p-r))^{1/r} times it.
double kolmogorov_sup(const SampledFunction& f, const Weight& v, double p, double r);

/// Right-continuous nonincreasing step function on (0, total measure).
/// values()[k] is taken on [cuts()[k], cuts()[k+1]).
class Rearrangement {
 public:
  Rearrangement(std::vector<double> cuts, std::vector<double> values);

  const std::vector<double>& cuts() const { return cuts_; }
  const std::vector<double>& values() const { return values_; }
  double total_measure() const { return cuts_.back(); }

  double operator()(double t) const;
  /// int_0^T f*(t) dt, exact for the step function.
  double integral_to(double T) const;

 private:
  std::vector<double> cuts_;
  std::vector<double> values_;
};

/// f*(t) = inf{y : lambda(y) <= t}; the unweighted overload uses Lebesgue measure.
Rearrangement decreasing_rearrangement(const SampledFunction& f, const Weight& v);
Rearrangement decreasing_rearrangement(const SampledFunction& f);

/// ||f||_{L^1 + L^inf} computed as int_0^1 f*(t) dt (unweighted).
double l1_plus_linf_norm(const SampledFunction& f);

}  // namespace weightlab
