#include "weightlab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace weightlab {

namespace {

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("norm exponent p must satisfy p >= 1");
}

std::vector<double> cell_masses(const Weight& v) {
  std::vector<double> m(v.size());
  const double vol = v.grid()->cell_volume();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = v[i] * vol;
  return m;
}

}  // namespace

DistributionFn::DistributionFn(const SampledFunction& f, const Weight& v) {
  check_same_grid(f.grid(), v.grid());
  build(f, cell_masses(v));
}

DistributionFn::DistributionFn(const SampledFunction& f) {
  build(f, std::vector<double>(f.size(), f.grid()->cell_volume()));
}

void DistributionFn::build(const SampledFunction& f, const std::vector<double>& cell_mass) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Decreasing |f|; ties broken by index so the accumulation order is fixed.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double fa = std::abs(f[a]), fb = std::abs(f[b]);
    return fa != fb ? fa > fb : a < b;
  });
  total_ = 0.0;
  for (double m : cell_mass) total_ += m;
  double acc = 0.0;
  std::size_t k = 0;
  while (k < order.size()) {
    const double level = std::abs(f[order[k]]);
    if (level == 0.0) break;
    while (k < order.size() && std::abs(f[order[k]]) == level) acc += cell_mass[order[k++]];
    levels_.push_back(level);
    mass_ge_.push_back(acc);
  }
  std::reverse(levels_.begin(), levels_.end());
  std::reverse(mass_ge_.begin(), mass_ge_.end());
}

double DistributionFn::operator()(double y) const {
  if (y < 0.0) throw DomainError("distribution function evaluated at y < 0");
  // First breakpoint strictly above y carries v({|f| >= b}) = v({|f| > y}).
  const auto it = std::upper_bound(levels_.begin(), levels_.end(), y);
  if (it == levels_.end()) return 0.0;
  return mass_ge_[static_cast<std::size_t>(it - levels_.begin())];
}

double distribution(const SampledFunction& f, const Weight& v, double y) { return DistributionFn(f, v)(y); }

double weak_norm(const DistributionFn& lambda, double p) {
  check_p(p);
  double best = 0.0;
  const auto& b = lambda.breakpoints();
  const auto& m = lambda.masses();
  for (std::size_t i = 0; i < b.size(); ++i) best = std::max(best, b[i] * std::pow(m[i], 1.0 / p));
  return best;
}

double weak_norm(const SampledFunction& f, const Weight& v, double p) { return weak_norm(DistributionFn(f, v), p); }

double lorentz_p1_norm(const DistributionFn& lambda, double p) {
  check_p(p);
  double sum = 0.0, prev = 0.0;
  const auto& b = lambda.breakpoints();
  const auto& m = lambda.masses();
  for (std::size_t i = 0; i < b.size(); ++i) {
    sum += (b[i] - prev) * std::pow(m[i], 1.0 / p);
    prev = b[i];
  }
  return p * sum;
}

double lorentz_p1_norm(const SampledFunction& f, const Weight& v, double p) {
  return lorentz_p1_norm(DistributionFn(f, v), p);
}

double lp_norm(const SampledFunction& f, const Weight& v, double p) {
  check_p(p);
  check_same_grid(f.grid(), v.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::pow(std::abs(f[i]), p) * v[i];
  return std::pow(sum * f.grid()->cell_volume(), 1.0 / p);
}

double lp_norm_layer_cake(const DistributionFn& lambda, double p) {
  check_p(p);
  double sum = 0.0, prev = 0.0;
  const auto& b = lambda.breakpoints();
  const auto& m = lambda.masses();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double bp = std::pow(b[i], p);
    sum += (bp - prev) * m[i];
    prev = bp;
  }
  return std::pow(sum, 1.0 / p);
}

double kolmogorov_sup(const SampledFunction& f, const Weight& v, double p, double r) {
  check_p(r);
  if (!(p > r)) throw DomainError("Kolmogorov functional needs 1 <= r < p");
  check_same_grid(f.grid(), v.grid());
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double fa = std::abs(f[a]), fb = std::abs(f[b]);
    return fa != fb ? fa > fb : a < b;
  });
  const double vol = f.grid()->cell_volume();
  double mass = 0.0, integral = 0.0, best = 0.0;
  std::size_t k = 0;
  while (k < order.size()) {
    const double level = std::abs(f[order[k]]);
    if (level == 0.0) break;
    while (k < order.size() && std::abs(f[order[k]]) == level) {
      const double m = v[order[k]] * vol;
      mass += m;
      integral += std::pow(level, r) * m;
      ++k;
    }
    best = std::max(best, std::pow(mass, 1.0 / p - 1.0 / r) * std::pow(integral, 1.0 / r));
  }
  return best;
}

// ---------------------------------------------------------------------------

Rearrangement::Rearrangement(std::vector<double> cuts, std::vector<double> values)
    : cuts_(std::move(cuts)), values_(std::move(values)) {
  if (cuts_.size() != values_.size() + 1) throw DomainError("rearrangement needs one more cut than values");
}

double Rearrangement::operator()(double t) const {
  if (t < 0.0) throw DomainError("rearrangement evaluated at t < 0");
  const auto it = std::upper_bound(cuts_.begin(), cuts_.end(), t);
  if (it == cuts_.begin() || it == cuts_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - cuts_.begin()) - 1];
}

double Rearrangement::integral_to(double T) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (cuts_[k] >= T) break;
    sum += values_[k] * (std::min(cuts_[k + 1], T) - cuts_[k]);
  }
  return sum;
}

namespace {

Rearrangement from_distribution(const DistributionFn& lambda) {
  // On [lambda(b_i^-) mass of higher levels, mass_ge_i) the rearrangement equals b_i.
  const auto& b = lambda.breakpoints();
  const auto& m = lambda.masses();
  std::vector<double> cuts{0.0}, values;
  for (std::size_t k = b.size(); k-- > 0;) {
    values.push_back(b[k]);
    cuts.push_back(m[k]);
  }
  if (lambda.total_mass() > cuts.back()) {
    values.push_back(0.0);
    cuts.push_back(lambda.total_mass());
  }
  return Rearrangement(std::move(cuts), std::move(values));
}

}  // namespace

Rearrangement decreasing_rearrangement(const SampledFunction& f, const Weight& v) {
  return from_distribution(DistributionFn(f, v));
}

Rearrangement decreasing_rearrangement(const SampledFunction& f) { return from_distribution(DistributionFn(f)); }

double l1_plus_linf_norm(const SampledFunction& f) { return decreasing_rearrangement(f).integral_to(1.0); }

}  // namespace weightlab
