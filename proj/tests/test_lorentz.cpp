#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weightlab/lorentz.hpp"

using namespace weightlab;

namespace {

std::vector<Weight> test_weights(const GridPtr& g) {
  std::vector<Weight> out{Weight::unit(g)};
  for (double a : {0.3, -0.5}) out.emplace_back(sample([a](double x) { return std::pow(std::abs(x), -a); }, g));
  out.emplace_back(sample([](double x) { return 1.0 + 0.5 * std::sin(3.0 * x); }, g));
  return out;
}

}  // namespace

TEST_SUITE("lorentz") {

TEST_CASE("distribution function") {
  const auto g = make_grid(1, -1.0, 1.0, 256);
  const Weight v(sample([](double x) { return 1.0 + x * x; }, g));
  const auto e = CellSet::interval(g, -0.2, 0.5);
  const auto chi = e.indicator();
  const double ve = weighted_measure(e, v);
  CHECK(distribution(chi, v, 0.0) == doctest::Approx(ve).epsilon(1e-14));
  CHECK(distribution(chi, v, 0.999) == doctest::Approx(ve).epsilon(1e-14));
  CHECK(distribution(chi, v, 1.0) == 0.0);

  Rng rng(9);
  const auto f = oracle::random_function(rng, g);
  const DistributionFn lambda(f, v);
  SampledFunction support(g, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) support[i] = f[i] != 0.0 ? 1.0 : 0.0;
  CHECK(lambda(0.0) == doctest::Approx(integrate(support, v)).epsilon(1e-13));
  double prev = lambda(0.0);
  for (double b : lambda.breakpoints()) {
    CHECK(lambda(b) <= prev);
    // Right-continuous: the value at b excludes the cells equal to b.
    CHECK(lambda(b) == lambda(b + 0.0));
    CHECK(lambda(b) <= lambda(std::nextafter(b, 0.0)));
    prev = lambda(b);
  }
  CHECK_THROWS_AS(distribution(chi, v, -1.0), DomainError);
}

TEST_CASE("indicator norms over the set dictionary") {
  const auto g = make_grid(1, -1.0, 1.0, 2048);
  for (const auto& v : test_weights(g)) {
    for (const auto& e : set_dictionary(g)) {
      const double ve = weighted_measure(e.set, v);
      for (double p : {1.0, 1.5, 2.0, 4.0}) {
        CHECK(std::abs(weak_norm(e.set.indicator(), v, p) - std::pow(ve, 1.0 / p)) <= 1e-12);
        CHECK(std::abs(lorentz_p1_norm(e.set.indicator(), v, p) - p * std::pow(ve, 1.0 / p)) <= 1e-12);
        CHECK(lp_norm(e.set.indicator(), v, p) == doctest::Approx(std::pow(ve, 1.0 / p)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("closed forms") {
  // x^{-1/p} on (0, 1] has weak norm 1 in the continuum. Sampled at centres
  // (k + 1/2) h the level sets are k + 1 cells, so the sup is
  // max_k ((k + 1) / (k + 1/2))^{1/p} = 2^{1/p}, taken at the innermost cell.
  const auto g = make_grid(1, 0.0, 1.0, 1 << 14);
  for (double p : {1.0, 2.0, 3.0}) {
    const auto f = sample([p](double x) { return std::pow(x, -1.0 / p); }, g);
    CHECK(weak_norm(f, Weight::unit(g), p) == doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-12));
  }
  // Two levels: f = 2 chi_A + chi_B.
  const auto g2 = make_grid(1, -1.0, 1.0, 400);
  const Weight v(sample([](double x) { return 2.0 + x; }, g2));
  const auto a = CellSet::interval(g2, -0.8, -0.3), b = CellSet::interval(g2, 0.1, 0.7);
  SampledFunction f(g2, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2.0 * a.contains(i) + 1.0 * b.contains(i);
  const double va = weighted_measure(a, v), vb = weighted_measure(b, v);
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(lorentz_p1_norm(f, v, p) ==
          doctest::Approx(p * (std::pow(va + vb, 1.0 / p) + std::pow(va, 1.0 / p))).epsilon(1e-14));
  }
  CHECK(lp_norm(SampledFunction(g2, 3.0), Weight::unit(g2), 2.0) == doctest::Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("homogeneity and layer cake") {
  const auto g = make_grid(1, -1.0, 1.0, 512);
  Rng rng(13);
  for (const auto& v : test_weights(g)) {
    const auto f = oracle::random_function(rng, g);
    for (double p : {1.0, 2.0, 5.0}) {
      CHECK(weak_norm(scale(f, 2.0), v, p) == doctest::Approx(2.0 * weak_norm(f, v, p)).epsilon(1e-14));
      CHECK(lorentz_p1_norm(scale(f, -3.0), v, p) == doctest::Approx(3.0 * lorentz_p1_norm(f, v, p)).epsilon(1e-14));
      CHECK(lp_norm_layer_cake(DistributionFn(f, v), p) == doctest::Approx(lp_norm(f, v, p)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(weak_norm(SampledFunction(g, 1.0), Weight::unit(g), 0.5), DomainError);
  CHECK_THROWS_AS(lorentz_p1_norm(SampledFunction(g, 1.0), Weight::unit(g), 0.5), DomainError);
  CHECK_THROWS_AS(lp_norm(SampledFunction(g, 1.0), Weight::unit(g), 0.5), DomainError);
}

TEST_CASE("embeddings with constant one") {
  const auto g = make_grid(1, -1.0, 1.0, 256);
  const auto ws = test_weights(g);
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = oracle::random_function(rng, g);
    const auto& v = ws[static_cast<std::size_t>(trial) % ws.size()];
    const double p = rng.uniform(1.0, 6.0);
    const double w = weak_norm(f, v, p), l = lp_norm(f, v, p), l1 = lorentz_p1_norm(f, v, p);
    CHECK(w <= l * (1.0 + 1e-12));
    CHECK(l <= l1 * (1.0 + 1e-12));
  }
}

TEST_CASE("Holder inequality for L^{p,1} and L^{p',inf}") {
  const auto g = make_grid(1, -1.0, 1.0, 256);
  const auto ws = test_weights(g);
  Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = oracle::random_function(rng, g), k = oracle::random_function(rng, g);
    const auto& v = ws[static_cast<std::size_t>(trial) % ws.size()];
    const double p = rng.uniform(1.05, 6.0), dual = p / (p - 1.0);
    const double lhs = integrate(multiply(abs(f), abs(k)), v);
    CHECK(lhs <= lorentz_p1_norm(f, v, p) * weak_norm(k, v, dual) + 1e-9);
  }
}

TEST_CASE("Kolmogorov sandwich") {
  const auto g = make_grid(1, -1.0, 1.0, 256);
  const auto ws = test_weights(g);
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_function(rng, g);
    const auto& v = ws[static_cast<std::size_t>(trial) % ws.size()];
    for (const auto& [p, r] : {std::pair{2.0, 1.0}, std::pair{3.0, 2.0}}) {
      const double w = weak_norm(f, v, p), k = kolmogorov_sup(f, v, p, r);
      CHECK(k >= w * (1.0 - 1e-12));
      CHECK(k <= std::pow(p / (p - r), 1.0 / r) * w + 1e-9);
    }
  }
  CHECK_THROWS_AS(kolmogorov_sup(SampledFunction(g, 1.0), Weight::unit(g), 2.0, 2.0), DomainError);
}

TEST_CASE("rearrangement") {
  const auto g = make_grid(1, 0.0, 4.0, 64);
  const auto e = CellSet::interval(g, 1.0, 2.5);
  const auto r = decreasing_rearrangement(e.indicator());
  CHECK(r(0.0) == 1.0);
  CHECK(r(1.5 - 1e-9) == 1.0);
  CHECK(r(1.5) == 0.0);
  CHECK(r.total_measure() == doctest::Approx(4.0));

  // Already sorted data comes back unchanged.
  std::vector<double> sorted(64);
  for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i] = 64.0 - static_cast<double>(i);
  const auto rs = decreasing_rearrangement(SampledFunction(g, sorted));
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(rs(g->h() * (static_cast<double>(i) + 0.5)) == sorted[i]);

  // Equimeasurable with |f|.
  Rng rng(29);
  const Weight v(sample([](double x) { return 1.0 + x; }, g));
  const auto f = oracle::random_function(rng, g);
  const auto rf = decreasing_rearrangement(f, v);
  const DistributionFn lambda(f, v);
  for (double y : {0.0, 0.1, 0.35, 0.6, 0.9}) {
    double mass = 0.0;
    for (std::size_t k = 0; k < rf.values().size(); ++k)
      if (rf.values()[k] > y) mass += rf.cuts()[k + 1] - rf.cuts()[k];
    CHECK(mass == doctest::Approx(lambda(y)).epsilon(1e-12));
  }
}

TEST_CASE("L1 + Linf norm") {
  const auto g = make_grid(1, -2.0, 2.0, 512);
  CHECK(l1_plus_linf_norm(CellSet::interval(g, -1.0, 0.5).indicator()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(l1_plus_linf_norm(CellSet::interval(g, -0.25, 0.25).indicator()) == doctest::Approx(0.5).epsilon(1e-14));
  Rng rng(31);
  const auto f = oracle::random_function(rng, g);
  CHECK(l1_plus_linf_norm(scale(f, 2.5)) == doctest::Approx(2.5 * l1_plus_linf_norm(f)).epsilon(1e-14));
}

}
