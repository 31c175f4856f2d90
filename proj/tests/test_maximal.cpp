#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weightlab/maximal.hpp"

using namespace weightlab;

TEST_SUITE("maximal") {

TEST_CASE("constant input") {
  for (int dim : {1, 2}) {
    const auto g = make_grid(dim, -1.0, 1.0, 32);
    const auto m = hl_maximal(SampledFunction(g, -2.5));
    for (double x : m.values()) CHECK(x == doctest::Approx(2.5).epsilon(1e-15));
  }
}

TEST_CASE("indicator of [0,1] on [-4,4]") {
  const auto g = make_grid(1, -4.0, 4.0, 512);
  const auto f = CellSet::interval(g, 0.0, 1.0).indicator();
  const auto m = hl_maximal(f);
  const auto ref = oracle::maximal_1d(f.values());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    const double x = g->center(i);
    // Continuum profile 1 / max(1, x, 1 - x), up to one cell.
    CHECK(std::abs(m[i] - 1.0 / std::max({1.0, x, 1.0 - x})) <= 4.0 * g->h());
  }
}

TEST_CASE("fast path matches brute force") {
  Rng rng(20240601);
  const auto g1 = make_grid(1, -1.0, 1.0, 256);
  const auto g2 = make_grid(2, -1.0, 1.0, 24);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f1 = oracle::random_function(rng, g1);
    CHECK(max_abs_diff(hl_maximal(f1), SampledFunction(g1, oracle::maximal_1d(f1.values()))) <= 1e-12);
    CHECK(max_abs_diff(hl_maximal(f1), hl_maximal(f1, MaximalMethod::oracle)) <= 1e-12);
    const auto f2 = oracle::random_function(rng, g2);
    CHECK(max_abs_diff(hl_maximal(f2), SampledFunction(g2, oracle::maximal_2d(f2.values(), 24))) <= 1e-12);
  }
  const auto out = hl_maximal_output(oracle::random_function(rng, g1), MaximalMethod::oracle);
  CHECK(out.method == MaximalMethod::oracle);
}

TEST_CASE("weighted maximal") {
  const auto g = make_grid(1, -1.0, 1.0, 128);
  Rng rng(11);
  const auto f = oracle::random_function(rng, g);
  CHECK(max_abs_diff(weighted_maximal(f, Weight::unit(g)), hl_maximal(f)) <= 1e-15);

  const Weight u0(sample([](double x) { return std::pow(std::abs(x), -0.5); }, g));
  const auto flat = weighted_maximal(SampledFunction(g, 1.0), u0);
  for (double x : flat.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));

  for (int trial = 0; trial < 5; ++trial) {
    const auto r = oracle::random_function(rng, g);
    const auto ref = oracle::weighted_maximal_1d(r.values(), u0.base().values());
    CHECK(max_abs_diff(weighted_maximal(r, u0), SampledFunction(g, ref)) <= 1e-12);
    CHECK(max_abs_diff(weighted_maximal(r, u0), weighted_maximal(r, u0, MaximalMethod::oracle)) <= 1e-12);
  }
  CHECK_THROWS_AS(weighted_maximal(f, Weight::unit(make_grid(1, -1.0, 1.0, 64))), GridMismatch);
}

TEST_CASE("power maximal") {
  const auto g = make_grid(1, -1.0, 1.0, 200);
  Rng rng(3);
  const auto f = oracle::random_function(rng, g);
  CHECK(power_maximal(f, 1.0).values() == hl_maximal(f).values());

  const auto chi = CellSet::interval(g, -0.3, 0.1).indicator();
  const auto m = hl_maximal(chi);
  for (double mu : {0.25, 0.5, 0.9}) {
    const auto pm = power_maximal(chi, mu);
    for (std::size_t i = 0; i < pm.size(); ++i) CHECK(pm[i] == doctest::Approx(std::pow(m[i], mu)).epsilon(1e-14));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = oracle::random_function(rng, g);
    const auto pm = power_maximal(r, rng.uniform(0.05, 1.0));
    bool dominates = true;
    for (std::size_t i = 0; i < r.size(); ++i) dominates = dominates && pm[i] >= std::abs(r[i]) * (1.0 - 1e-14);
    CHECK(dominates);
  }
  CHECK_THROWS_AS(power_maximal(f, 0.0), DomainError);
  CHECK_THROWS_AS(power_maximal(f, 1.5), DomainError);
}

}
