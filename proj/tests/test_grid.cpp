#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "weightlab/grid.hpp"

using namespace weightlab;

TEST_SUITE("grid") {

TEST_CASE("cell centres") {
  const auto g = make_grid(1, -1.0, 1.0, 4);
  CHECK(g->axis_centers() == std::vector<double>{-0.75, -0.25, 0.25, 0.75});
  CHECK(make_grid(1, 0.0, 1.0, 2)->axis_centers() == std::vector<double>{0.25, 0.75});
  const auto g2 = make_grid(2, -1.0, 1.0, 128);
  CHECK(g2->size() == 128u * 128u);
  CHECK(g2->h() == 1.0 / 64.0);
  // Row-major: index i * n + j has axis-0 coordinate centre(i).
  const auto p = g2->center_point(3 * 128 + 5);
  CHECK(p[0] == g2->center(3));
  CHECK(p[1] == g2->center(5));
}

TEST_CASE("bad extents") {
  CHECK_THROWS_AS(make_grid(1, 1.0, 1.0, 8), DomainError);
  CHECK_THROWS_AS(make_grid(1, 1.0, -1.0, 8), DomainError);
  CHECK_THROWS_AS(make_grid(1, -1.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(make_grid(3, -1.0, 1.0, 8), DomainError);
}

TEST_CASE("origin offset rule") {
  CHECK(make_grid(1, -1.0, 1.0, 1024)->centers_avoid_origin());
  CHECK_FALSE(make_grid(1, -1.0, 1.0, 1023)->centers_avoid_origin());
  CHECK(make_grid(1, 0.5, 1.0, 3)->centers_avoid_origin());
}

TEST_CASE("sampling") {
  const auto g = make_grid(1, -1.0, 1.0, 1024);
  const auto ones = sample([](double) { return 1.0; }, g);
  for (double x : ones.values()) CHECK(x == 1.0);

  const auto s = sample([](double x) { return std::pow(std::abs(x), -0.5); }, g);
  const double lo = *std::min_element(s.values().begin(), s.values().end());
  const double hi = *std::max_element(s.values().begin(), s.values().end());
  CHECK(lo == doctest::Approx(1.0 / std::sqrt(1.0 - g->h() / 2)));
  CHECK(hi == doctest::Approx(std::pow(g->h() / 2, -0.5)).epsilon(1e-14));

  const auto g4 = make_grid(1, -2.0, 2.0, 1024);
  const auto chi = sample([](double x) { return x >= 0.0 && x <= 1.0 ? 1.0 : 0.0; }, g4);
  for (double x : chi.values()) CHECK((x == 0.0 || x == 1.0));
  CHECK(integrate(chi) == doctest::Approx(1.0));

  CHECK_THROWS_AS(sample([](double x) { return 1.0 / x; }, make_grid(1, -1.0, 1.0, 1023)), DomainError);
}

TEST_CASE("weighted measure") {
  const auto g = make_grid(1, -1.0, 1.0, 256);
  CHECK(weighted_measure(CellSet::all(g), Weight::unit(g)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(weighted_measure(CellSet::none(g), Weight::unit(g)) == 0.0);

  const auto gf = make_grid(1, -1.0, 1.0, 1 << 14);
  const Weight v(sample([](double x) { return std::pow(std::abs(x), -0.5); }, gf));
  // int_0^1 x^{-1/2} dx = 2
  CHECK(std::abs(weighted_measure(CellSet::interval(gf, 0.0, 1.0), v) - 2.0) <= 0.04);

  // Additivity over disjoint sets.
  const auto a = CellSet::interval(gf, -0.7, -0.2), b = CellSet::interval(gf, 0.1, 0.6);
  CHECK(weighted_measure(a | b, v) == doctest::Approx(weighted_measure(a, v) + weighted_measure(b, v)).epsilon(1e-14));

  CHECK_THROWS_AS(weighted_measure(CellSet::all(g), Weight::unit(make_grid(1, -1.0, 1.0, 128))), GridMismatch);
}

TEST_CASE("integrate") {
  const auto g = make_grid(2, -1.0, 1.0, 64);
  CHECK(integrate(SampledFunction(g, 3.0)) == doctest::Approx(12.0).epsilon(1e-14));

  Rng rng(7);
  const auto g1 = make_grid(1, -1.0, 1.0, 512);
  const auto f = oracle::random_function(rng, g1), k = oracle::random_function(rng, g1);
  SampledFunction sum(g1, 0.0);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = 2.0 * f[i] - 3.0 * k[i];
  CHECK(integrate(sum) == doctest::Approx(2.0 * integrate(f) - 3.0 * integrate(k)).epsilon(1e-12));

  const auto gg = make_grid(1, -8.0, 8.0, 4096);
  const auto gauss = sample([](double x) { return std::exp(-x * x); }, gg);
  CHECK(std::abs(integrate(gauss) - std::sqrt(std::numbers::pi)) <= 1e-6);
}

}
