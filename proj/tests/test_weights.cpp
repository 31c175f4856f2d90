#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weightlab/weights.hpp"

using namespace weightlab;

namespace {

Weight power_weight(const GridPtr& g, double a) {
  return Weight(sample([a](double x) { return std::pow(std::abs(x), -a); }, g));
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("unit weight constants") {
  for (int dim : {1, 2}) {
    const auto g = make_grid(dim, -1.0, 1.0, dim == 1 ? 512 : 32);
    CHECK(a1_constant(Weight::unit(g)) == 1.0);
    for (double p : {1.5, 2.0, 3.0}) CHECK(std::abs(ap_constant(Weight::unit(g), p) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(ap_constant(Weight::unit(make_grid(1, -1.0, 1.0, 8)), 1.0), DomainError);
}

TEST_CASE("A1 goldens for power weights") {
  // Frozen from the O(n^2) sweep in oracles.hpp on [-1, 1], n = 4096.
  const auto g = make_grid(1, -1.0, 1.0, 4096);
  const std::pair<double, double> golden[] = {
      {0.3, 1.5749272256109532}, {0.6, 3.1083470255550458}, {0.9, 9.3944932195767237}};
  double prev = 1.0;
  for (const auto& [a, value] : golden) {
    const double c = a1_constant(power_weight(g, a));
    CHECK(c == doctest::Approx(value).epsilon(1e-12));
    CHECK(c > prev);
    CHECK(c <= power_weight_a1_bound(a));
    prev = c;
  }
}

TEST_CASE("A1 golden for a maximal-function weight") {
  const auto g = make_grid(1, -1.0, 1.0, 4096);
  const auto mh = hl_maximal(CellSet::interval(g, 0.0, 0.1).indicator());
  CHECK(a1_constant(Weight(pow(mh, 0.5))) == doctest::Approx(1.8111492828568883).epsilon(1e-12));
}

TEST_CASE("Ap golden and duality") {
  const auto g = make_grid(1, -1.0, 1.0, 4096);
  const auto v = power_weight(g, -0.5);
  CHECK(ap_constant(v, 2.0) == doctest::Approx(1.4842127967838352).epsilon(1e-12));

  const auto gs = make_grid(1, -1.0, 1.0, 1024);
  const auto vs = power_weight(gs, -0.5);
  for (double p : {2.0, 3.0}) {
    CHECK(ap_constant(vs, p) == doctest::Approx(oracle::ap_1d(vs.base().values(), p)).epsilon(1e-12));
    const double dual = p / (p - 1.0);
    const Weight w(pow(vs.base(), 1.0 - dual));
    CHECK(std::abs(ap_constant(w, dual) / std::pow(ap_constant(vs, p), dual - 1.0) - 1.0) <= 1e-9);
  }
}

TEST_CASE("hat A_p factorization") {
  const auto g = make_grid(1, -1.0, 1.0, 512);
  const auto h = CellSet::interval(g, 0.0, 1.0).indicator();
  const auto v = hat_ap_from_factors(h, Weight::unit(g), 2.0);
  CHECK(v.certified_hat_norm == 1.0);
  const auto mh = hl_maximal(h);
  for (std::size_t i = 0; i < mh.size(); ++i) CHECK(v.v[i] == doctest::Approx(1.0 / mh[i]).epsilon(1e-15));

  const auto u = power_weight(g, 0.4);
  const auto near_one = hat_ap_from_factors(h, u, 1.0 + 1e-9);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(near_one.v[i] == doctest::Approx(u[i]).epsilon(1e-8));

  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto hr = oracle::random_function(rng, g);
    SampledFunction ur(g, 0.0);
    for (std::size_t i = 0; i < ur.size(); ++i) ur[i] = rng.uniform(0.5, 2.0);
    CHECK(hat_ap_from_factors(hr, Weight(ur), rng.uniform(1.1, 4.0)).reconstruction_residual() <= 1e-10);
  }
  CHECK_THROWS_AS(hat_ap_from_factors(SampledFunction(g, 0.0), u, 2.0), DomainError);
  CHECK_THROWS_AS(hat_ap_from_factors(h, u, 1.0), DomainError);
}

TEST_CASE("composed A1 weights") {
  const auto g = make_grid(1, -1.0, 1.0, 1024);
  const auto h = CellSet::interval(g, 0.0, 0.1).indicator();
  const auto flat = power_a1_compose(h, Weight::unit(g), 1e-6);
  for (double x : flat.base().values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(a1_constant(flat) == doctest::Approx(1.0).epsilon(1e-4));

  std::vector<double> measured, nominal;
  for (double mu : {0.3, 0.6, 0.9}) {
    const auto w = power_a1_compose(h, Weight::unit(g), mu);
    measured.push_back(a1_constant(w));
    nominal.push_back(1.0 / (1.0 - mu));
  }
  const auto fit = fit_kappa(measured, nominal);
  CHECK_FALSE(fit.degraded());
  for (std::size_t k = 0; k < measured.size(); ++k) CHECK(measured[k] <= fit.kappa * nominal[k] * (1.0 + 1e-12));

  // Once kappa is fitted the certificate dominates every member.
  for (double mu : {0.3, 0.6, 0.9}) {
    const auto w = power_a1_compose(h, Weight::unit(g), mu, fit.kappa);
    CHECK(a1_constant(w) <= *w.certified_a1() * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(power_a1_compose(h, Weight::unit(g), 0.0), DomainError);
  CHECK_THROWS_AS(power_a1_compose(h, Weight::unit(g), 1.0), DomainError);
}

TEST_CASE("self improvement") {
  const auto g1 = make_grid(1, -1.0, 1.0, 256);
  const auto s1 = self_improve(Weight::unit(g1), 1);
  CHECK(s1.t == 1.25);
  for (double x : s1.weight.base().values()) CHECK(x == 1.0);
  CHECK(self_improve(Weight::unit(make_grid(2, -1.0, 1.0, 16)), 2).t == 1.125);

  const auto g = make_grid(1, -1.0, 1.0, 2048);
  std::vector<double> improved, base;
  for (double a : {0.3, 0.6, 0.9}) {
    const auto u = power_weight(g, a);
    improved.push_back(a1_constant(self_improve(u, 1).weight));
    base.push_back(a1_constant(u));
  }
  const auto fit = fit_kappa(improved, base);
  CHECK_FALSE(fit.degraded());
  CHECK(fit.kappa >= 1.0);
}

TEST_CASE("limited classes") {
  const auto g = make_grid(1, -1.0, 1.0, 512);
  const auto u = power_weight(g, 0.3);
  const auto lw = limited_weight_ap(2.0, 1.0, 0.0, u, Weight::unit(g));
  CHECK(max_abs_diff(lw.v.base(), u.base()) <= 1e-15);
  CHECK(lw.certified_norm == doctest::Approx(a1_bound(u)).epsilon(1e-15));
  CHECK(lw.reconstruction_residual() <= 1e-12);

  CHECK_THROWS_AS(limited_weight_ap(2.0, 0.0, 0.0, u, u), DomainError);
  CHECK_THROWS_AS(limited_weight_ap(2.0, 1.5, 0.0, u, u), DomainError);
  CHECK_THROWS_AS(limited_weight_ap(2.0, 0.5, -0.1, u, u), DomainError);

  const auto h = CellSet::interval(g, 0.0, 0.1).indicator();
  const auto hw = limited_weight_hat(2.0, 0.5, 0.5, Weight::unit(g), h);
  CHECK(hw.certified_norm == 1.0);
  CHECK(hw.reconstruction_residual() <= 1e-12);
}

TEST_CASE("families") {
  const auto g = make_grid(1, -1.0, 1.0, 2048);
  FamilyParams fp;
  fp.a_list = {0.0};
  const auto unit = weight_family("power", fp, g);
  for (double x : unit.front().base().values()) CHECK(x == 1.0);

  fp.a_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const auto ws = weight_family("power", fp, g);
  REQUIRE(ws.size() == 9);
  double prev = 1.0;
  for (const auto& w : ws) {
    const double c = a1_constant(w);
    CHECK(c > prev);
    CHECK(c <= *w.certified_a1());
    prev = c;
  }
  CHECK(family_parameters("power", fp) == fp.a_list);

  fp.k_factor = "sine";
  for (const auto& w : weight_family("composed_power", fp, g)) CHECK(a1_constant(w) <= *w.certified_a1());

  FamilyParams mp;
  mp.mu_list = {0.5};
  const auto mh = weight_family("mh_power", mp, g).front();
  const auto ref = pow(hl_maximal(CellSet::interval(g, 0.0, 0.1).indicator()), 0.5);
  CHECK(max_abs_diff(mh.base(), ref) <= 1e-15);
  CHECK(std::isfinite(a1_constant(mh)));

  fp.a_list = {1.0};
  CHECK_THROWS_AS(weight_family("power", fp, g), DomainError);
  CHECK_THROWS_AS(weight_family("power", FamilyParams{}, make_grid(1, -1.0, 1.0, 2047)), DomainError);
  CHECK_THROWS_AS(weight_family("nope", FamilyParams{}, g), NameError);
}

}
