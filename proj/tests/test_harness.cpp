#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "weightlab/harness.hpp"

using namespace weightlab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig quick(const std::string& suite) {
  ExperimentConfig cfg;
  cfg.set("run.suite", suite);
  // Atoms need room for delta = 2^-k_max * 4 at two cells or more.
  if (suite != "atoms") cfg.set("grid.n", "256");
  return cfg;
}

Report sample_report() {
  Report r;
  r.suite = "demo";
  r.config = {{"run.suite", "demo"}, {"grid.n", "8"}};
  r.cases.push_back({"demo", "a=0", 0.0, 1.0, 0.5, 1.0, 1.0, "note, with \"quotes\""});
  r.cases.push_back({"demo", "a=0.5", 0.5, 2.0, std::nan(""), INFINITY, 0.25, ""});
  r.fits.push_back({"fit", 0.9, -0.1, 0.01, 2});
  r.verdicts.push_back({"v", VerdictKind::slope, 0.9, 1.1, true, "detail"});
  r.notes.push_back("hello");
  r.runtime = Runtime{"2000-01-01T00:00:00Z", 0.5};
  return r;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("configuration") {
  ExperimentConfig cfg;
  CHECK(cfg.get("run.suite") == "maximal_weak11");
  CHECK(cfg.is_auto("grid.n"));
  cfg.resolve("grid.n", "64");
  CHECK(cfg.integer("grid.n") == 64);
  cfg.resolve("grid.n", "128");
  CHECK(cfg.integer("grid.n") == 64);
  CHECK(cfg.numbers("weights.a_list") == std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
  cfg.set_assignment("weights.mu = 0.25");
  CHECK(cfg.number("weights.mu") == 0.25);
  CHECK_THROWS_AS(cfg.set("grid.bogus", "1"), NameError);
  CHECK_THROWS_AS(cfg.get("nope"), NameError);
  CHECK_THROWS_AS(cfg.set_assignment("no equals sign"), Error);
  cfg.set("grid.dim", "two");
  CHECK_THROWS_AS(cfg.number("grid.dim"), Error);

  const auto path = (std::filesystem::temp_directory_path() / "weightlab_cfg_test.ini").string();
  {
    std::ofstream out(path);
    out << "# comment\n[run]\nsuite = atoms  # trailing\nseed=7\n\n[atoms]\nk_max = 6\n";
  }
  ExperimentConfig file;
  file.load_file(path);
  CHECK(file.get("run.suite") == "atoms");
  CHECK(file.integer("run.seed") == 7);
  CHECK(file.integer("atoms.k_max") == 6);
  {
    std::ofstream out(path);
    out << "[weights]\nunknown = 1\n";
  }
  CHECK_THROWS_AS(file.load_file(path), NameError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(file.load_file(path), Error);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 12345.678, -2.5, 0.0}) CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(INFINITY) == "inf");
}

TEST_CASE("report JSON") {
  const auto r = sample_report();
  const auto text = report_json(r);
  const auto back = report_from_json(text);
  CHECK(report_json(back) == text);
  CHECK(std::isnan(back.cases[1].measured_ratio));
  CHECK(std::isnan(back.cases[1].reference_constant));
  CHECK(back.passed());

  // Stable top-level layout.
  const std::string keys[] = {"\"schema\": 1",  "\"library\": \"weightlab\"", "\"version\"", "\"suite\"",
                              "\"set_dictionary\"", "\"config\"", "\"cases\"", "\"fits\"", "\"verdicts\"",
                              "\"notes\"", "\"passed\"", "\"runtime\""};
  std::size_t at = 0;
  for (const auto& k : keys) {
    const auto pos = text.find(k);
    REQUIRE(pos != std::string::npos);
    CHECK(pos > at);
    at = pos;
  }
  CHECK(report_json(r, false).find("runtime") == std::string::npos);
}

TEST_CASE("report CSV") {
  Report empty;
  empty.suite = "empty";
  CHECK(report_csv(empty) ==
        "suite,case,family_param,weight_constant,measured_ratio,reference_constant,normalized_ratio,note\n");
  const auto csv = report_csv(sample_report());
  CHECK(csv.find("\"note, with \"\"quotes\"\"\"") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const auto dir = (std::filesystem::temp_directory_path() / "weightlab_report_test").string();
  const auto path = emit_report(sample_report(), dir, "csv");
  CHECK(read_file(path) == csv);
  CHECK_THROWS_AS(emit_report(sample_report(), dir, "xml"), NameError);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(emit_report(sample_report(), "/proc/weightlab/nope", "json"), Error);
}

TEST_CASE("delta atoms") {
  const auto g = make_grid(1, -2.0, 2.0, 4096);
  for (int k = 3; k <= 8; ++k) {
    const double delta = std::ldexp(4.0, -k);
    const auto a = make_delta_atom(g, 0.0, delta);
    double sum = 0.0, l1 = 0.0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      sum += a.values[i];
      l1 += std::abs(a.values[i]) * g->h();
      if (a.values[i] != 0.0) {
        lo = std::min(lo, g->center(i));
        hi = std::max(hi, g->center(i));
      }
    }
    CHECK(sum == 0.0);
    CHECK(l1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.length <= delta);
    CHECK(hi - lo + g->h() <= a.length + 1e-12);
  }
  CHECK_THROWS_AS(make_delta_atom(g, 0.0, g->h()), DomainError);
  CHECK_THROWS_AS(make_delta_atom(g, 1.99, 0.5), DomainError);
}

TEST_CASE("fits and stability") {
  const auto fit = fit_loglog("x", {1.0, 2.0, 4.0}, {3.0, 6.0, 12.0});
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.residual <= 1e-14);
  CHECK(std::isnan(fit_loglog("x", {1.0}, {1.0}).slope));

  CHECK(stability_verdict("s", {1.0, 2.0, 3.9}, {1.0, 1.0, 1.0}, 4.0).pass);
  CHECK_FALSE(stability_verdict("s", {1.0, 2.0, 4.1}, {1.0, 1.0, 1.0}, 4.0).pass);
  // Decay is allowed: the bound is one-sided.
  CHECK(stability_verdict("s", {1.0, 0.01}, {1.0, 1.0}, 4.0).pass);
  CHECK_FALSE(stability_verdict("s", {}, {}, 4.0).pass);
}

TEST_CASE("parallel loop") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw DomainError("boom"); }, 3), DomainError);
}

TEST_CASE("suite registry and errors") {
  CHECK(suites().size() == 8);
  ExperimentConfig cfg;
  cfg.set("run.suite", "nope");
  CHECK_THROWS_AS(run_experiment(cfg), NameError);

  auto big = quick("maximal_weak11");
  big.set("grid.n", "4194304");
  CHECK_THROWS_AS(run_experiment(big), DomainError);

  auto sawyer = quick("sawyer");
  sawyer.set("run.p", "3");
  sawyer.set("sawyer.theta", "0.5001");
  CHECK_THROWS_AS(run_experiment(sawyer), DomainError);

  auto fs = quick("fefferman_stein");
  fs.set("fefferman_stein.q_list", "1");
  CHECK_THROWS_AS(run_experiment(fs), DomainError);

  auto lemma = quick("lemma_difi");
  lemma.set("lemma.theta", "0.4");
  CHECK_THROWS_AS(run_experiment(lemma), DomainError);
}

TEST_CASE("suites on small grids") {
  for (const auto& s : suites()) {
    auto cfg = quick(s.name);
    if (s.name == "grid_refinement") cfg.set("grid.n", "256,512");
    const auto r = run_experiment(cfg);
    CHECK_MESSAGE(r.passed(), s.name);
    CHECK(r.suite == s.name);
    CHECK(r.runtime.has_value());
    CHECK(r.config.at("run.suite") == s.name);
    for (const char* k : {"grid.n", "grid.lo", "grid.hi"})
      CHECK_MESSAGE(r.config.at(k) != "auto", s.name << " left " << k << " unresolved");
  }
  const auto weak = run_experiment(quick("maximal_weak11"));
  CHECK(weak.cases.size() >= 4);
}

TEST_CASE("unit weight in the main suite") {
  auto cfg = quick("main_theorem");
  cfg.set("weights.a_list", "0");
  const auto r = run_experiment(cfg);
  REQUIRE(r.cases.size() == 1);
  CHECK(r.cases[0].weight_constant == 1.0);
  CHECK(std::isfinite(r.cases[0].measured_ratio));
}

TEST_CASE("deterministic reports") {
  for (const char* name : {"maximal_weak11", "fefferman_stein", "average"}) {
    auto one = quick(name);
    one.set("run.threads", "1");
    auto many = quick(name);
    many.set("run.threads", "4");
    const auto a = report_json(run_experiment(one), false);
    const auto b = report_json(run_experiment(one), false);
    CHECK(a == b);
    // Thread count is echoed in the config; everything else must agree.
    auto rb = run_experiment(many);
    rb.config["run.threads"] = "1";
    CHECK(report_json(rb, false) == a);
  }
}

}
