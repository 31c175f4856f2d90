#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "weightlab/error.hpp"
#include "weightlab/extrapolation.hpp"
#include "weightlab/harness.hpp"

using namespace weightlab;

namespace {

std::string shape(const GrowthFn& g) {
  if (g.opaque) return "phi(r^" + to_string(g.arg_exponent) + "), phi nondecreasing and unspecified";
  std::string s = g.A == 1.0 ? "" : format_number(g.A) + " ";
  s += "r^" + to_string(g.a);
  if (g.b != Rational(0)) s += (g.log_form == LogForm::one_plus_log ? " (1+log r)^" : " log(1+r)^") + to_string(g.b);
  return s;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
  // Decimal input is read exactly as a finite fraction.
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  long long den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  return {std::stoll(digits), den};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weightlab: weighted inequality experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a verification suite and write its report");
  std::string suite, config_file, out_dir = "reports", format = "json";
  std::string grid_n, dim, p, family, a_list, seed, threads;
  std::vector<std::string> assignments;
  bool quiet = false;
  run->add_option("--suite", suite, "suite name (see list-suites)")->required();
  run->add_option("--config", config_file, "key-value file with [section] headers");
  run->add_option("--grid-n", grid_n, "cells per side");
  run->add_option("--dim", dim, "1 or 2");
  run->add_option("--p", p, "exponent p");
  run->add_option("--family", family, "weight family: power, composed_power, mh_power");
  run->add_option("--a-list", a_list, "comma separated family parameters");
  run->add_option("--seed", seed, "rng seed");
  run->add_option("--threads", threads, "worker threads, 0 = hardware");
  run->add_option("--set", assignments, "override any key: section.key=value");
  run->add_option("--out", out_dir, "report directory");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_flag("--quiet", quiet, "do not print verdicts");

  app.add_subcommand("list-suites", "list suites with a one-line description");

  auto* constants = app.add_subcommand("constants", "print the shape of a reference growth function");
  std::string cname, lambda = "1/2", cp;
  int n = 2;
  constants->add_option("--name", cname, "bochner_critical, bochner_n2, bochner_high_dim")->required();
  constants->add_option("--lambda", lambda, "Bochner-Riesz index, as a fraction or decimal");
  constants->add_option("--n", n, "dimension");
  constants->add_option("--p", cp, "also print the shape of the upward extrapolated Phi at this p");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-suites")) {
      for (const auto& s : suites()) std::printf("%-16s %s\n", s.name.c_str(), s.description.c_str());
      return 0;
    }
    if (app.got_subcommand("constants")) {
      const auto g = reference_constants(cname, parse_rational(lambda), n);
      std::printf("%s: %s\n", cname.c_str(), shape(g).c_str());
      if (!cp.empty()) {
        const auto up = phi_up_symbolic(g, parse_rational(cp), 1.0, 1.0);
        std::printf("Phi at p=%s: %s\n", cp.c_str(), up.opaque ? "not a power-log shape" : shape(up).c_str());
      }
      return 0;
    }

    ExperimentConfig cfg;
    if (!config_file.empty()) cfg.load_file(config_file);
    // Flags win over the file.
    cfg.set("run.suite", suite);
    const std::pair<const std::string*, const char*> flags[] = {
        {&grid_n, "grid.n"}, {&dim, "grid.dim"}, {&p, "run.p"},        {&family, "weights.family"},
        {&a_list, "weights.a_list"}, {&seed, "run.seed"}, {&threads, "run.threads"}};
    for (const auto& [value, key] : flags)
      if (!value->empty()) cfg.set(key, *value);
    for (const auto& a : assignments) cfg.set_assignment(a);

    const auto report = run_experiment(cfg);
    const auto path = emit_report(report, out_dir, format);
    if (!quiet) {
      for (const auto& v : report.verdicts)
        std::printf("%-4s %s (value %s, tolerance %s)\n", v.pass ? "ok" : "FAIL", v.name.c_str(),
                    format_number(v.value).c_str(), format_number(v.tolerance).c_str());
      std::printf("report: %s\n", path.c_str());
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "weightlab: %s\n", e.what());
    return 2;
  }
}
