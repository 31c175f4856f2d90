#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "weightlab/harness.hpp"

namespace weightlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& ExperimentConfig::known_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"run.suite", "maximal_weak11"},
      {"run.p", "auto"},
      {"run.seed", "12345"},
      {"run.threads", "0"},
      {"grid.n", "auto"},
      {"grid.dim", "1"},
      {"grid.lo", "auto"},
      {"grid.hi", "auto"},
      {"weights.family", "power"},
      {"weights.a_list", "0,0.1,0.2,0.3,0.4,0.5"},
      {"weights.mu", "0.5"},
      {"weights.k_factor", "one"},
      {"weights.kappa", "1"},
      {"operators.name", "hilbert"},
      {"operators.t", "0"},
      {"operators.lambda", "auto"},
      {"operators.padding", "1"},
      {"lemma.theta", "0.75"},
      {"lemma.mu", "1"},
      {"sawyer.theta", "0.75,0.9"},
      {"fefferman_stein.q_list", "1.5,2,4"},
      {"fefferman_stein.random_functions", "8"},
      {"atoms.k_min", "3"},
      {"atoms.k_max", "8"},
      {"atoms.kernel", "half_box"},
      {"tolerance.stability", "4"},
      {"tolerance.slope_slack", "0.1"},
      {"tolerance.atom_slope", "0.9"},
      {"extrapolation.C1", "1"},
      {"extrapolation.C2", "1"},
  };
  return keys;
}

ExperimentConfig::ExperimentConfig() {
  for (const auto& [k, v] : known_keys()) values_[k] = v;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw NameError("unknown configuration key '" + key + "'");
  it->second = trim(value);
}

void ExperimentConfig::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Error("expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read configuration file '" + path + "'");
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(path + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    set(section.empty() ? key : section + "." + key, line.substr(eq + 1));
  }
}

const std::string& ExperimentConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw NameError("unknown configuration key '" + key + "'");
  return it->second;
}

void ExperimentConfig::resolve(const std::string& key, const std::string& fallback) {
  if (is_auto(key)) set(key, fallback);
}

double ExperimentConfig::number(const std::string& key) const {
  const auto& s = get(key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error("configuration key '" + key + "' is not a number: '" + s + "'");
  return x;
}

long ExperimentConfig::integer(const std::string& key) const {
  const double x = number(key);
  if (x != std::floor(x)) throw Error("configuration key '" + key + "' must be an integer");
  return static_cast<long>(x);
}

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error("configuration key '" + key + "' has a non-numeric entry '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw Error("configuration key '" + key + "' needs at least one value");
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char trial[32];
    std::snprintf(trial, sizeof trial, "%.*g", prec, x);
    if (std::strtod(trial, nullptr) == x) return trial;
  }
  return buf;
}

}  // namespace weightlab
