#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;
inline constexpr int kSetDictionaryVersion = 1;

// ---------------------------------------------------------------------------
// Configuration
//
// Flat "section.key" settings. Values left at "auto" are filled in by the
// suite, and the resolved values are echoed into the report.

class ExperimentConfig {
 public:
  ExperimentConfig();

  /// All recognised keys with their defaults, in a fixed order.
  static const std::vector<std::pair<std::string, std::string>>& known_keys();

  void set(const std::string& key, const std::string& value);
  /// "key=value".
  void set_assignment(const std::string& assignment);
  /// Plain-text file: "[section]" headers, "key = value" lines, '#' comments.
  void load_file(const std::string& path);

  const std::string& get(const std::string& key) const;
  bool is_auto(const std::string& key) const { return get(key) == "auto"; }
  /// Replace "auto" by a suite default.
  void resolve(const std::string& key, const std::string& fallback);

  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string format_number(double x);

// ---------------------------------------------------------------------------
// Reports

struct CaseRecord {
  std::string suite;
  std::string case_name;
  double family_param = 0.0;
  double weight_constant = 0.0;
  double measured_ratio = 0.0;
  double reference_constant = 0.0;
  double normalized_ratio = 0.0;
  std::string note;
};

struct SlopeFit {
  std::string name;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual in log space.
  double residual = 0.0;
  std::size_t points = 0;
};

enum class VerdictKind { identity, stability, slope, bound, report_only };

struct Verdict {
  std::string name;
  VerdictKind kind = VerdictKind::identity;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string detail;
};

struct Runtime {
  std::string timestamp;
  double elapsed_seconds = 0.0;
};

struct Report {
  std::string suite;
  std::map<std::string, std::string> config;
  std::vector<CaseRecord> cases;
  std::vector<SlopeFit> fits;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::optional<Runtime> runtime;

  bool passed() const;
  void add_verdict(Verdict v) { verdicts.push_back(std::move(v)); }
};

/// JSON text; runtime metadata is left out when include_runtime is false.
std::string report_json(const Report& r, bool include_runtime = true);
Report report_from_json(const std::string& text);
std::string report_csv(const Report& r);
const std::vector<std::string>& csv_columns();

/// Writes <dir>/<suite>.<format> and returns the path.
std::string emit_report(const Report& r, const std::string& dir, const std::string& format);

// ---------------------------------------------------------------------------
// Shared experiment pieces

/// Reproducible uniform numbers: mt19937_64 with (x >> 11) * 2^-53 on [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

struct NamedSet {
  std::string name;
  CellSet set;
};

/// Versioned set dictionary: intervals (squares in 2D) of side 0.05, 0.2, 0.5
/// centred at -0.5, 0, 0.35 (on the diagonal in 2D), plus the union of
/// [-0.6, -0.5] and [0.3, 0.45] (or the matching squares).
std::vector<NamedSet> set_dictionary(const GridPtr& grid);

/// Haar-type delta-atom: +1/|Q| on the left half of Q, -1/|Q| on the right.
struct DeltaAtom {
  double center;
  double length;  // |Q|, an even number of cells, <= delta
  SampledFunction values;
};

DeltaAtom make_delta_atom(const GridPtr& grid, double center, double delta);

SlopeFit fit_loglog(const std::string& name, const std::vector<double>& x, const std::vector<double>& y);

/// One-sided family stability: max_i q_i / q_0 <= factor, q_i = measured / reference.
Verdict stability_verdict(const std::string& name, const std::vector<double>& measured,
                          const std::vector<double>& reference, double factor);

/// Runs body(i) for i in [0, n) on a small work queue; results are indexed, so
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

// ---------------------------------------------------------------------------
// Suites

using SuiteFn = std::function<Report(ExperimentConfig)>;

struct SuiteInfo {
  std::string name;
  std::string description;
  SuiteFn run;
};

const std::vector<SuiteInfo>& suites();

Report suite_maximal_weak11(ExperimentConfig cfg);
Report suite_main_theorem(ExperimentConfig cfg);
Report suite_lemma_difi(ExperimentConfig cfg);
Report suite_sawyer(ExperimentConfig cfg);
Report suite_fefferman_stein(ExperimentConfig cfg);
Report suite_atoms(ExperimentConfig cfg);
Report suite_average(ExperimentConfig cfg);
Report suite_grid_refinement(ExperimentConfig cfg);

/// Looks up run.suite and runs it, filling in runtime metadata.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace weightlab
