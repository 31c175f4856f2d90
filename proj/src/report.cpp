#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "weightlab/harness.hpp"

namespace weightlab {

namespace {

using json = nlohmann::ordered_json;

const char* kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::identity: return "identity";
    case VerdictKind::stability: return "stability";
    case VerdictKind::slope: return "slope";
    case VerdictKind::bound: return "bound";
    case VerdictKind::report_only: return "report_only";
  }
  return "identity";
}

VerdictKind kind_from(const std::string& s) {
  for (auto k : {VerdictKind::identity, VerdictKind::stability, VerdictKind::slope, VerdictKind::bound,
                 VerdictKind::report_only})
    if (s == kind_name(k)) return k;
  throw Error("unknown verdict kind '" + s + "'");
}

// JSON has no inf/nan; they are written as null and read back as nan.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double from_num(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool Report::passed() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"suite",           "case",           "family_param",
                                                "weight_constant", "measured_ratio", "reference_constant",
                                                "normalized_ratio", "note"};
  return cols;
}

std::string report_json(const Report& r, bool include_runtime) {
  json j;
  j["schema"] = kReportSchema;
  j["library"] = "weightlab";
  j["version"] = kVersion;
  j["suite"] = r.suite;
  j["set_dictionary"] = kSetDictionaryVersion;
  json cfg = json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"suite", c.suite},
                     {"case", c.case_name},
                     {"family_param", num(c.family_param)},
                     {"weight_constant", num(c.weight_constant)},
                     {"measured_ratio", num(c.measured_ratio)},
                     {"reference_constant", num(c.reference_constant)},
                     {"normalized_ratio", num(c.normalized_ratio)},
                     {"note", c.note}});
  }
  j["cases"] = cases;
  json fits = json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"name", f.name},
                    {"slope", num(f.slope)},
                    {"intercept", num(f.intercept)},
                    {"residual", num(f.residual)},
                    {"points", f.points}});
  j["fits"] = fits;
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name},
                        {"kind", kind_name(v.kind)},
                        {"value", num(v.value)},
                        {"tolerance", num(v.tolerance)},
                        {"pass", v.pass},
                        {"detail", v.detail}});
  j["verdicts"] = verdicts;
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  if (include_runtime && r.runtime)
    j["runtime"] = {{"timestamp", r.runtime->timestamp}, {"elapsed_seconds", r.runtime->elapsed_seconds}};
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  const auto j = json::parse(text);
  if (j.at("schema").get<int>() != kReportSchema) throw Error("unsupported report schema");
  Report r;
  r.suite = j.at("suite").get<std::string>();
  for (const auto& [k, v] : j.at("config").items()) r.config[k] = v.get<std::string>();
  for (const auto& c : j.at("cases"))
    r.cases.push_back({c.at("suite").get<std::string>(), c.at("case").get<std::string>(), from_num(c.at("family_param")),
                       from_num(c.at("weight_constant")), from_num(c.at("measured_ratio")),
                       from_num(c.at("reference_constant")), from_num(c.at("normalized_ratio")),
                       c.at("note").get<std::string>()});
  for (const auto& f : j.at("fits"))
    r.fits.push_back({f.at("name").get<std::string>(), from_num(f.at("slope")), from_num(f.at("intercept")),
                      from_num(f.at("residual")), f.at("points").get<std::size_t>()});
  for (const auto& v : j.at("verdicts"))
    r.verdicts.push_back({v.at("name").get<std::string>(), kind_from(v.at("kind").get<std::string>()),
                          from_num(v.at("value")), from_num(v.at("tolerance")), v.at("pass").get<bool>(),
                          v.at("detail").get<std::string>()});
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("runtime"))
    r.runtime = Runtime{j["runtime"].at("timestamp").get<std::string>(),
                        j["runtime"].at("elapsed_seconds").get<double>()};
  return r;
}

std::string report_csv(const Report& r) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& c : r.cases) {
    out += csv_field(c.suite) + "," + csv_field(c.case_name) + "," + format_number(c.family_param) + "," +
           format_number(c.weight_constant) + "," + format_number(c.measured_ratio) + "," +
           format_number(c.reference_constant) + "," + format_number(c.normalized_ratio) + "," + csv_field(c.note) +
           "\n";
  }
  return out;
}

std::string emit_report(const Report& r, const std::string& dir, const std::string& format) {
  if (format != "json" && format != "csv") throw NameError("unknown report format '" + format + "' (json, csv)");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = (std::filesystem::path(dir) / (r.suite + "." + format)).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to '" + path + "'");
  out << (format == "json" ? report_json(r) : report_csv(r));
  if (!out) throw Error("failed while writing '" + path + "'");
  return path;
}

}  // namespace weightlab
