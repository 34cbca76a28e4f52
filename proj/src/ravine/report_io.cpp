#include "ravopt/ravine/report_io.hpp"

#include "ravopt/problems/instance_io.hpp"

#include <cmath>

namespace ravopt::ravine {

using nlohmann::json;

namespace {

// JSON has no infinities; they travel as strings.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void to_json(json& j, const DiagnosticsReport& rep) {
  json details = json::array();
  for (const auto& s : rep.details) details.push_back({{"point", vector_to_json(s.point)}, {"ratio", number(s.ratio)}});
  json metrics = json::object();
  for (const auto& [k, v] : rep.metrics) metrics[k] = number(v);
  j = json{{"check", rep.check},
           {"problem", rep.problem},
           {"samples_tested", rep.samples_tested},
           {"samples_skipped", rep.samples_skipped},
           {"measured_lower", number(rep.measured_lower)},
           {"measured_upper", number(rep.measured_upper)},
           {"bracket_lower", number(rep.bracket_lower)},
           {"bracket_upper", number(rep.bracket_upper)},
           {"pass", rep.pass},
           {"details", details},
           {"metrics", metrics},
           {"note", rep.note}};
}

void from_json(const json& j, DiagnosticsReport& rep) {
  rep.check = j.at("check").get<std::string>();
  rep.problem = j.at("problem").get<std::string>();
  rep.samples_tested = j.at("samples_tested").get<int>();
  rep.samples_skipped = j.at("samples_skipped").get<int>();
  rep.measured_lower = read_number(j.at("measured_lower"));
  rep.measured_upper = read_number(j.at("measured_upper"));
  rep.bracket_lower = read_number(j.at("bracket_lower"));
  rep.bracket_upper = read_number(j.at("bracket_upper"));
  rep.pass = j.at("pass").get<bool>();
  rep.details.clear();
  for (const json& s : j.at("details"))
    rep.details.push_back({vector_from_json(s.at("point")), read_number(s.at("ratio"))});
  rep.metrics.clear();
  for (const auto& [k, v] : j.at("metrics").items()) rep.metrics[k] = read_number(v);
  rep.note = j.value("note", std::string());
}

}  // namespace ravopt::ravine
