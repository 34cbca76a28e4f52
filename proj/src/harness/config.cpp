#include "ravopt/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <vector>

namespace ravopt::harness {

using nlohmann::json;

std::string_view to_string(ProblemKind p) {
  switch (p) {
    case ProblemKind::quartic1d: return "quartic1d";
    case ProblemKind::rosenbrock: return "rosenbrock";
    case ProblemKind::circle: return "circle";
    case ProblemKind::factorization: return "factorization";
    case ProblemKind::sensing: return "sensing";
    case ProblemKind::neuron: return "neuron";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::gd: return "gd";
    case Method::polyak: return "polyak";
    case Method::gdpolyak: return "gdpolyak";
    case Method::gdpolyak_lb: return "gdpolyak_lb";
  }
  return "unknown";
}

ProblemKind parse_problem(std::string_view name) {
  for (auto p : {ProblemKind::quartic1d, ProblemKind::rosenbrock, ProblemKind::circle,
                 ProblemKind::factorization, ProblemKind::sensing, ProblemKind::neuron})
    if (to_string(p) == name) return p;
  throw Error(ErrorCode::ConfigInvalid, "problem: unknown value '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::gd, Method::polyak, Method::gdpolyak, Method::gdpolyak_lb})
    if (to_string(m) == name) return m;
  throw Error(ErrorCode::ConfigInvalid, "method: unknown value '" + std::string(name) + "'");
}

ExperimentConfig default_config(ProblemKind problem) {
  ExperimentConfig c;
  c.problem = problem;
  c.method = Method::gdpolyak;
  switch (problem) {
    case ProblemKind::quartic1d:
      c.eta = 0.0;
      c.K = 1;
      c.I = 40;
      c.init_radius = 1.0;
      break;
    case ProblemKind::rosenbrock:
      c.eta = 0.0125;
      c.K = 100;
      c.I = 50;
      c.init_radius = 0.5;
      break;
    case ProblemKind::circle:
      c.eta = 0.1;
      c.K = 50;
      c.I = 50;
      c.init_radius = 0.1;
      break;
    case ProblemKind::factorization:
      c.problem_params = {5, 2, 3, 0, 0};
      c.eta = 0.05;
      c.K = 100;
      c.I = 50;
      c.init_radius = 0.1;
      break;
    case ProblemKind::sensing:
      c.problem_params = {20, 2, 4, 10 * 20 * 4, 0};
      c.eta = 0.05;
      c.K = 300;
      c.I = 50;
      c.init_radius = 0.1;
      break;
    case ProblemKind::neuron:
      c.problem_params = {10, 0, 0, 0, 0};
      c.eta = 1.5;
      c.K = 100;
      c.I = 50;
      // |v| = 1 for generated teachers
      c.init_radius = 0.1;
      break;
  }
  return c;
}

void validate(const ExperimentConfig& c, bool require_method) {
  std::vector<std::string> problems;
  auto need = [&](bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  };
  need(!require_method || c.method.has_value(), "method: required");
  need(std::isfinite(c.eta) && c.eta >= 0.0, "eta: must be finite and >= 0");
  need(c.K >= 1, "K: must be >= 1");
  need(c.I >= 1, "I: must be >= 1");
  need(std::isfinite(c.init_radius) && c.init_radius > 0.0, "init_radius: must be > 0");
  const ProblemParams& p = c.problem_params;
  switch (c.problem) {
    case ProblemKind::factorization:
    case ProblemKind::sensing:
      need(p.d >= 1, "problem_params.d: must be >= 1");
      need(p.r >= 1 && p.r <= p.d, "problem_params.r: must satisfy 1 <= r <= d");
      need(p.k >= p.r, "problem_params.k: must satisfy k >= r");
      if (c.problem == ProblemKind::sensing) need(p.m >= 1, "problem_params.m: must be >= 1");
      break;
    case ProblemKind::neuron:
      need(p.d >= 1, "problem_params.d: must be >= 1");
      break;
    default:
      break;
  }
  if (c.method == Method::gdpolyak_lb) {
    need(c.J.has_value() && *c.J >= 1, "J: required (>= 1) for gdpolyak_lb");
    need(c.f_lb.has_value() && std::isfinite(*c.f_lb), "f_lb: required for gdpolyak_lb");
  } else if (c.method.has_value()) {
    need(!c.J.has_value(), "J: only valid for gdpolyak_lb");
    need(!c.f_lb.has_value(), "f_lb: only valid for gdpolyak_lb");
  }
  if (c.gap_threshold) need(*c.gap_threshold > 0.0, "gap_threshold: must be > 0");
  if (!problems.empty()) {
    std::string message;
    for (const auto& s : problems) message += (message.empty() ? "" : "; ") + s;
    throw Error(ErrorCode::ConfigInvalid, message);
  }
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"problem", to_string(c.problem)},
           {"problem_params",
            {{"d", c.problem_params.d},
             {"r", c.problem_params.r},
             {"k", c.problem_params.k},
             {"m", c.problem_params.m},
             {"instance_seed", c.problem_params.instance_seed}}},
           {"eta", c.eta},
           {"K", c.K},
           {"I", c.I},
           {"init_radius", c.init_radius},
           {"seed", c.seed},
           {"out_dir", c.out_dir},
           {"record_distances", c.record_distances},
           {"warm_start", c.warm_start}};
  j["method"] = c.method ? json(to_string(*c.method)) : json(nullptr);
  j["J"] = c.J ? json(*c.J) : json(nullptr);
  j["f_lb"] = c.f_lb ? json(*c.f_lb) : json(nullptr);
  j["gap_threshold"] = c.gap_threshold ? json(*c.gap_threshold) : json(nullptr);
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null())
    out.reset();
  else
    out = j.at(key).get<T>();
}

}  // namespace

void merge_json(const json& j, ExperimentConfig& c) {
  try {
    if (j.contains("problem")) {
      const ProblemKind p = parse_problem(j.at("problem").get<std::string>());
      if (p != c.problem) {
        // switching problems resets problem-specific defaults
        const ExperimentConfig d = default_config(p);
        c.problem = p;
        c.problem_params = d.problem_params;
      }
    }
    if (j.contains("problem_params")) {
      const json& p = j.at("problem_params");
      read(p, "d", c.problem_params.d);
      read(p, "r", c.problem_params.r);
      read(p, "k", c.problem_params.k);
      read(p, "m", c.problem_params.m);
      read(p, "instance_seed", c.problem_params.instance_seed);
    }
    if (j.contains("method")) {
      if (j.at("method").is_null())
        c.method.reset();
      else
        c.method = parse_method(j.at("method").get<std::string>());
    }
    read(j, "eta", c.eta);
    read(j, "K", c.K);
    read(j, "I", c.I);
    read_optional(j, "J", c.J);
    read_optional(j, "f_lb", c.f_lb);
    read(j, "init_radius", c.init_radius);
    read(j, "seed", c.seed);
    read(j, "out_dir", c.out_dir);
    read(j, "record_distances", c.record_distances);
    read_optional(j, "gap_threshold", c.gap_threshold);
    read(j, "warm_start", c.warm_start);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("malformed config: ") + e.what());
  }
}

void from_json(const json& j, ExperimentConfig& c) {
  if (!j.contains("problem")) throw Error(ErrorCode::ConfigInvalid, "problem: required");
  c = default_config(parse_problem(j.at("problem").get<std::string>()));
  merge_json(j, c);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, path + ": " + e.what());
  }
  return j.get<ExperimentConfig>();
}

}  // namespace ravopt::harness
