#pragma once

#include "ravopt/common.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ravopt::harness {

enum class ProblemKind { quartic1d, rosenbrock, circle, factorization, sensing, neuron };
enum class Method { gd, polyak, gdpolyak, gdpolyak_lb };

std::string_view to_string(ProblemKind p);
std::string_view to_string(Method m);
ProblemKind parse_problem(std::string_view name);
Method parse_method(std::string_view name);

struct ProblemParams {
  int d = 0;
  int r = 0;
  int k = 0;
  int m = 0;
  std::uint64_t instance_seed = 0;

  bool operator==(const ProblemParams&) const = default;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::rosenbrock;
  ProblemParams problem_params;
  std::optional<Method> method;
  double eta = 0.0;
  int K = 1;
  int I = 1;
  std::optional<int> J;
  std::optional<double> f_lb;
  double init_radius = 0.5;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool record_distances = true;
  // Harness-only: report the first iteration whose gap is below this value.
  std::optional<double> gap_threshold;
  // Lower-bound variant: warm-start each round (off reproduces the listing).
  bool warm_start = false;

  bool operator==(const ExperimentConfig&) const = default;
};

// Desk-scale defaults for each problem (stepsizes and epoch lengths follow
// the reference experiments; dimensions are reduced for sensing and neuron).
ExperimentConfig default_config(ProblemKind problem);

// Throws ConfigInvalid listing every offending field. With require_method,
// a missing method is an error.
void validate(const ExperimentConfig& config, bool require_method = true);

void to_json(nlohmann::json& j, const ExperimentConfig& config);
// Fields absent from j keep the values already present in config, so a
// file can be layered over defaults.
void merge_json(const nlohmann::json& j, ExperimentConfig& config);
void from_json(const nlohmann::json& j, ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path);

}  // namespace ravopt::harness
