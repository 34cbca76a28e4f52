#pragma once

#include "ravopt/harness/config.hpp"
#include "ravopt/harness/problem_bundle.hpp"
#include "ravopt/harness/rate_fit.hpp"
#include "ravopt/trace.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ravopt::harness {

struct ExperimentResult {
  RunTrace trace;
  std::optional<RateFit> fit;
  // Set when the optimizer failed; trace then holds the partial run.
  std::optional<std::string> error;
  nlohmann::json manifest;
};

// Runs config.method on a prepared bundle from x0.
RunTrace run_method(const ExperimentConfig& config, const ProblemBundle& bundle, const Vector& x0);

// Builds the instance, samples the initial point, runs the method and, when
// out_dir is set, writes config.json, instance.json, trace.csv,
// manifest.json and reports/rate_fit.json there.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Same, with a caller-supplied bundle and initial point.
ExperimentResult run_experiment(const ExperimentConfig& config, const ProblemBundle& bundle, const Vector& x0);

}  // namespace ravopt::harness
