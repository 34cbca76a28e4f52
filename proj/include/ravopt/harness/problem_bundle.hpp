#pragma once

#include "ravopt/harness/config.hpp"
#include "ravopt/objective.hpp"
#include "ravopt/problems/factorization.hpp"
#include "ravopt/problems/neuron.hpp"
#include "ravopt/problems/sensing.hpp"
#include "ravopt/ravine/descriptor.hpp"

#include <json.hpp>

#include <optional>

namespace ravopt::harness {

// Everything a run or a diagnostic needs about one problem instance.
struct ProblemBundle {
  ProblemKind kind = ProblemKind::rosenbrock;
  Objective objective;
  ravine::RavineDescriptor ravine;
  Vector base_solution;
  std::optional<problems::FactorizationInstance> factorization;
  std::optional<problems::SensingInstance> sensing;
  std::optional<problems::NeuronInstance> neuron;

  // Serialized instance for the matrix and neuron problems, null otherwise.
  nlohmann::json instance_json() const;
};

ProblemBundle build_problem(ProblemKind kind, const ProblemParams& params);

// base_solution + init_radius * direction drawn from config.seed.
Vector initial_point(const ProblemBundle& bundle, const ExperimentConfig& config);

}  // namespace ravopt::harness
