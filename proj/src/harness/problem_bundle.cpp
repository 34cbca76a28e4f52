#include "ravopt/harness/problem_bundle.hpp"

#include "ravopt/problems/instance_io.hpp"
#include "ravopt/problems/sampling.hpp"
#include "ravopt/problems/scalar.hpp"

namespace ravopt::harness {

nlohmann::json ProblemBundle::instance_json() const {
  if (sensing) return *sensing;
  if (factorization) return *factorization;
  if (neuron) return *neuron;
  return nullptr;
}

ProblemBundle build_problem(ProblemKind kind, const ProblemParams& p) {
  ProblemBundle b;
  b.kind = kind;
  switch (kind) {
    case ProblemKind::quartic1d:
      b.objective = problems::quartic_objective();
      b.ravine = ravine::quartic_ravine();
      b.base_solution = Vector::Zero(1);
      break;
    case ProblemKind::rosenbrock:
      b.objective = problems::rosenbrock_objective();
      b.ravine = ravine::rosenbrock_ravine();
      b.base_solution = Vector::Zero(2);
      break;
    case ProblemKind::circle:
      b.objective = problems::circle_objective();
      b.ravine = ravine::circle_ravine();
      b.base_solution = Eigen::Vector2d(0.0, 1.0);
      break;
    case ProblemKind::factorization:
      b.factorization = problems::make_factorization_instance(p.d, p.r, p.k, p.instance_seed);
      b.objective = problems::factorization_objective(*b.factorization);
      b.ravine = ravine::factorization_ravine(*b.factorization);
      b.base_solution = problems::factorization_base_solution(*b.factorization);
      break;
    case ProblemKind::sensing:
      b.sensing = problems::make_sensing_instance(p.d, p.r, p.k, p.m, p.instance_seed);
      b.objective = problems::sensing_objective(*b.sensing);
      b.ravine = ravine::sensing_ravine(*b.sensing);
      b.base_solution = problems::factorization_base_solution(b.sensing->fac);
      break;
    case ProblemKind::neuron:
      b.neuron = problems::make_neuron_instance(p.d, p.instance_seed);
      b.objective = problems::neuron_objective(*b.neuron);
      b.ravine = ravine::neuron_ravine(*b.neuron);
      b.base_solution = problems::neuron_base_solution(*b.neuron);
      break;
  }
  return b;
}

Vector initial_point(const ProblemBundle& bundle, const ExperimentConfig& config) {
  return problems::sample_init(bundle.base_solution, config.init_radius, config.seed);
}

}  // namespace ravopt::harness
