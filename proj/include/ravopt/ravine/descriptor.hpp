#pragma once

#include "ravopt/objective.hpp"
#include "ravopt/problems/factorization.hpp"
#include "ravopt/problems/neuron.hpp"
#include "ravopt/problems/sensing.hpp"
#include "ravopt/rng.hpp"

#include <functional>
#include <limits>
#include <string>

namespace ravopt::ravine {

// A known ravine M through the solution set S of one problem.
struct RavineDescriptor {
  std::string name;
  std::function<Vector(const Vector&)> retract;
  std::function<bool(const Vector&, double)> on_manifold;
  std::function<Vector(const Vector&)> project_solution;
  // Random point of S near the reference minimizer.
  std::function<Vector(Rng&)> sample_solution;
  double p_growth = 2.0;
  // Bracket for (f(x) - f(R(x))) / |x - R(x)|^2. A lower bound of 0 means
  // "strictly positive".
  double quadratic_lower = 0.0;
  double quadratic_upper = std::numeric_limits<double>::infinity();
};

RavineDescriptor quartic_ravine();
RavineDescriptor rosenbrock_ravine();
RavineDescriptor circle_ravine();
RavineDescriptor factorization_ravine(const problems::FactorizationInstance& inst);
RavineDescriptor sensing_ravine(const problems::SensingInstance& inst);
RavineDescriptor neuron_ravine(const problems::NeuronInstance& inst);

// Exact projection onto {(a v, (1 - a) v) : 1/8 <= a <= 7/8}.
Vector neuron_project_solution(const Vector& w, const problems::NeuronInstance& inst);

struct Decomposition {
  double normal = 0.0;   // f(x) - f(R(x))
  double tangent = 0.0;  // f(R(x))
};
Decomposition decompose_tangent_normal(const Objective& obj, const RavineDescriptor& rav, const Vector& x);

}  // namespace ravopt::ravine
