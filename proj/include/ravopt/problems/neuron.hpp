#pragma once

#include "ravopt/objective.hpp"

#include <cstdint>
#include <utility>

namespace ravopt::problems {

// Two student ReLU neurons learning one teacher v under Gaussian inputs.
struct NeuronInstance {
  int d = 0;
  Vector v;
  int n = 2;
  std::uint64_t seed = 0;
};

// v standard normal, rescaled to unit norm.
NeuronInstance make_neuron_instance(int d, std::uint64_t seed);
NeuronInstance neuron_instance_from_teacher(const Vector& v);

// Angle between a and b via a clamped arccos.
double vector_angle(const Vector& a, const Vector& b);

// Closed-form population loss E[(1/2)(sum_i relu(w_i.x) - relu(v.x))^2]
// and its gradient stacked as (grad_w1, grad_w2).
std::pair<double, Vector> neuron_eval(const Vector& w1, const Vector& w2, const NeuronInstance& inst);

// |w1 + w2 - v| + |w1_perp| + |w2_perp|, perp taken against v.
double neuron_dist_proxy(const Vector& w1, const Vector& w2, const NeuronInstance& inst);

// Points are stacked as (w1, w2).
Vector neuron_base_solution(const NeuronInstance& inst);
Objective neuron_objective(const NeuronInstance& inst);

}  // namespace ravopt::problems
