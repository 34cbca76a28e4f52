#include "ravopt/problems/neuron.hpp"

#include "ravopt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace ravopt::problems {

namespace {

constexpr double kMinNorm = 1e-8;

void check_shapes(const Vector& w1, const Vector& w2, const NeuronInstance& inst) {
  if (w1.size() != inst.d || w2.size() != inst.d)
    throw Error(ErrorCode::ShapeMismatch, "neuron weights must have length d");
  if (w1.norm() < kMinNorm || w2.norm() < kMinNorm || inst.v.norm() < kMinNorm)
    throw Error(ErrorCode::ZeroNeuron, "a weight vector is (numerically) zero");
}

// sin t - t cos t
double kernel(double t) { return std::sin(t) - t * std::cos(t); }

}  // namespace

NeuronInstance neuron_instance_from_teacher(const Vector& v) {
  if (v.norm() < kMinNorm) throw Error(ErrorCode::ZeroNeuron, "teacher vector is zero");
  NeuronInstance inst;
  inst.d = static_cast<int>(v.size());
  inst.v = v;
  return inst;
}

NeuronInstance make_neuron_instance(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  Rng rng = make_rng(seed, 0);
  NeuronInstance inst = neuron_instance_from_teacher(random_direction(rng, d));
  inst.seed = seed;
  return inst;
}

double vector_angle(const Vector& a, const Vector& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::pair<double, Vector> neuron_eval(const Vector& w1, const Vector& w2, const NeuronInstance& inst) {
  check_shapes(w1, w2, inst);
  const Vector& v = inst.v;
  const double n1 = w1.norm(), n2 = w2.norm(), nv = v.norm();
  const double t12 = vector_angle(w1, w2);
  const double t1 = vector_angle(w1, v);
  const double t2 = vector_angle(w2, v);
  constexpr double c = 0.5 / std::numbers::pi;

  const Vector sum = w1 + w2 - v;
  const double value = 0.25 * sum.squaredNorm() +
                       c * (kernel(t12) * n1 * n2 - kernel(t1) * n1 * nv - kernel(t2) * n2 * nv);

  Vector g(2 * inst.d);
  g.head(inst.d) = 0.5 * sum + c * ((n2 * std::sin(t12) - nv * std::sin(t1)) * (w1 / n1) - t12 * w2 + t1 * v);
  g.tail(inst.d) = 0.5 * sum + c * ((n1 * std::sin(t12) - nv * std::sin(t2)) * (w2 / n2) - t12 * w1 + t2 * v);
  return {value, g};
}

double neuron_dist_proxy(const Vector& w1, const Vector& w2, const NeuronInstance& inst) {
  check_shapes(w1, w2, inst);
  const Vector vhat = inst.v.normalized();
  const Vector p1 = w1 - vhat * vhat.dot(w1);
  const Vector p2 = w2 - vhat * vhat.dot(w2);
  return (w1 + w2 - inst.v).norm() + p1.norm() + p2.norm();
}

Vector neuron_base_solution(const NeuronInstance& inst) {
  Vector x(2 * inst.d);
  x << 0.5 * inst.v, 0.5 * inst.v;
  return x;
}

Objective neuron_objective(const NeuronInstance& instance) {
  auto inst = std::make_shared<const NeuronInstance>(instance);
  const int d = inst->d;
  Objective obj;
  obj.dim = 2 * d;
  obj.value_and_gradient = [inst, d](const Vector& x) {
    return neuron_eval(x.head(d), x.tail(d), *inst);
  };
  obj.value = [inst, d](const Vector& x) { return neuron_eval(x.head(d), x.tail(d), *inst).first; };
  obj.gradient = [inst, d](const Vector& x) { return neuron_eval(x.head(d), x.tail(d), *inst).second; };
  obj.f_star = 0.0;
  obj.p_growth = 3.0;
  obj.dist_solution = [inst, d](const Vector& x) {
    return neuron_dist_proxy(x.head(d), x.tail(d), *inst);
  };
  obj.dist_ravine = [inst, d](const Vector& x) {
    // M = {w1 + w2 = v}; the projection moves each block by half the residual
    return (x.head(d) + x.tail(d) - inst->v).norm() / std::sqrt(2.0);
  };
  return obj;
}

}  // namespace ravopt::problems
