#include "ravopt/ravine/descriptor.hpp"

#include "ravopt/ravine/factorization_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace ravopt::ravine {

using problems::flatten;
using problems::unflatten;

RavineDescriptor quartic_ravine() {
  RavineDescriptor rav;
  rav.name = "quartic1d";
  rav.retract = [](const Vector& x) { return x; };
  rav.on_manifold = [](const Vector&, double) { return true; };
  rav.project_solution = [](const Vector& x) { return Vector::Zero(x.size()).eval(); };
  rav.sample_solution = [](Rng&) { return Vector::Zero(1).eval(); };
  rav.p_growth = 4.0;
  return rav;
}

RavineDescriptor rosenbrock_ravine() {
  RavineDescriptor rav;
  rav.name = "rosenbrock";
  rav.retract = [](const Vector& x) {
    Vector y = x;
    y(1) = x(0) * x(0);
    return y;
  };
  rav.on_manifold = [](const Vector& x, double tol) { return std::abs(x(1) - x(0) * x(0)) <= tol; };
  rav.project_solution = [](const Vector&) { return Vector::Zero(2).eval(); };
  rav.sample_solution = [](Rng&) { return Vector::Zero(2).eval(); };
  rav.p_growth = 4.0;
  rav.quadratic_lower = 10.0 * (1.0 - 1e-6);
  rav.quadratic_upper = 10.0 * (1.0 + 1e-6);
  return rav;
}

RavineDescriptor circle_ravine() {
  RavineDescriptor rav;
  rav.name = "circle";
  rav.retract = [](const Vector& z) {
    const double n = z.norm();
    if (n < 1e-6) throw Error(ErrorCode::OriginSingularity, "cannot retract the origin");
    return Vector(z / n);
  };
  rav.on_manifold = [](const Vector& z, double tol) { return std::abs(z.norm() - 1.0) <= tol; };
  rav.project_solution = [](const Vector&) { return Vector(Eigen::Vector2d(0.0, 1.0)); };
  rav.sample_solution = [](Rng&) { return Vector(Eigen::Vector2d(0.0, 1.0)); };
  rav.p_growth = 4.0;
  // the radial term is exactly (|z| - 1)^2 and R only changes |z|
  rav.quadratic_lower = 1.0 - 1e-6;
  rav.quadratic_upper = 1.0 + 1e-6;
  return rav;
}

RavineDescriptor factorization_ravine(const problems::FactorizationInstance& instance) {
  auto inst = std::make_shared<const problems::FactorizationInstance>(instance);
  const int d = inst->d, k = inst->k;
  RavineDescriptor rav;
  rav.name = "factorization";
  rav.retract = [inst, d, k](const Vector& x) {
    return flatten(factorization_retraction(unflatten(x, d, k), *inst));
  };
  rav.on_manifold = [inst, d, k](const Vector& x, double tol) {
    const auto res = factorization_manifold_residual(unflatten(x, d, k), *inst);
    return res.gram <= tol && res.orthogonal <= tol;
  };
  rav.project_solution = [inst, d, k](const Vector& x) {
    return flatten(factorization_project_solution(unflatten(x, d, k), *inst));
  };
  rav.sample_solution = [inst](Rng& rng) { return flatten(random_factorization_solution(*inst, rng)); };
  rav.p_growth = 4.0;
  // ravine constants sigma_r / 8 and 18 sigma_1, widened by 2 for the retraction
  rav.quadratic_lower = inst->sigmar / 16.0;
  rav.quadratic_upper = 36.0 * inst->sigma1;
  return rav;
}

RavineDescriptor sensing_ravine(const problems::SensingInstance& inst) {
  RavineDescriptor rav = factorization_ravine(inst.fac);
  rav.name = "sensing";
  // constants depend on the operator; only positivity is asserted
  rav.quadratic_lower = 0.0;
  rav.quadratic_upper = std::numeric_limits<double>::infinity();
  return rav;
}

Vector neuron_project_solution(const Vector& w, const problems::NeuronInstance& inst) {
  const int d = inst.d;
  const Vector& v = inst.v;
  // minimize |w1 - a v|^2 + |w2 - (1 - a) v|^2 over a
  double a = (w.head(d).dot(v) - w.tail(d).dot(v) + v.squaredNorm()) / (2.0 * v.squaredNorm());
  a = std::clamp(a, 0.125, 0.875);
  Vector out(2 * d);
  out << a * v, (1.0 - a) * v;
  return out;
}

RavineDescriptor neuron_ravine(const problems::NeuronInstance& instance) {
  auto inst = std::make_shared<const problems::NeuronInstance>(instance);
  const int d = inst->d;
  RavineDescriptor rav;
  rav.name = "neuron";
  rav.retract = [inst, d](const Vector& w) {
    const Vector shift = 0.5 * (w.head(d) + w.tail(d) - inst->v);
    Vector out = w;
    out.head(d) -= shift;
    out.tail(d) -= shift;
    return out;
  };
  rav.on_manifold = [inst, d](const Vector& w, double tol) {
    return (w.head(d) + w.tail(d) - inst->v).norm() <= tol;
  };
  rav.project_solution = [inst](const Vector& w) { return neuron_project_solution(w, *inst); };
  rav.sample_solution = [inst](Rng& rng) {
    std::uniform_real_distribution<double> alpha(0.375, 0.625);
    const double a = alpha(rng);
    Vector out(2 * inst->d);
    out << a * inst->v, (1.0 - a) * inst->v;
    return out;
  };
  rav.p_growth = 3.0;
  return rav;
}

Decomposition decompose_tangent_normal(const Objective& obj, const RavineDescriptor& rav, const Vector& x) {
  Decomposition out;
  out.tangent = obj.value(rav.retract(x));
  out.normal = obj.value(x) - out.tangent;
  return out;
}

}  // namespace ravopt::ravine
