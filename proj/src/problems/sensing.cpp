#include "ravopt/problems/sensing.hpp"

#include "ravopt/ravine/factorization_geometry.hpp"
#include "ravopt/rng.hpp"

#include <cmath>
#include <memory>

namespace ravopt::problems {

Matrix SensingInstance::measurement(int i) const {
  if (!factored()) return A[static_cast<std::size_t>(i)];
  const Vector u = a.row(i).transpose();
  const Vector w = a_tilde.row(i).transpose();
  return u * u.transpose() - w * w.transpose();
}

SensingInstance make_sensing_instance(int d, int r, int k, int m, std::uint64_t seed) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  SensingInstance inst;
  inst.fac = make_factorization_instance(d, r, k, seed);
  inst.m = m;
  Rng rng = make_rng(seed, 1);
  inst.a.resize(m, d);
  inst.a_tilde.resize(m, d);
  for (int i = 0; i < m; ++i) {
    inst.a.row(i) = standard_normal(rng, d).transpose();
    inst.a_tilde.row(i) = standard_normal(rng, d).transpose();
  }
  inst.norm_constant = 1.0 / m;
  inst.rip_scale = 0.25;
  inst.seed = seed;
  inst.model = "gaussian_difference";
  inst.y = apply_measurements(inst, inst.fac.X);
  return inst;
}

SensingInstance make_sensing_instance(const FactorizationInstance& fac, std::vector<Matrix> A,
                                      double rip_scale) {
  if (A.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one measurement");
  for (const Matrix& Ai : A)
    if (Ai.rows() != fac.d || Ai.cols() != fac.d)
      throw Error(ErrorCode::ShapeMismatch, "measurement matrices must be d x d");
  SensingInstance inst;
  inst.fac = fac;
  inst.m = static_cast<int>(A.size());
  inst.A = std::move(A);
  inst.norm_constant = 1.0 / inst.m;
  inst.rip_scale = rip_scale;
  inst.seed = fac.seed;
  inst.model = "dense";
  inst.y = apply_measurements(inst, inst.fac.X);
  return inst;
}

SensingInstance make_complete_sensing_instance(const FactorizationInstance& fac) {
  const int d = fac.d;
  const int m = d * (d + 1) / 2;
  const double scale = std::sqrt(static_cast<double>(m));
  std::vector<Matrix> A;
  A.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Matrix E = Matrix::Zero(d, d);
      if (i == j) {
        E(i, i) = 1.0;
      } else {
        E(i, j) = E(j, i) = 1.0 / std::sqrt(2.0);
      }
      A.push_back(scale * E);
    }
  }
  SensingInstance inst = make_sensing_instance(fac, std::move(A), 1.0);
  inst.model = "complete_orthonormal";
  return inst;
}

Vector apply_measurements(const SensingInstance& inst, const Matrix& Z) {
  Vector out(inst.m);
  if (inst.factored()) {
    // a^T Z a - b^T Z b, row by row
    out = (inst.a * Z).cwiseProduct(inst.a).rowwise().sum() -
          (inst.a_tilde * Z).cwiseProduct(inst.a_tilde).rowwise().sum();
  } else {
    for (int i = 0; i < inst.m; ++i) out(i) = inst.A[static_cast<std::size_t>(i)].cwiseProduct(Z).sum();
  }
  return out;
}

std::pair<double, Matrix> sensing_eval(const Matrix& B, const SensingInstance& inst) {
  if (B.rows() != inst.fac.d || B.cols() != inst.fac.k)
    throw Error(ErrorCode::ShapeMismatch, "B must be d x k");
  const double c = inst.norm_constant;
  if (inst.factored()) {
    // <A_i, B B^T> = |B^T a_i|^2 - |B^T b_i|^2
    const Matrix U = inst.a * B;
    const Matrix W = inst.a_tilde * B;
    const Vector residual = inst.y - (U.rowwise().squaredNorm() - W.rowwise().squaredNorm());
    // (A_i + A_i^T) B = 2 (a a^T - b b^T) B
    Matrix g = -4.0 * c *
               (inst.a.transpose() * (residual.asDiagonal() * U) -
                inst.a_tilde.transpose() * (residual.asDiagonal() * W));
    return {c * residual.squaredNorm(), std::move(g)};
  }
  const Matrix BBt = B * B.transpose();
  Matrix g = Matrix::Zero(B.rows(), B.cols());
  double value = 0.0;
  for (int i = 0; i < inst.m; ++i) {
    const Matrix& Ai = inst.A[static_cast<std::size_t>(i)];
    const double res = inst.y(i) - Ai.cwiseProduct(BBt).sum();
    value += res * res;
    g.noalias() -= (2.0 * c * res) * ((Ai + Ai.transpose()) * B);
  }
  return {c * value, std::move(g)};
}

Objective sensing_objective(const SensingInstance& instance) {
  auto inst = std::make_shared<const SensingInstance>(instance);
  const int d = inst->fac.d;
  const int k = inst->fac.k;
  Objective obj;
  obj.dim = static_cast<Eigen::Index>(d) * k;
  obj.value = [inst, d, k](const Vector& x) { return sensing_eval(unflatten(x, d, k), *inst).first; };
  obj.gradient = [inst, d, k](const Vector& x) {
    return flatten(sensing_eval(unflatten(x, d, k), *inst).second);
  };
  obj.value_and_gradient = [inst, d, k](const Vector& x) {
    auto [f, g] = sensing_eval(unflatten(x, d, k), *inst);
    return std::pair<double, Vector>(f, flatten(g));
  };
  obj.f_star = 0.0;
  obj.p_growth = 4.0;
  obj.dist_solution = [inst, d, k](const Vector& x) {
    return ravine::factorization_dist_to_solution(unflatten(x, d, k), inst->fac);
  };
  obj.dist_ravine = [inst, d, k](const Vector& x) {
    const Matrix B = unflatten(x, d, k);
    return (B - ravine::factorization_retraction(B, inst->fac)).norm();
  };
  return obj;
}

}  // namespace ravopt::problems
