#include "ravopt/problems/factorization.hpp"

#include "ravopt/ravine/factorization_geometry.hpp"
#include "ravopt/rng.hpp"

#include <memory>

namespace ravopt::problems {

namespace {

void check_dims(int d, int r, int k) {
  if (d < 1 || r < 1 || k < r || r > d)
    throw Error(ErrorCode::InvalidArgument, "need 1 <= r <= k and r <= d");
}

}  // namespace

FactorizationInstance factorization_instance_from_matrix(const Matrix& X, int r, int k) {
  if (X.rows() != X.cols()) throw Error(ErrorCode::ShapeMismatch, "X must be square");
  const int d = static_cast<int>(X.rows());
  check_dims(d, r, k);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (X + X.transpose()));
  // Eigen sorts ascending; reverse to descending
  const Vector values = eig.eigenvalues().reverse();
  const Matrix vectors = eig.eigenvectors().rowwise().reverse();

  FactorizationInstance inst;
  inst.d = d;
  inst.k = k;
  inst.r = r;
  inst.X = X;
  inst.sigma1 = values(0);
  inst.sigmar = values(r - 1);
  if (!(inst.sigmar > 1e-10 * inst.sigma1))
    throw Error(ErrorCode::InvalidArgument, "X has rank below r");
  for (int i = r; i < d; ++i)
    if (std::abs(values(i)) > 1e-10 * inst.sigma1)
      throw Error(ErrorCode::InvalidArgument, "X has rank above r");
  inst.eigvals = values.head(r);
  inst.eigvecs = vectors;
  inst.L = vectors.leftCols(r) * inst.eigvals.cwiseSqrt().asDiagonal();
  inst.generator = "explicit";
  return inst;
}

FactorizationInstance make_factorization_instance(int d, int r, int k, std::uint64_t seed) {
  check_dims(d, r, k);
  Rng rng = make_rng(seed, 0);
  const Matrix G = standard_normal(rng, d, r);
  Matrix X = G * G.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(X, Eigen::EigenvaluesOnly);
  X /= eig.eigenvalues()(d - 1);
  FactorizationInstance inst = factorization_instance_from_matrix(X, r, k);
  inst.seed = seed;
  inst.generator = "gaussian_factor";
  return inst;
}

std::pair<double, Matrix> factorization_eval(const Matrix& B, const FactorizationInstance& inst) {
  if (B.rows() != inst.d || B.cols() != inst.k)
    throw Error(ErrorCode::ShapeMismatch, "B must be d x k");
  Matrix E = B * B.transpose() - inst.X;
  Matrix g = 4.0 * E * B;
  return {E.squaredNorm(), std::move(g)};
}

double factorization_value_eigenbasis(const Matrix& B, const FactorizationInstance& inst) {
  if (B.rows() != inst.d || B.cols() != inst.k)
    throw Error(ErrorCode::ShapeMismatch, "B must be d x k");
  const Matrix C = inst.eigvecs.transpose() * B;
  Matrix E = C * C.transpose();
  E.diagonal().head(inst.r) -= inst.eigvals;
  return E.squaredNorm();
}

Vector flatten(const Matrix& B) {
  Vector x(B.size());
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      x.data(), B.rows(), B.cols()) = B;
  return x;
}

Matrix unflatten(const Vector& x, Eigen::Index rows, Eigen::Index cols) {
  if (x.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "flat vector has the wrong length");
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      x.data(), rows, cols);
}

Vector factorization_base_solution(const FactorizationInstance& inst) {
  Matrix B = Matrix::Zero(inst.d, inst.k);
  B.leftCols(inst.r) = inst.L;
  return flatten(B);
}

Objective factorization_objective(const FactorizationInstance& instance, bool eigenbasis_value) {
  auto inst = std::make_shared<const FactorizationInstance>(instance);
  Objective obj;
  obj.dim = static_cast<Eigen::Index>(inst->d) * inst->k;
  if (eigenbasis_value) {
    obj.value = [inst](const Vector& x) {
      return factorization_value_eigenbasis(unflatten(x, inst->d, inst->k), *inst);
    };
  } else {
    obj.value = [inst](const Vector& x) {
      return factorization_eval(unflatten(x, inst->d, inst->k), *inst).first;
    };
  }
  obj.gradient = [inst](const Vector& x) {
    return flatten(factorization_eval(unflatten(x, inst->d, inst->k), *inst).second);
  };
  obj.value_and_gradient = [inst](const Vector& x) {
    auto [f, g] = factorization_eval(unflatten(x, inst->d, inst->k), *inst);
    return std::pair<double, Vector>(f, flatten(g));
  };
  obj.f_star = 0.0;
  obj.p_growth = 4.0;
  obj.dist_solution = [inst](const Vector& x) {
    return ravine::factorization_dist_to_solution(unflatten(x, inst->d, inst->k), *inst);
  };
  obj.dist_ravine = [inst](const Vector& x) {
    const Matrix B = unflatten(x, inst->d, inst->k);
    return (B - ravine::factorization_retraction(B, *inst)).norm();
  };
  return obj;
}

}  // namespace ravopt::problems
