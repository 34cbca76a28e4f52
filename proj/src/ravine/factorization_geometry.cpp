#include "ravopt/ravine/factorization_geometry.hpp"

namespace ravopt::ravine {

using problems::FactorizationInstance;

Matrix polar_factor(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) < 1e-10)
    throw Error(ErrorCode::DegenerateProjection, "projection is not unique");
  return svd.matrixU() * svd.matrixV().transpose();
}

Matrix factorization_project_solution(const Matrix& B, const FactorizationInstance& inst) {
  if (B.rows() != inst.d || B.cols() != inst.k)
    throw Error(ErrorCode::ShapeMismatch, "B must be d x k");
  return inst.L * polar_factor(inst.L.transpose() * B);
}

double factorization_dist_to_solution(const Matrix& B, const FactorizationInstance& inst) {
  return (B - factorization_project_solution(B, inst)).norm();
}

std::pair<Matrix, Matrix> eigen_blocks(const Matrix& B, const FactorizationInstance& inst) {
  if (B.rows() != inst.d || B.cols() != inst.k)
    throw Error(ErrorCode::ShapeMismatch, "B must be d x k");
  const Matrix rotated = inst.eigvecs.transpose() * B;
  return {rotated.topRows(inst.r), rotated.bottomRows(inst.d - inst.r)};
}

Matrix from_eigen_blocks(const Matrix& P, const Matrix& Q, const FactorizationInstance& inst) {
  Matrix rotated(inst.d, inst.k);
  rotated.topRows(inst.r) = P;
  rotated.bottomRows(inst.d - inst.r) = Q;
  return inst.eigvecs * rotated;
}

Matrix factorization_retraction(const Matrix& B, const FactorizationInstance& inst) {
  auto [P, Q] = eigen_blocks(B, inst);
  const Vector root = inst.eigvals.cwiseSqrt();
  const Matrix O = polar_factor(root.asDiagonal() * P);
  const Matrix P_new = root.asDiagonal() * O;
  // rows of O are orthonormal, so I - O^T O projects onto ker(P_new)
  const Matrix Q_new = Q - (Q * O.transpose()) * O;
  return from_eigen_blocks(P_new, Q_new, inst);
}

ManifoldResidual factorization_manifold_residual(const Matrix& B, const FactorizationInstance& inst) {
  auto [P, Q] = eigen_blocks(B, inst);
  ManifoldResidual res;
  res.gram = (P * P.transpose() - Matrix(inst.eigvals.asDiagonal())).norm();
  res.orthogonal = (P * Q.transpose()).norm();
  return res;
}

Matrix random_factorization_solution(const FactorizationInstance& inst, Rng& rng) {
  return inst.L * random_orthonormal_rows(rng, inst.r, inst.k);
}

Matrix random_factorization_manifold_point(const FactorizationInstance& inst, double t, Rng& rng) {
  const Matrix W = random_orthonormal_rows(rng, inst.r, inst.k);
  const Matrix P = inst.eigvals.cwiseSqrt().asDiagonal() * W;
  Matrix Q = standard_normal(rng, inst.d - inst.r, inst.k);
  Q -= (Q * W.transpose()) * W;
  const double norm = Q.norm();
  if (norm > 0.0) Q *= t / norm;
  return from_eigen_blocks(P, Q, inst);
}

}  // namespace ravopt::ravine
