#pragma once

#include "ravopt/problems/factorization.hpp"
#include "ravopt/rng.hpp"

namespace ravopt::ravine {

// Orthonormal-row polar factor U V^T of a (rows <= cols) matrix M = U S V^T.
// Throws DegenerateProjection when the smallest singular value is below 1e-10.
Matrix polar_factor(const Matrix& M);

// Nearest point of S = {A : A A^T = X} to B (orthogonal Procrustes).
Matrix factorization_project_solution(const Matrix& B, const problems::FactorizationInstance& inst);

double factorization_dist_to_solution(const Matrix& B, const problems::FactorizationInstance& inst);

// Retraction onto M = {(P; Q) : P P^T = D, P Q^T = 0} written in the
// eigenbasis of X.
Matrix factorization_retraction(const Matrix& B, const problems::FactorizationInstance& inst);

// Residuals of the two equations defining M.
struct ManifoldResidual {
  double gram = 0.0;        // |P P^T - D|_F
  double orthogonal = 0.0;  // |P Q^T|_F
};
ManifoldResidual factorization_manifold_residual(const Matrix& B,
                                                 const problems::FactorizationInstance& inst);

// Blocks of B in the eigenbasis of X: P (r x k) on top, Q ((d-r) x k) below.
std::pair<Matrix, Matrix> eigen_blocks(const Matrix& B, const problems::FactorizationInstance& inst);
Matrix from_eigen_blocks(const Matrix& P, const Matrix& Q, const problems::FactorizationInstance& inst);

// Random point of S: L W with W having orthonormal rows.
Matrix random_factorization_solution(const problems::FactorizationInstance& inst, Rng& rng);

// Random point of M whose Q block has Frobenius norm t.
Matrix random_factorization_manifold_point(const problems::FactorizationInstance& inst, double t,
                                           Rng& rng);

}  // namespace ravopt::ravine
