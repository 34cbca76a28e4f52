#pragma once

#include "ravopt/objective.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace ravopt::problems {

// Symmetric psd target X of rank r, factored with k >= r columns.
struct FactorizationInstance {
  int d = 0;
  int k = 0;
  int r = 0;
  Matrix X;
  double sigma1 = 0.0;
  double sigmar = 0.0;
  Matrix L;           // d x r, L L^T = X, columns by descending eigenvalue
  Matrix eigvecs;     // d x d orthogonal, first r columns span range(X)
  Vector eigvals;     // r leading eigenvalues, descending
  std::uint64_t seed = 0;
  std::string generator;  // how X was produced
};

// X = G G^T with G a d x r standard normal matrix, rescaled to sigma1 = 1.
FactorizationInstance make_factorization_instance(int d, int r, int k, std::uint64_t seed);

// Wraps a given psd X; throws InvalidArgument unless rank(X) = r.
FactorizationInstance factorization_instance_from_matrix(const Matrix& X, int r, int k);

// f(B) = |B B^T - X|_F^2, gradient 4 (B B^T - X) B.
std::pair<double, Matrix> factorization_eval(const Matrix& B, const FactorizationInstance& inst);

// Same value computed as |(V^T B)(V^T B)^T - diag(lambda)|_F^2 in the
// eigenbasis V of X; keeps full relative accuracy on the ravine where the
// plain form cancels O(1) entries.
double factorization_value_eigenbasis(const Matrix& B, const FactorizationInstance& inst);

// Row-major flattening shared by all matrix problems.
Vector flatten(const Matrix& B);
Matrix unflatten(const Vector& x, Eigen::Index rows, Eigen::Index cols);

// The solution (L | 0), flattened.
Vector factorization_base_solution(const FactorizationInstance& inst);

// With eigenbasis_value set, `value` uses factorization_value_eigenbasis.
Objective factorization_objective(const FactorizationInstance& inst, bool eigenbasis_value = false);

}  // namespace ravopt::problems
