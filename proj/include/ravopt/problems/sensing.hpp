#pragma once

#include "ravopt/problems/factorization.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ravopt::problems {

// Symmetric measurements y_i = <A_i, X>. The operator is stored either as
// dense matrices or, for the A_i = a a^T - b b^T model, as the two factor
// matrices whose rows are a_i and b_i.
struct SensingInstance {
  FactorizationInstance fac;
  int m = 0;
  std::vector<Matrix> A;  // dense form; empty when the factor form is used
  Matrix a;               // m x d
  Matrix a_tilde;         // m x d
  Vector y;
  double norm_constant = 0.0;  // prefactor of the objective
  // E[<A_i, Z>^2] / |Z|_F^2 for symmetric Z is 1 / rip_scale; the RIP
  // operator uses sqrt(rip_scale / m) so that it is isotropic on average.
  double rip_scale = 1.0;
  std::uint64_t seed = 0;
  std::string model;

  bool factored() const { return A.empty(); }
  Matrix measurement(int i) const;
};

// Gaussian-difference measurements with m i.i.d. draws; X from the
// Gaussian-factor model with sigma1 = 1.
SensingInstance make_sensing_instance(int d, int r, int k, int m, std::uint64_t seed);

// Dense operator with prefactor 1/m.
SensingInstance make_sensing_instance(const FactorizationInstance& fac, std::vector<Matrix> A,
                                      double rip_scale = 1.0);

// sqrt(m) times an orthonormal basis of symmetric d x d matrices,
// m = d (d + 1) / 2. The objective then equals |B B^T - X|_F^2.
SensingInstance make_complete_sensing_instance(const FactorizationInstance& fac);

// <A_i, Z> for every i.
Vector apply_measurements(const SensingInstance& inst, const Matrix& Z);

// f(B) = c * sum_i (y_i - <A_i, B B^T>)^2 with c = norm_constant.
std::pair<double, Matrix> sensing_eval(const Matrix& B, const SensingInstance& inst);

Objective sensing_objective(const SensingInstance& inst);

}  // namespace ravopt::problems
