#pragma once

#include "ravopt/objective.hpp"

namespace ravopt::ravine {

// Central-difference Hessian from gradients, symmetrized.
Matrix finite_difference_hessian(const Objective& obj, const Vector& x, double rel_step = 1e-5);

// Graph map u -> v(u) of the Morse ravine {grad_v f(u, v) = 0} through a
// nondegenerate-in-v critical point. Coordinates are taken in an orthonormal
// splitting of the Hessian at the base point: T = nullspace (columns of
// tangent()), its complement normal().
class MorseRavine {
 public:
  MorseRavine(Objective obj, Vector basepoint, double tol, int max_iter);

  // Normal coordinates v(u).
  Vector solve(const Vector& u) const;
  Vector solve(double u) const { return solve(Vector::Constant(1, u)); }
  // The ambient point basepoint + T u + N v(u).
  Vector point(const Vector& u) const;
  Vector point(double u) const { return point(Vector::Constant(1, u)); }

  const Matrix& tangent() const { return tangent_; }
  const Matrix& normal() const { return normal_; }
  const Vector& hessian_eigenvalues() const { return eigenvalues_; }
  // Newton iterations used by the most recent solve.
  int last_iterations() const { return last_iterations_; }

 private:
  Vector normal_gradient(const Vector& u, const Vector& v) const;

  Objective obj_;
  Vector base_;
  double tol_;
  int max_iter_;
  Matrix tangent_;
  Matrix normal_;
  Vector eigenvalues_;
  mutable int last_iterations_ = 0;
};

MorseRavine morse_ravine_solve(const Objective& obj, const Vector& basepoint, double tol, int max_iter);

// Left-hand side of the implicit equation displayed for the circle example:
// r^6 y - y r^5 - x^2 r^3 + (y x^2 + 2 x^2 y) r^2 + (x^4 - 2 x^2 y^2) r - 2 x^4 y.
double circle_display_residual(double x, double y);

// d f / d y for the circle objective, scaled by r^4 / 2:
// (r - 1) y r^3 - 4 x^2 (r - y).
double circle_normal_condition(double x, double y);

}  // namespace ravopt::ravine
