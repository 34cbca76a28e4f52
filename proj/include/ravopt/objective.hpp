#pragma once

#include "ravopt/common.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace ravopt {

// A smooth function together with what is known about its minimizers.
struct Objective {
  Eigen::Index dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  // Optional fused evaluation; used instead of value + gradient when present.
  std::function<std::pair<double, Vector>(const Vector&)> value_and_gradient;
  std::optional<double> f_star;
  std::optional<double> p_growth;
  std::function<double(const Vector&)> dist_solution;
  std::function<double(const Vector&)> dist_ravine;

  std::pair<double, Vector> evaluate(const Vector& x) const {
    if (value_and_gradient) return value_and_gradient(x);
    return {value(x), gradient(x)};
  }
};

// Central finite-difference gradient with step h = rel_step * (1 + |x|).
Vector finite_difference_gradient(const Objective& obj, const Vector& x, double rel_step = 1e-5);

// max_i |g_i - fd_i| / max(|g|_inf, |fd|_inf, tiny)
double gradient_relative_error(const Vector& analytic, const Vector& numeric);

}  // namespace ravopt
