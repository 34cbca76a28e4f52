#pragma once

#include "ravopt/objective.hpp"

#include <Eigen/Dense>
#include <utility>

namespace ravopt::problems {

// f(x) = x^4 / 4
std::pair<double, double> quartic_eval(double x);

// f(x, y) = x^4 + 10 (y - x^2)^2
std::pair<double, Eigen::Vector2d> rosenbrock_eval(double x, double y);

// f(z) = (|z| - 1)^2 + |z/|z| - e2|^4, undefined at the origin.
std::pair<double, Eigen::Vector2d> circle_eval(const Eigen::Vector2d& z);

Objective quartic_objective();
Objective rosenbrock_objective();
Objective circle_objective();

}  // namespace ravopt::problems
