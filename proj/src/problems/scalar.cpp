#include "ravopt/problems/scalar.hpp"

#include <cmath>

namespace ravopt::problems {

std::pair<double, double> quartic_eval(double x) {
  const double x2 = x * x;
  return {0.25 * x2 * x2, x2 * x};
}

std::pair<double, Eigen::Vector2d> rosenbrock_eval(double x, double y) {
  const double x2 = x * x;
  const double r = y - x2;
  Eigen::Vector2d g(4.0 * x2 * x - 40.0 * x * r, 20.0 * r);
  return {x2 * x2 + 10.0 * r * r, g};
}

std::pair<double, Eigen::Vector2d> circle_eval(const Eigen::Vector2d& z) {
  const double n = z.norm();
  if (n < 1e-6) throw Error(ErrorCode::OriginSingularity, "circle objective is undefined at the origin");
  const Eigen::Vector2d u = z / n;
  const Eigen::Vector2d w = u - Eigen::Vector2d(0.0, 1.0);
  const double s = w.squaredNorm();
  // d/dz of |u - e2|^4 = 4 s (I - u u^T) w / n
  const Eigen::Vector2d tangential = w - u * u.dot(w);
  Eigen::Vector2d g = 2.0 * (n - 1.0) * u + 4.0 * s * tangential / n;
  return {(n - 1.0) * (n - 1.0) + s * s, g};
}

Objective quartic_objective() {
  Objective obj;
  obj.dim = 1;
  obj.value = [](const Vector& x) { return quartic_eval(x(0)).first; };
  obj.gradient = [](const Vector& x) {
    Vector g(1);
    g(0) = quartic_eval(x(0)).second;
    return g;
  };
  obj.f_star = 0.0;
  obj.p_growth = 4.0;
  obj.dist_solution = [](const Vector& x) { return std::abs(x(0)); };
  obj.dist_ravine = [](const Vector&) { return 0.0; };
  return obj;
}

Objective rosenbrock_objective() {
  Objective obj;
  obj.dim = 2;
  obj.value = [](const Vector& x) { return rosenbrock_eval(x(0), x(1)).first; };
  obj.gradient = [](const Vector& x) { return Vector(rosenbrock_eval(x(0), x(1)).second); };
  obj.value_and_gradient = [](const Vector& x) {
    auto [f, g] = rosenbrock_eval(x(0), x(1));
    return std::pair<double, Vector>(f, Vector(g));
  };
  obj.f_star = 0.0;
  obj.p_growth = 4.0;
  obj.dist_solution = [](const Vector& x) { return x.norm(); };
  obj.dist_ravine = [](const Vector& x) { return std::abs(x(1) - x(0) * x(0)); };
  return obj;
}

Objective circle_objective() {
  Objective obj;
  obj.dim = 2;
  obj.value = [](const Vector& z) { return circle_eval(Eigen::Vector2d(z(0), z(1))).first; };
  obj.gradient = [](const Vector& z) { return Vector(circle_eval(Eigen::Vector2d(z(0), z(1))).second); };
  obj.value_and_gradient = [](const Vector& z) {
    auto [f, g] = circle_eval(Eigen::Vector2d(z(0), z(1)));
    return std::pair<double, Vector>(f, Vector(g));
  };
  obj.f_star = 0.0;
  obj.p_growth = 4.0;
  obj.dist_solution = [](const Vector& z) { return (z - Eigen::Vector2d(0.0, 1.0)).norm(); };
  obj.dist_ravine = [](const Vector& z) { return std::abs(z.norm() - 1.0); };
  return obj;
}

}  // namespace ravopt::problems
