#include "ravopt/ravine/morse.hpp"

#include <cmath>

namespace ravopt::ravine {

namespace {

constexpr double kRankCut = 1e-6;
constexpr double kGapFactor = 1e3;
constexpr int kMaxHalvings = 50;

// Largest-magnitude component positive.
void orient(Matrix& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index arg = 0;
    basis.col(j).cwiseAbs().maxCoeff(&arg);
    if (basis(arg, j) < 0) basis.col(j) = -basis.col(j);
  }
}

}  // namespace

Matrix finite_difference_hessian(const Objective& obj, const Vector& x, double rel_step) {
  const double h = rel_step * (1.0 + x.norm());
  const Eigen::Index n = x.size();
  Matrix H(n, n);
  Vector probe = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    probe(j) = x(j) + h;
    const Vector gp = obj.gradient(probe);
    probe(j) = x(j) - h;
    const Vector gm = obj.gradient(probe);
    probe(j) = x(j);
    H.col(j) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

MorseRavine::MorseRavine(Objective obj, Vector basepoint, double tol, int max_iter)
    : obj_(std::move(obj)), base_(std::move(basepoint)), tol_(tol), max_iter_(max_iter) {
  if (base_.size() > 10) throw Error(ErrorCode::InvalidArgument, "Morse solving is limited to dimension 10");
  if (!(tol_ > 0.0) || max_iter_ < 1) throw Error(ErrorCode::InvalidArgument, "need tol > 0, max_iter >= 1");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(finite_difference_hessian(obj_, base_));
  eigenvalues_ = eig.eigenvalues();
  const double lmax = eigenvalues_.cwiseAbs().maxCoeff();
  const double cut = kRankCut * lmax;

  std::vector<Eigen::Index> null_idx, range_idx;
  double null_max = 0.0, range_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    const double a = std::abs(eigenvalues_(i));
    if (a <= cut) {
      null_idx.push_back(i);
      null_max = std::max(null_max, a);
    } else {
      range_idx.push_back(i);
      range_min = std::min(range_min, a);
    }
  }
  if (lmax == 0.0 || null_idx.empty() || range_idx.empty())
    throw Error(ErrorCode::RankAmbiguity, "Hessian has no nontrivial nullspace/range splitting");
  if (range_min < kGapFactor * null_max)
    throw Error(ErrorCode::RankAmbiguity, "no spectral gap around the rank cut");

  tangent_.resize(base_.size(), static_cast<Eigen::Index>(null_idx.size()));
  normal_.resize(base_.size(), static_cast<Eigen::Index>(range_idx.size()));
  for (std::size_t j = 0; j < null_idx.size(); ++j)
    tangent_.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(null_idx[j]);
  for (std::size_t j = 0; j < range_idx.size(); ++j)
    normal_.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(range_idx[j]);
  orient(tangent_);
  orient(normal_);
}

Vector MorseRavine::normal_gradient(const Vector& u, const Vector& v) const {
  return normal_.transpose() * obj_.gradient(base_ + tangent_ * u + normal_ * v);
}

Vector MorseRavine::solve(const Vector& u) const {
  if (u.size() != tangent_.cols()) throw Error(ErrorCode::ShapeMismatch, "u has the wrong dimension");
  const Eigen::Index m = normal_.cols();
  Vector v = Vector::Zero(m);
  Vector g = normal_gradient(u, v);
  for (int it = 0; it < max_iter_; ++it) {
    if (g.norm() <= tol_) {
      last_iterations_ = it;
      return v;
    }
    const double delta = 1e-6 * (1.0 + v.norm());
    Matrix J(m, m);
    Vector probe = v;
    for (Eigen::Index j = 0; j < m; ++j) {
      probe(j) = v(j) + delta;
      J.col(j) = (normal_gradient(u, probe) - g) / delta;
      probe(j) = v(j);
    }
    const Vector step = -J.colPivHouseholderQr().solve(g);
    if (!step.allFinite()) break;

    double t = 1.0;
    Vector v_try = v + step;
    Vector g_try = normal_gradient(u, v_try);
    int halvings = 0;
    while (!(g_try.norm() < g.norm()) && halvings < kMaxHalvings) {
      t *= 0.5;
      v_try = v + t * step;
      g_try = normal_gradient(u, v_try);
      ++halvings;
    }
    if (!(g_try.norm() < g.norm())) {
      // no decrease along the Newton direction; stop if already converged
      if (g.norm() <= tol_) break;
      throw Error(ErrorCode::NewtonDivergence, "no residual decrease after damping", it);
    }
    v = v_try;
    g = g_try;
  }
  if (g.norm() <= tol_) {
    last_iterations_ = max_iter_;
    return v;
  }
  throw Error(ErrorCode::NewtonDivergence,
              "residual " + std::to_string(g.norm()) + " above tolerance after max_iter");
}

Vector MorseRavine::point(const Vector& u) const { return base_ + tangent_ * u + normal_ * solve(u); }

MorseRavine morse_ravine_solve(const Objective& obj, const Vector& basepoint, double tol, int max_iter) {
  const double gnorm = obj.gradient(basepoint).norm();
  if (gnorm > tol)
    throw Error(ErrorCode::InvalidArgument, "basepoint is not an approximate critical point");
  return MorseRavine(obj, basepoint, tol, max_iter);
}

double circle_display_residual(double x, double y) {
  const double r = std::hypot(x, y);
  const double r2 = r * r, r3 = r2 * r, r5 = r3 * r2, r6 = r3 * r3;
  const double x2 = x * x, x4 = x2 * x2;
  return r6 * y - y * r5 - x2 * r3 + (y * x2 + 2.0 * x2 * y) * r2 + (x4 - 2.0 * x2 * y * y) * r -
         2.0 * x4 * y;
}

double circle_normal_condition(double x, double y) {
  const double r = std::hypot(x, y);
  return (r - 1.0) * y * r * r * r - 4.0 * x * x * (r - y);
}

}  // namespace ravopt::ravine
