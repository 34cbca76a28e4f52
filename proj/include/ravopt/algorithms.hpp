#pragma once

#include "ravopt/objective.hpp"
#include "ravopt/trace.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ravopt {

struct RunOptions {
  // Evaluate dist_solution / dist_ravine at every recorded point.
  bool record_distances = true;
  // Lower-bound variant: start round j from x_{j-1} instead of x0.
  bool warm_start = false;
};

Vector gd_step(const Vector& x, double eta, const Objective& obj);

struct GdSegment {
  Vector x;
  std::vector<StepRecord> records;
};

// K constant-stepsize steps. Records carry epoch 0 and a gap relative to
// f* (or 0 when f* is unknown).
GdSegment gd_run(const Vector& x0, double eta, int K, const Objective& obj,
                 const RunOptions& options = {});

// Polyak step toward f_target, step length divided by scale.
Vector polyak_step(const Vector& x, const Objective& obj, double f_target, double scale = 1.0);

// Stepsize (f(x) - f_target) / (scale * |g|^2), or 0 when the guard applies.
double polyak_stepsize(double value, double f_target, const Vector& grad, double scale);

RunTrace gdpolyak(const Vector& x0, double eta, int K, int I, const Objective& obj,
                  const RunOptions& options = {});

RunTrace gdpolyak_lb(const Vector& x0, double eta, int K, int I, int J, double f0,
                     const Objective& obj, const RunOptions& options = {});

// Baselines with the same epoch bookkeeping: `epochs` blocks of
// `epoch_length` gradient evaluations each.
RunTrace run_gd(const Vector& x0, double eta, int epoch_length, int epochs, const Objective& obj,
                const RunOptions& options = {});
RunTrace run_polyak(const Vector& x0, int epoch_length, int epochs, const Objective& obj,
                    const RunOptions& options = {});

std::pair<Vector, double> best_iterate(std::span<const std::pair<Vector, double>> records);

}  // namespace ravopt
