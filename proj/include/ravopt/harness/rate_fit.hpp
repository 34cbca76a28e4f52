#pragma once

#include "ravopt/trace.hpp"

#include <span>

namespace ravopt::harness {

struct RateFit {
  double slope = 0.0;
  double r2 = 0.0;
  int points = 0;
};

// Least-squares fit of ln(gap_i) against i for the 1-based epochs
// i >= burn_in. Gaps <= 1e-30 are treated as converged and dropped.
RateFit fit_linear_rate(std::span<const double> epoch_gaps, int burn_in = 5);

// Uses the per-epoch best gap of the trace.
RateFit fit_linear_rate(const RunTrace& trace, int burn_in = 5);

}  // namespace ravopt::harness
