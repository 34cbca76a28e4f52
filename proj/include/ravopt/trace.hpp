#pragma once

#include "ravopt/common.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace ravopt {

enum class StepKind { ShortGD, PolyakLong };

std::string_view to_string(StepKind kind);

// Statistics at one gradient evaluation. The stepsize is the one applied
// from this point.
struct StepRecord {
  long iter_index = 0;
  int epoch = 0;
  StepKind kind = StepKind::ShortGD;
  double value_gap = 0.0;
  double grad_norm = 0.0;
  double stepsize = 0.0;
  std::optional<double> dist_solution;
  std::optional<double> dist_ravine;
};

struct EpochSummary {
  int epoch = 0;  // flattened, 1-based
  int round = 0;  // outer round for the lower-bound variant, else 0
  // Smallest gap among the iterates produced during the epoch.
  double best_gap = 0.0;
  // Gap and stepsize of the closing long step, when there is one.
  double end_gap = 0.0;
  std::optional<double> polyak_stepsize;
  Vector x_end;
};

struct RunTrace {
  std::vector<StepRecord> records;
  std::vector<EpochSummary> epochs;
  Vector x_out;
  double best_value = 0.0;
  long gradient_evaluations = 0;
  // Reference used for value_gap: f* when known, otherwise the supplied f0.
  double gap_reference = 0.0;

  // Lower-bound variant only.
  std::vector<double> lower_estimates;  // f_1 .. f_J
  std::vector<double> round_values;     // f(x_j)
  std::optional<double> inner_best_value;
  long skipped_polyak_steps = 0;
};

// Carries the trace collected before a failure.
class RunError : public Error {
 public:
  RunError(const Error& cause, RunTrace partial)
      : Error(Preformatted{}, cause.code(), cause.what(), cause.index()), partial_(std::move(partial)) {}
  const RunTrace& partial() const { return partial_; }

 private:
  RunTrace partial_;
};

}  // namespace ravopt
