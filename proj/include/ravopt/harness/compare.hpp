#pragma once

#include "ravopt/harness/config.hpp"
#include "ravopt/harness/experiment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ravopt::harness {

struct ComparisonRow {
  Method method = Method::gd;
  double final_gap = 0.0;
  double best_gap = 0.0;
  long gradient_evaluations = 0;
  std::optional<double> slope;
  std::optional<double> r2;
  std::optional<std::string> error;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  Vector initial_point;

  const ComparisonRow& row(Method m) const;
  std::string to_csv() const;
  std::string to_text() const;
};

// Runs gd, polyak and gdpolyak (and gdpolyak_lb when base.J and base.f_lb
// are set) from one initial point with equal gradient budgets I (K + 1).
// The lower-bound variant runs I / J epochs per round, so J must divide I.
// Each method writes its run under out_dir/<method>; the table goes to
// out_dir/comparison.{csv,txt}.
ComparisonTable compare_methods(const ExperimentConfig& base);

}  // namespace ravopt::harness
