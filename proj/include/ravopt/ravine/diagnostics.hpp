#pragma once

#include "ravopt/objective.hpp"
#include "ravopt/problems/factorization.hpp"
#include "ravopt/problems/sensing.hpp"
#include "ravopt/ravine/descriptor.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ravopt::ravine {

struct SampleRatio {
  Vector point;
  double ratio = 0.0;
};

struct DiagnosticsReport {
  std::string check;
  std::string problem;
  int samples_tested = 0;
  int samples_skipped = 0;
  double measured_lower = 0.0;
  double measured_upper = 0.0;
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
  bool pass = false;
  // Extreme samples: the one attaining measured_lower, then measured_upper.
  std::vector<SampleRatio> details;
  // Check-specific scalars (fitted slope, stability ratio, ...).
  std::map<std::string, double> metrics;
  std::string note;
};

// ratio (f(x) - f(R(x))) / |x - R(x)|^2 against the descriptor's bracket.
DiagnosticsReport check_ravine_quadratic(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                                         double radius, std::uint64_t seed);

// ratio <grad f(x), x - R(x)> / |x - R(x)|^2, pass when all ratios > 0.
DiagnosticsReport check_aiming(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                               double radius, std::uint64_t seed);

// Regression of log(f(y) - f*) on log dist(y, S) over retracted samples y.
// With exact_bracket_k set, also checks dist^4 / k <= f <= dist^4 per sample.
DiagnosticsReport check_growth_exponent(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                                        const std::vector<double>& radius_grid, std::uint64_t seed,
                                        std::optional<int> exact_bracket_k = std::nullopt);

// Exact fourth-order bracket on random points of M with |Q|_F in [t_min, t_max].
DiagnosticsReport check_factorization_growth_bracket(const problems::FactorizationInstance& inst,
                                                     int n_samples, double t_min, double t_max,
                                                     std::uint64_t seed);

// Max of (f - f*)^((p-1)/p) / |grad f| at `radius` and at radius / 10.
DiagnosticsReport check_lojasiewicz(const Objective& obj, const RavineDescriptor& rav, double p, int n_samples,
                                    double radius, std::uint64_t seed);

// Max of |grad f(x) - grad (f o R)(x)| / |x - R(x)| at radius and radius / 10.
DiagnosticsReport check_gradient_control(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                                         double radius, std::uint64_t seed);

struct RipOptions {
  // Sample Z = U diag(g) U^T; otherwise Z = U V^T.
  bool symmetric = true;
  // Overrides the instance's rip_scale.
  std::optional<double> scale;
};

struct RipMeasurement {
  double delta_hat = 0.0;
  double min_ratio = 0.0;  // min |A(Z)|^2 over unit |Z|_F
  double max_ratio = 0.0;
  int trials = 0;
};

RipMeasurement measure_rip_detailed(const problems::SensingInstance& inst, int rank_l, int trials,
                                    std::uint64_t seed, const RipOptions& options = {});

double measure_rip(const problems::SensingInstance& inst, int rank_l, int trials, std::uint64_t seed);

}  // namespace ravopt::ravine
