#include "ravopt/ravine/diagnostics.hpp"

#include "ravopt/rng.hpp"

#include <cmath>

namespace ravopt::ravine {

RipMeasurement measure_rip_detailed(const problems::SensingInstance& inst, int rank_l, int trials,
                                    std::uint64_t seed, const RipOptions& options) {
  const int d = inst.fac.d;
  if (rank_l < 1 || rank_l > d) throw Error(ErrorCode::InvalidArgument, "need 1 <= rank_l <= d");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const double scale = options.scale.value_or(inst.rip_scale) / inst.m;

  RipMeasurement out;
  out.trials = trials;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
    Matrix Z;
    if (options.symmetric) {
      const Matrix U = random_orthonormal_rows(rng, rank_l, d).transpose();
      Z = U * standard_normal(rng, rank_l).asDiagonal() * U.transpose();
    } else {
      Z = standard_normal(rng, d, rank_l) * standard_normal(rng, d, rank_l).transpose();
    }
    Z /= Z.norm();
    const double ratio = scale * problems::apply_measurements(inst, Z).squaredNorm();
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
    out.delta_hat = std::max(out.delta_hat, std::abs(ratio - 1.0));
  }
  return out;
}

double measure_rip(const problems::SensingInstance& inst, int rank_l, int trials, std::uint64_t seed) {
  return measure_rip_detailed(inst, rank_l, trials, seed).delta_hat;
}

}  // namespace ravopt::ravine
