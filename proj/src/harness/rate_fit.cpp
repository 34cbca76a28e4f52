#include "ravopt/harness/rate_fit.hpp"

#include <cmath>
#include <vector>

namespace ravopt::harness {

RateFit fit_linear_rate(std::span<const double> epoch_gaps, int burn_in) {
  if (burn_in < 0) throw Error(ErrorCode::InvalidArgument, "burn_in must be >= 0");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < epoch_gaps.size(); ++i) {
    const double epoch = static_cast<double>(i + 1);
    const double gap = epoch_gaps[i];
    if (static_cast<int>(i + 1) < burn_in || !(gap > 1e-30) || !std::isfinite(gap)) continue;
    xs.push_back(epoch);
    ys.push_back(std::log(gap));
  }
  if (xs.size() < 5)
    throw Error(ErrorCode::InsufficientData,
                "need 5 positive epoch gaps after burn-in, have " + std::to_string(xs.size()));
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  // a perfectly flat series is explained exactly by slope 0
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = static_cast<int>(xs.size());
  return fit;
}

RateFit fit_linear_rate(const RunTrace& trace, int burn_in) {
  std::vector<double> gaps;
  gaps.reserve(trace.epochs.size());
  for (const auto& e : trace.epochs) gaps.push_back(e.best_gap);
  return fit_linear_rate(gaps, burn_in);
}

}  // namespace ravopt::harness
