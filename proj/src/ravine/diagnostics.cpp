#include "ravopt/ravine/diagnostics.hpp"

#include "ravopt/ravine/factorization_geometry.hpp"
#include "ravopt/rng.hpp"

#include <cmath>
#include <limits>

namespace ravopt::ravine {

namespace {

constexpr double kSkip = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Running extremes plus skip accounting shared by the ratio checks.
class RatioStats {
 public:
  void add(const Vector& x, double ratio) {
    ++tested_;
    if (ratio < lo_.ratio || tested_ == 1) lo_ = {x, ratio};
    if (ratio > hi_.ratio || tested_ == 1) hi_ = {x, ratio};
  }
  void skip() { ++skipped_; }
  int tested() const { return tested_; }
  int skipped() const { return skipped_; }
  const SampleRatio& lo() const { return lo_; }
  const SampleRatio& hi() const { return hi_; }

  void fill(DiagnosticsReport& rep) const {
    if (tested_ == 0 || skipped_ * 2 > tested_ + skipped_)
      throw Error(ErrorCode::InsufficientValidSamples,
                  rep.check + ": " + std::to_string(skipped_) + " of " + std::to_string(tested_ + skipped_) +
                      " samples skipped");
    rep.samples_tested = tested_;
    rep.samples_skipped = skipped_;
    rep.measured_lower = lo_.ratio;
    rep.measured_upper = hi_.ratio;
    rep.details = {lo_, hi_};
  }

 private:
  int tested_ = 0;
  int skipped_ = 0;
  SampleRatio lo_{Vector(), kInf};
  SampleRatio hi_{Vector(), -kInf};
};

Vector sample_near_solution(const RavineDescriptor& rav, double radius, std::uint64_t seed, int i) {
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
  const Vector s = rav.sample_solution(rng);
  return s + radius * random_direction(rng, s.size());
}

void check_samples(int n_samples) {
  if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 1");
}

bool within(double value, double lower, double upper) {
  const bool lower_ok = lower > 0.0 ? value >= lower : value > 0.0;
  return lower_ok && value <= upper;
}

Vector composite_gradient(const Objective& obj, const RavineDescriptor& rav, const Vector& x) {
  const double h = 1e-6 * (1.0 + x.norm());
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double fp = obj.value(rav.retract(probe));
    probe(i) = x(i) - h;
    const double fm = obj.value(rav.retract(probe));
    probe(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

DiagnosticsReport check_ravine_quadratic(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                                         double radius, std::uint64_t seed) {
  check_samples(n_samples);
  DiagnosticsReport rep;
  rep.check = "ravine";
  rep.problem = rav.name;
  RatioStats stats;
  for (int i = 0; i < n_samples; ++i) {
    const Vector x = sample_near_solution(rav, radius, seed, i);
    const Vector rx = rav.retract(x);
    const double dist = (x - rx).norm();
    if (dist < kSkip) {
      stats.skip();
      continue;
    }
    stats.add(x, (obj.value(x) - obj.value(rx)) / (dist * dist));
  }
  stats.fill(rep);
  rep.bracket_lower = rav.quadratic_lower;
  rep.bracket_upper = rav.quadratic_upper;
  rep.pass = within(rep.measured_lower, rep.bracket_lower, rep.bracket_upper) &&
             within(rep.measured_upper, rep.bracket_lower, rep.bracket_upper);
  return rep;
}

DiagnosticsReport check_aiming(const Objective& obj, const RavineDescriptor& rav, int n_samples, double radius,
                               std::uint64_t seed) {
  check_samples(n_samples);
  DiagnosticsReport rep;
  rep.check = "aiming";
  rep.problem = rav.name;
  RatioStats stats;
  for (int i = 0; i < n_samples; ++i) {
    const Vector x = sample_near_solution(rav, radius, seed, i);
    const Vector diff = x - rav.retract(x);
    const double dist = diff.norm();
    if (dist < kSkip) {
      stats.skip();
      continue;
    }
    stats.add(x, obj.gradient(x).dot(diff) / (dist * dist));
  }
  stats.fill(rep);
  rep.bracket_lower = 0.0;
  rep.bracket_upper = kInf;
  rep.pass = rep.measured_lower > 0.0;
  return rep;
}

DiagnosticsReport check_growth_exponent(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                                        const std::vector<double>& radius_grid, std::uint64_t seed,
                                        std::optional<int> exact_bracket_k) {
  check_samples(n_samples);
  if (radius_grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "radius grid needs two or more radii");
  const auto [rmin, rmax] = std::minmax_element(radius_grid.begin(), radius_grid.end());
  if (!(*rmax >= 10.0 * *rmin)) throw Error(ErrorCode::InvalidArgument, "radius grid must span a decade");
  if (!obj.dist_solution) throw Error(ErrorCode::InvalidArgument, "objective has no distance oracle");
  const double f_star = obj.f_star.value_or(0.0);

  DiagnosticsReport rep;
  rep.check = "growth";
  rep.problem = rav.name;
  std::vector<double> lx, ly;
  RatioStats stats;
  double worst_bracket = 0.0;  // largest relative violation
  int bracket_skipped = 0;
  int index = 0;
  for (double radius : radius_grid) {
    for (int i = 0; i < n_samples; ++i, ++index) {
      const Vector y = rav.retract(sample_near_solution(rav, radius, seed, index));
      const double dist = obj.dist_solution(y);
      const double gap = obj.value(y) - f_star;
      if (dist < kSkip || !(gap > 0.0)) {
        stats.skip();
        continue;
      }
      lx.push_back(std::log(dist));
      ly.push_back(std::log(gap));
      stats.add(y, gap / std::pow(dist, rav.p_growth));
      // below this distance float64 rounding of O(1) entries exceeds the
      // 1e-10 relative bracket tolerance
      if (exact_bracket_k && dist < 1e-5 * std::max(1.0, y.norm())) {
        ++bracket_skipped;
      } else if (exact_bracket_k) {
        const double d4 = std::pow(dist, 4);
        const double lower = d4 / *exact_bracket_k;
        worst_bracket = std::max({worst_bracket, (lower - gap) / lower, (gap - d4) / d4});
      }
    }
  }
  stats.fill(rep);

  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  const double residual = std::sqrt(std::max(0.0, syy - slope * sxy) / n);
  rep.metrics["slope"] = slope;
  rep.metrics["residual_rms"] = residual;
  rep.metrics["p"] = rav.p_growth;
  rep.bracket_lower = rav.p_growth - 0.1;
  rep.bracket_upper = rav.p_growth + 0.1;
  rep.pass = std::abs(slope - rav.p_growth) <= 0.1;
  if (exact_bracket_k) {
    rep.metrics["bracket_violation"] = worst_bracket;
    rep.metrics["bracket_samples_below_resolution"] = bracket_skipped;
    rep.pass = rep.pass && worst_bracket <= 1e-10;
  }
  rep.note = "measured_lower/upper are extremes of (f - f*) / dist^p";
  return rep;
}

DiagnosticsReport check_factorization_growth_bracket(const problems::FactorizationInstance& inst,
                                                     int n_samples, double t_min, double t_max,
                                                     std::uint64_t seed) {
  check_samples(n_samples);
  if (!(t_min > 0.0 && t_max >= t_min)) throw Error(ErrorCode::InvalidArgument, "need 0 < t_min <= t_max");
  DiagnosticsReport rep;
  rep.check = "growth_bracket";
  rep.problem = "factorization";
  rep.bracket_lower = 1.0 / inst.k;
  rep.bracket_upper = 1.0;
  RatioStats stats;
  double worst = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < n_samples; ++i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    const double t = t_min * std::pow(t_max / t_min, unit(rng));
    const Matrix B = random_factorization_manifold_point(inst, t, rng);
    const double dist = factorization_dist_to_solution(B, inst);
    const double f = problems::factorization_value_eigenbasis(B, inst);
    const double d4 = std::pow(dist, 4);
    // relative violations of d4 / k <= f <= d4
    worst = std::max({worst, (d4 / inst.k - f) / (d4 / inst.k), (f - d4) / d4});
    stats.add(problems::flatten(B), f / d4);
  }
  stats.fill(rep);
  rep.metrics["max_relative_violation"] = worst;
  rep.pass = worst <= 1e-10;
  return rep;
}

DiagnosticsReport check_lojasiewicz(const Objective& obj, const RavineDescriptor& rav, double p, int n_samples,
                                    double radius, std::uint64_t seed) {
  check_samples(n_samples);
  if (!obj.f_star) throw Error(ErrorCode::MissingFStar, "the Lojasiewicz check needs f*");
  const double f_star = *obj.f_star;
  const double exponent = (p - 1.0) / p;

  DiagnosticsReport rep;
  rep.check = "lojasiewicz";
  rep.problem = rav.name;
  double max_at[2] = {0.0, 0.0};
  RatioStats stats;
  for (int level = 0; level < 2; ++level) {
    const double rad = level == 0 ? radius : radius / 10.0;
    RatioStats local;
    for (int i = 0; i < n_samples; ++i) {
      const Vector x = sample_near_solution(rav, rad, seed + static_cast<std::uint64_t>(level), i);
      auto [f, g] = obj.evaluate(x);
      const double gnorm = g.norm();
      const double gap = f - f_star;
      if (gnorm < 1e-300 || !(gap > 0.0)) {
        local.skip();
        stats.skip();
        continue;
      }
      const double r = std::pow(gap, exponent) / gnorm;
      local.add(x, r);
      stats.add(x, r);
    }
    if (local.tested() == 0)
      throw Error(ErrorCode::InsufficientValidSamples, "lojasiewicz: every sample was stationary");
    max_at[level] = local.hi().ratio;
  }
  stats.fill(rep);
  const double growth = max_at[1] / max_at[0];
  rep.metrics["c_L"] = std::max(max_at[0], max_at[1]);
  rep.metrics["max_at_radius"] = max_at[0];
  rep.metrics["max_at_radius_div10"] = max_at[1];
  rep.metrics["growth"] = growth;
  rep.bracket_lower = 0.0;
  rep.bracket_upper = 2.0;
  rep.pass = std::isfinite(max_at[0]) && std::isfinite(max_at[1]) && growth <= 2.0;
  rep.note = "bracket applies to the growth of the maximum when the radius shrinks 10x";
  return rep;
}

DiagnosticsReport check_gradient_control(const Objective& obj, const RavineDescriptor& rav, int n_samples,
                                         double radius, std::uint64_t seed) {
  check_samples(n_samples);
  DiagnosticsReport rep;
  rep.check = "gradcontrol";
  rep.problem = rav.name;
  double max_at[2] = {0.0, 0.0};
  RatioStats stats;
  for (int level = 0; level < 2; ++level) {
    const double rad = level == 0 ? radius : radius / 10.0;
    RatioStats local;
    for (int i = 0; i < n_samples; ++i) {
      const Vector x = sample_near_solution(rav, rad, seed + static_cast<std::uint64_t>(level), i);
      const double dist = (x - rav.retract(x)).norm();
      if (dist < kSkip) {
        local.skip();
        stats.skip();
        continue;
      }
      const double r = (obj.gradient(x) - composite_gradient(obj, rav, x)).norm() / dist;
      local.add(x, r);
      stats.add(x, r);
    }
    if (local.tested() == 0)
      throw Error(ErrorCode::InsufficientValidSamples, "gradcontrol: every sample lies on the ravine");
    max_at[level] = local.hi().ratio;
  }
  stats.fill(rep);
  const double growth = max_at[1] / max_at[0];
  rep.metrics["max_at_radius"] = max_at[0];
  rep.metrics["max_at_radius_div10"] = max_at[1];
  rep.metrics["growth"] = growth;
  rep.bracket_lower = 0.0;
  rep.bracket_upper = 2.0;
  rep.pass = std::isfinite(max_at[0]) && std::isfinite(max_at[1]) && growth <= 2.0;
  rep.note = "bracket applies to the growth of the maximum when the radius shrinks 10x";
  return rep;
}

}  // namespace ravopt::ravine
