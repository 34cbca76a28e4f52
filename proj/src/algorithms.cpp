#include "ravopt/algorithms.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ravopt {

std::string_view to_string(StepKind kind) {
  return kind == StepKind::ShortGD ? "ShortGD" : "PolyakLong";
}

Vector finite_difference_gradient(const Objective& obj, const Vector& x, double rel_step) {
  const double h = rel_step * (1.0 + x.norm());
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double fp = obj.value(probe);
    probe(i) = x(i) - h;
    const double fm = obj.value(probe);
    probe(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

double gradient_relative_error(const Vector& analytic, const Vector& numeric) {
  const double scale =
      std::max({analytic.lpNorm<Eigen::Infinity>(), numeric.lpNorm<Eigen::Infinity>(), 1e-300});
  return (analytic - numeric).lpNorm<Eigen::Infinity>() / scale;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroGradient = 1e-30;

void check_eta(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw Error(ErrorCode::InvalidArgument, "eta must be a finite nonnegative number");
}

void check_positive(int n, const char* name) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be >= 1");
}

struct Best {
  Vector x;
  double value = kInf;

  void consider(const Vector& point, double f) {
    // strict comparison keeps the earliest minimizer
    if (f < value) {
      value = f;
      x = point;
    }
  }
};

// Owns the bookkeeping shared by every method: counting, records, running
// bests and epoch summaries.
class Runner {
 public:
  Runner(const Objective& obj, const RunOptions& options, double gap_reference)
      : obj_(obj), options_(options) {
    trace_.gap_reference = gap_reference;
  }

  struct Eval {
    double value;
    Vector grad;
  };

  Eval evaluate(const Vector& x) {
    std::pair<double, Vector> fg;
    try {
      fg = obj_.evaluate(x);
    } catch (const RunError&) {
      throw;
    } catch (const Error& e) {
      fail(e);
    }
    auto& [f, g] = fg;
    const long index = trace_.gradient_evaluations++;
    if (!g.allFinite()) fail(Error(ErrorCode::NonFiniteGradient, "gradient has NaN/Inf entries", index));
    global_.consider(x, f);
    window_.consider(x, f);
    if (produced_) epoch_best_ = std::min(epoch_best_, f);
    produced_ = true;
    return {f, std::move(g)};
  }

  double value_only(const Vector& x) {
    double f = 0.0;
    try {
      f = obj_.value(x);
    } catch (const Error& e) {
      fail(e);
    }
    global_.consider(x, f);
    window_.consider(x, f);
    epoch_best_ = std::min(epoch_best_, f);
    return f;
  }

  void record(const Vector& x, const Eval& e, StepKind kind, double stepsize) {
    StepRecord r;
    r.iter_index = trace_.gradient_evaluations - 1;
    r.epoch = epoch_;
    r.kind = kind;
    r.value_gap = e.value - trace_.gap_reference;
    r.grad_norm = e.grad.norm();
    r.stepsize = stepsize;
    if (options_.record_distances) {
      if (obj_.dist_solution) r.dist_solution = guarded(obj_.dist_solution, x);
      if (obj_.dist_ravine) r.dist_ravine = guarded(obj_.dist_ravine, x);
    }
    trace_.records.push_back(r);
  }

  // The first evaluation of an epoch is at a point produced by the previous
  // epoch, so it does not count toward this epoch's best gap.
  void begin_epoch(int epoch) {
    epoch_ = epoch;
    epoch_best_ = kInf;
    produced_ = false;
  }

  void end_epoch(int round, const Vector& x_end, double f_end, std::optional<double> polyak) {
    EpochSummary s;
    s.epoch = epoch_;
    s.round = round;
    s.best_gap = epoch_best_ - trace_.gap_reference;
    s.end_gap = f_end - trace_.gap_reference;
    s.polyak_stepsize = polyak;
    s.x_end = x_end;
    trace_.epochs.push_back(std::move(s));
  }

  void reset_window() { window_ = Best{}; }
  const Best& window() const { return window_; }
  const Best& global() const { return global_; }

  RunTrace& trace() { return trace_; }

  RunTrace finish(const Vector& x_out, double best_value) {
    trace_.x_out = x_out;
    trace_.best_value = best_value;
    return std::move(trace_);
  }

  [[noreturn]] void fail(const Error& cause) {
    if (global_.value < kInf) {
      trace_.x_out = global_.x;
      trace_.best_value = global_.value;
    }
    throw RunError(cause, std::move(trace_));
  }

  const Objective& objective() const { return obj_; }

 private:
  // Distance oracles may be undefined far from S; the run goes on with NaN.
  static double guarded(const std::function<double(const Vector&)>& f, const Vector& x) {
    try {
      return f(x);
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }

  const Objective& obj_;
  RunOptions options_;
  RunTrace trace_;
  Best global_;
  Best window_;
  int epoch_ = 0;
  double epoch_best_ = kInf;
  bool produced_ = false;
};

// K short steps from x, leaving x at the K-th iterate.
void short_steps(Runner& run, Vector& x, double eta, int K) {
  for (int k = 0; k < K; ++k) {
    const auto e = run.evaluate(x);
    run.record(x, e, StepKind::ShortGD, eta);
    x.noalias() -= eta * e.grad;
  }
}

}  // namespace

Vector gd_step(const Vector& x, double eta, const Objective& obj) {
  check_eta(eta);
  const Vector g = obj.gradient(x);
  if (!g.allFinite()) throw Error(ErrorCode::NonFiniteGradient, "gradient has NaN/Inf entries", 0);
  return x - eta * g;
}

GdSegment gd_run(const Vector& x0, double eta, int K, const Objective& obj,
                 const RunOptions& options) {
  check_eta(eta);
  check_positive(K, "K");
  Runner run(obj, options, obj.f_star.value_or(0.0));
  Vector x = x0;
  short_steps(run, x, eta, K);
  return {x, std::move(run.trace().records)};
}

double polyak_stepsize(double value, double f_target, const Vector& grad, double scale) {
  const double gap = value - f_target;
  const double gnorm = grad.norm();
  if (gap <= 0.0 || gnorm <= kZeroGradient) return 0.0;
  return gap / (scale * gnorm * gnorm);
}

Vector polyak_step(const Vector& x, const Objective& obj, double f_target, double scale) {
  auto [f, g] = obj.evaluate(x);
  if (!g.allFinite()) throw Error(ErrorCode::NonFiniteGradient, "gradient has NaN/Inf entries", 0);
  if (f_target > f + float_slack(f_target))
    throw Error(ErrorCode::TargetAboveValue,
                "target " + std::to_string(f_target) + " exceeds f(x) = " + std::to_string(f));
  return x - polyak_stepsize(f, f_target, g, scale) * g;
}

RunTrace gdpolyak(const Vector& x0, double eta, int K, int I, const Objective& obj,
                  const RunOptions& options) {
  if (!obj.f_star) throw Error(ErrorCode::MissingFStar, "gdpolyak needs the optimal value");
  check_eta(eta);
  check_positive(K, "K");
  check_positive(I, "I");
  const double f_star = *obj.f_star;

  Runner run(obj, options, f_star);
  Vector x = x0;
  for (int i = 1; i <= I; ++i) {
    run.begin_epoch(i);
    short_steps(run, x, eta, K);
    const auto e = run.evaluate(x);
    if (f_star > e.value + float_slack(f_star))
      run.fail(Error(ErrorCode::TargetAboveValue, "f* exceeds f(x)", run.trace().gradient_evaluations - 1));
    const double step = polyak_stepsize(e.value, f_star, e.grad, 1.0);
    run.record(x, e, StepKind::PolyakLong, step);
    x.noalias() -= step * e.grad;
    const double f_end = run.value_only(x);
    run.end_epoch(0, x, f_end, step);
  }
  const Best best = run.global();
  return run.finish(best.x, best.value);
}

RunTrace gdpolyak_lb(const Vector& x0, double eta, int K, int I, int J, double f0,
                     const Objective& obj, const RunOptions& options) {
  check_eta(eta);
  check_positive(K, "K");
  check_positive(I, "I");
  check_positive(J, "J");
  const double f_x0 = obj.value(x0);
  if (f0 > f_x0 + float_slack(f0))
    throw Error(ErrorCode::InvalidArgument, "f0 must not exceed f(x0)");

  Runner run(obj, options, obj.f_star.value_or(f0));
  std::vector<std::pair<Vector, double>> round_best;
  double f_prev = f0;
  Vector start = x0;
  for (int j = 1; j <= J; ++j) {
    Vector x = (options.warm_start && j > 1) ? round_best.back().first : start;
    run.reset_window();
    for (int i = 1; i <= I; ++i) {
      run.begin_epoch((j - 1) * I + i);
      short_steps(run, x, eta, K);
      const auto e = run.evaluate(x);
      double step = 0.0;
      if (f_prev > e.value + float_slack(f_prev)) {
        // the estimate sits above the current value: skip the long step
        ++run.trace().skipped_polyak_steps;
      } else {
        step = polyak_stepsize(e.value, f_prev, e.grad, 2.0);
      }
      run.record(x, e, StepKind::PolyakLong, step);
      x.noalias() -= step * e.grad;
      const double f_end = run.value_only(x);
      run.end_epoch(j, x, f_end, step);
    }
    const Best& w = run.window();
    round_best.emplace_back(w.x, w.value);
    f_prev = 0.5 * (f_prev + w.value);
    run.trace().round_values.push_back(w.value);
    run.trace().lower_estimates.push_back(f_prev);
  }
  run.trace().inner_best_value = run.global().value;
  auto [x_out, f_out] = best_iterate(round_best);
  return run.finish(x_out, f_out);
}

RunTrace run_gd(const Vector& x0, double eta, int epoch_length, int epochs, const Objective& obj,
                const RunOptions& options) {
  check_eta(eta);
  check_positive(epoch_length, "epoch_length");
  check_positive(epochs, "epochs");
  Runner run(obj, options, obj.f_star.value_or(0.0));
  Vector x = x0;
  for (int i = 1; i <= epochs; ++i) {
    run.begin_epoch(i);
    short_steps(run, x, eta, epoch_length);
    const double f_end = run.value_only(x);
    run.end_epoch(0, x, f_end, std::nullopt);
  }
  const Best best = run.global();
  return run.finish(best.x, best.value);
}

RunTrace run_polyak(const Vector& x0, int epoch_length, int epochs, const Objective& obj,
                    const RunOptions& options) {
  if (!obj.f_star) throw Error(ErrorCode::MissingFStar, "the Polyak method needs the optimal value");
  check_positive(epoch_length, "epoch_length");
  check_positive(epochs, "epochs");
  const double f_star = *obj.f_star;
  Runner run(obj, options, f_star);
  Vector x = x0;
  double step = 0.0;
  for (int i = 1; i <= epochs; ++i) {
    run.begin_epoch(i);
    for (int k = 0; k < epoch_length; ++k) {
      const auto e = run.evaluate(x);
      step = polyak_stepsize(e.value, f_star, e.grad, 1.0);
      run.record(x, e, StepKind::PolyakLong, step);
      x.noalias() -= step * e.grad;
    }
    const double f_end = run.value_only(x);
    run.end_epoch(0, x, f_end, step);
  }
  const Best best = run.global();
  return run.finish(best.x, best.value);
}

std::pair<Vector, double> best_iterate(std::span<const std::pair<Vector, double>> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyTrace, "no iterates to choose from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].second < records[best].second) best = i;
  return records[best];
}

}  // namespace ravopt
