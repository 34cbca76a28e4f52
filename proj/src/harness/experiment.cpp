#include "ravopt/harness/experiment.hpp"

#include "ravopt/algorithms.hpp"
#include "ravopt/harness/trace_io.hpp"
#include "ravopt/problems/instance_io.hpp"

#include <filesystem>

namespace ravopt::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* method_semantics(Method m) {
  switch (m) {
    case Method::gd: return "constant stepsize eta at every iteration";
    case Method::polyak: return "Polyak step (f(x) - f*) / |grad f|^2 at every iteration";
    case Method::gdpolyak: return "I epochs of K steps with stepsize eta, each followed by one Polyak step";
    case Method::gdpolyak_lb:
      return "J rounds from x0 of I epochs (K short steps + halved Polyak step toward the running "
             "lower estimate f_j)";
  }
  return "";
}

std::optional<long> first_below(const RunTrace& trace, double threshold) {
  for (const auto& r : trace.records)
    if (r.value_gap <= threshold) return r.iter_index;
  return std::nullopt;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

RunTrace run_method(const ExperimentConfig& config, const ProblemBundle& bundle, const Vector& x0) {
  validate(config);
  RunOptions options;
  options.record_distances = config.record_distances;
  options.warm_start = config.warm_start;
  const Objective& obj = bundle.objective;
  switch (*config.method) {
    case Method::gd: return run_gd(x0, config.eta, config.K + 1, config.I, obj, options);
    case Method::polyak: return run_polyak(x0, config.K + 1, config.I, obj, options);
    case Method::gdpolyak: return gdpolyak(x0, config.eta, config.K, config.I, obj, options);
    case Method::gdpolyak_lb:
      return gdpolyak_lb(x0, config.eta, config.K, config.I, *config.J, *config.f_lb, obj, options);
  }
  throw Error(ErrorCode::ConfigInvalid, "method: unsupported");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const ProblemBundle bundle = build_problem(config.problem, config.problem_params);
  return run_experiment(config, bundle, initial_point(bundle, config));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ProblemBundle& bundle, const Vector& x0) {
  validate(config);
  ExperimentResult result;
  try {
    result.trace = run_method(config, bundle, x0);
  } catch (const RunError& e) {
    result.trace = e.partial();
    result.error = e.what();
  }
  if (!result.error && !result.trace.epochs.empty()) {
    try {
      result.fit = fit_linear_rate(result.trace);
    } catch (const Error&) {
      // too few positive gaps (e.g. exact convergence); no fit reported
    }
  }

  const RunTrace& t = result.trace;
  const Method method = *config.method;
  long expected = static_cast<long>(config.I) * (config.K + 1);
  if (method == Method::gdpolyak_lb) expected *= *config.J;

  json m;
  m["config"] = config;
  m["method_semantics"] = method_semantics(method);
  m["initial_point"] = vector_to_json(x0);
  m["init_policy"] = {{"radius", config.init_radius},
                      {"seed", config.seed},
                      {"base", "known solution plus a uniformly random direction"},
                      {"note", "radius and seed policy are harness choices"}};
  m["gradient_evaluations"] = t.gradient_evaluations;
  m["budget"] = expected;
  m["gap_reference"] = t.gap_reference;
  m["best_value"] = number_or_null(t.best_value);
  m["best_gap"] = number_or_null(t.best_value - t.gap_reference);
  m["final_epoch_gap"] = t.epochs.empty() ? json(nullptr) : number_or_null(t.epochs.back().end_gap);
  m["epochs_completed"] = t.epochs.size();
  m["records"] = t.records.size();
  if (result.fit) {
    m["rate_fit"] = {{"slope", result.fit->slope}, {"r2", result.fit->r2}, {"points", result.fit->points},
                     {"burn_in", 5}};
  }
  if (method == Method::gdpolyak_lb) {
    m["lower_estimates"] = t.lower_estimates;
    m["round_values"] = t.round_values;
    m["inner_best_value"] = t.inner_best_value ? number_or_null(*t.inner_best_value) : json(nullptr);
    m["skipped_polyak_steps"] = t.skipped_polyak_steps;
  }
  if (bundle.sensing) m["instance_model"] = bundle.sensing->model;
  if (bundle.factorization) m["instance_model"] = bundle.factorization->generator;
  if (config.gap_threshold) {
    const auto hit = first_below(t, *config.gap_threshold);
    m["first_iter_below_threshold"] = hit ? json(*hit) : json(nullptr);
  }
  m["status"] = result.error ? "error" : "ok";
  m["error"] = result.error ? json(*result.error) : json(nullptr);
  result.manifest = m;

  if (!config.out_dir.empty()) {
    const fs::path dir(config.out_dir);
    fs::create_directories(dir / "reports");
    write_text_file((dir / "config.json").string(), json(config).dump(2) + "\n");
    const json inst = bundle.instance_json();
    if (!inst.is_null()) write_text_file((dir / "instance.json").string(), inst.dump() + "\n");
    write_trace_csv((dir / "trace.csv").string(), t);
    write_text_file((dir / "manifest.json").string(), m.dump(2) + "\n");
    if (result.fit) {
      json fit = {{"slope", result.fit->slope}, {"r2", result.fit->r2}, {"points", result.fit->points}};
      write_text_file((dir / "reports" / "rate_fit.json").string(), fit.dump(2) + "\n");
    }
  }
  return result;
}

}  // namespace ravopt::harness
