#include "ravopt/harness/diagnose.hpp"

#include "ravopt/harness/trace_io.hpp"
#include "ravopt/ravine/morse.hpp"
#include "ravopt/ravine/report_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace ravopt::harness {

namespace fs = std::filesystem;
using ravine::DiagnosticsReport;

std::string_view to_string(Check c) {
  switch (c) {
    case Check::ravine: return "ravine";
    case Check::aiming: return "aiming";
    case Check::growth: return "growth";
    case Check::lojasiewicz: return "lojasiewicz";
    case Check::gradcontrol: return "gradcontrol";
    case Check::morse: return "morse";
    case Check::rip: return "rip";
  }
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (auto c : {Check::ravine, Check::aiming, Check::growth, Check::lojasiewicz, Check::gradcontrol,
                 Check::morse, Check::rip})
    if (to_string(c) == name) return c;
  throw Error(ErrorCode::ConfigInvalid, "suite: unknown check '" + std::string(name) + "'");
}

std::vector<Check> parse_suite(std::string_view list) {
  std::vector<Check> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view item = list.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_check(item));
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorCode::ConfigInvalid, "suite: must name at least one check");
  return out;
}

DiagnoseConfig default_diagnose_config(ProblemKind problem) {
  DiagnoseConfig c;
  c.problem = problem;
  c.problem_params = default_config(problem).problem_params;
  switch (problem) {
    case ProblemKind::quartic1d:
    case ProblemKind::rosenbrock:
      c.radius = 0.1;
      break;
    case ProblemKind::circle:
      c.radius = 0.1;
      c.u_min = -0.2;
      c.u_max = 0.2;
      c.u_step = 0.05;
      break;
    case ProblemKind::factorization:
    case ProblemKind::sensing:
      c.radius = 0.01;
      break;
    case ProblemKind::neuron:
      c.radius = 0.05;
      break;
  }
  return c;
}

void check_supported(ProblemKind problem, Check check, const ProblemBundle& bundle) {
  auto unsupported = [&](const std::string& why) {
    throw Error(ErrorCode::UnsupportedCheck,
                std::string(to_string(problem)) + "/" + std::string(to_string(check)) + ": " + why);
  };
  switch (check) {
    case Check::rip:
      if (problem != ProblemKind::sensing) unsupported("RIP is defined for sensing instances only");
      break;
    case Check::morse:
      if (bundle.objective.dim > 10) unsupported("Morse solving is limited to dimension 10");
      if (problem == ProblemKind::quartic1d) unsupported("the Hessian at the minimizer has no range");
      break;
    case Check::ravine:
    case Check::aiming:
    case Check::gradcontrol:
      if (problem == ProblemKind::quartic1d) unsupported("the ravine is the whole line");
      break;
    default:
      break;
  }
}

DiagnosticsReport run_morse_check(const DiagnoseConfig& config, const ProblemBundle& bundle,
                                  std::vector<MorseSample>* samples) {
  check_supported(config.problem, Check::morse, bundle);
  if (!(config.u_step > 0.0) || config.u_max < config.u_min)
    throw Error(ErrorCode::ConfigInvalid, "u-grid: need step > 0 and min <= max");
  const auto solver =
      ravine::morse_ravine_solve(bundle.objective, bundle.base_solution, config.tol, config.max_iter);
  const Eigen::Index tdim = solver.tangent().cols();
  const int steps = static_cast<int>(std::floor((config.u_max - config.u_min) / config.u_step + 1e-9));

  DiagnosticsReport rep;
  rep.check = "morse";
  rep.problem = bundle.ravine.name;
  double worst = 0.0;
  double worst_alt = 0.0;
  int count = 0;
  for (Eigen::Index axis = 0; axis < tdim; ++axis) {
    for (int s = 0; s <= steps; ++s) {
      const double uval = config.u_min + s * config.u_step;
      Vector u = Vector::Zero(tdim);
      u(axis) = uval;
      const Vector v = solver.solve(u);
      const Vector z = solver.point(u);
      double err = 0.0;
      switch (config.problem) {
        case ProblemKind::rosenbrock:
          err = std::abs(z(1) - z(0) * z(0));
          break;
        case ProblemKind::circle:
          err = std::abs(ravine::circle_display_residual(z(0), z(1)));
          worst_alt = std::max(worst_alt, std::abs(ravine::circle_normal_condition(z(0), z(1))));
          break;
        default:
          err = (solver.normal().transpose() * bundle.objective.gradient(z)).norm();
          break;
      }
      worst = std::max(worst, err);
      if (samples) samples->push_back({u, v, z, err});
      if (count == 0 || err >= rep.measured_upper) rep.details = {{z, err}};
      rep.measured_upper = std::max(rep.measured_upper, err);
      ++count;
    }
  }
  rep.samples_tested = count;
  rep.measured_lower = 0.0;
  rep.bracket_lower = 0.0;
  switch (config.problem) {
    case ProblemKind::rosenbrock:
      rep.bracket_upper = 1e-10;
      rep.note = "error is |v(u) - u^2|";
      break;
    case ProblemKind::circle:
      rep.bracket_upper = 1e-6;
      rep.metrics["max_normal_condition_residual"] = worst_alt;
      rep.note = "error is the residual of the displayed implicit equation; "
                 "max_normal_condition_residual is (r - 1) y r^3 - 4 x^2 (r - y)";
      break;
    default:
      rep.bracket_upper = 10.0 * config.tol;
      rep.note = "error is the normal gradient |N^T grad f| at the traced point";
      break;
  }
  rep.metrics["tangent_dimension"] = static_cast<double>(tdim);
  rep.pass = worst <= rep.bracket_upper;
  return rep;
}

namespace {

std::vector<double> growth_grid(double radius) {
  return {radius / 100.0, radius / 31.6227766, radius / 10.0, radius / 3.16227766, radius};
}

void write_morse_csv(const std::string& path, const std::vector<MorseSample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << "u,v,point,error\n";
  auto join = [](const Vector& x) {
    std::string s;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? " " : "") + format_double(x(i));
    return s;
  };
  for (const auto& s : samples)
    out << join(s.u) << ',' << join(s.v) << ',' << join(s.point) << ',' << format_double(s.reference_error) << '\n';
}

}  // namespace

std::vector<DiagnosticsReport> diagnose(const DiagnoseConfig& config) {
  if (config.suite.empty()) throw Error(ErrorCode::ConfigInvalid, "suite: must name at least one check");
  const ProblemBundle bundle = build_problem(config.problem, config.problem_params);
  for (Check c : config.suite) check_supported(config.problem, c, bundle);

  const Objective& obj = bundle.objective;
  const auto& rav = bundle.ravine;
  std::vector<DiagnosticsReport> reports;
  std::vector<MorseSample> morse_samples;
  for (Check c : config.suite) {
    DiagnosticsReport rep;
    try {
      switch (c) {
        case Check::ravine:
          rep = ravine::check_ravine_quadratic(obj, rav, config.samples, config.radius, config.seed);
          break;
        case Check::aiming:
          rep = ravine::check_aiming(obj, rav, config.samples, config.radius, config.seed);
          break;
        case Check::growth: {
          if (bundle.factorization) {
            const Objective precise = problems::factorization_objective(*bundle.factorization, true);
            rep = ravine::check_growth_exponent(precise, rav, config.samples, growth_grid(config.radius),
                                                config.seed, bundle.factorization->k);
          } else {
            rep = ravine::check_growth_exponent(obj, rav, config.samples, growth_grid(config.radius),
                                                config.seed);
          }
          break;
        }
        case Check::lojasiewicz:
          rep = ravine::check_lojasiewicz(obj, rav, rav.p_growth, config.samples, config.radius, config.seed);
          break;
        case Check::gradcontrol:
          rep = ravine::check_gradient_control(obj, rav, config.samples, config.radius, config.seed);
          break;
        case Check::morse:
          rep = run_morse_check(config, bundle, &morse_samples);
          break;
        case Check::rip: {
          const auto& inst = *bundle.sensing;
          const int rank = std::min(inst.fac.d, inst.fac.k + inst.fac.r);
          const auto iso = ravine::measure_rip_detailed(inst, rank, config.rip_trials, config.seed);
          ravine::RipOptions literal;
          literal.scale = 1.0;
          const auto raw = ravine::measure_rip_detailed(inst, rank, config.rip_trials, config.seed, literal);
          rep.check = "rip";
          rep.problem = rav.name;
          rep.samples_tested = config.rip_trials;
          rep.measured_lower = iso.min_ratio;
          rep.measured_upper = iso.max_ratio;
          rep.bracket_lower = 0.5;
          rep.bracket_upper = 1.5;
          rep.metrics["delta_hat"] = iso.delta_hat;
          rep.metrics["rank"] = rank;
          rep.metrics["rip_scale"] = inst.rip_scale;
          rep.metrics["delta_hat_unit_scale"] = raw.delta_hat;
          rep.pass = iso.delta_hat < 0.5;
          rep.note = "ratios |A(Z)|^2 over unit-norm symmetric Z of the given rank, with "
                     "A(Z)_i = sqrt(rip_scale / m) <A_i, Z>";
          break;
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnsupportedCheck) throw;
      rep = DiagnosticsReport{};
      rep.check = std::string(to_string(c));
      rep.problem = rav.name;
      rep.pass = false;
      rep.note = e.what();
    }
    reports.push_back(rep);
  }

  if (!config.out_dir.empty()) {
    fs::create_directories(config.out_dir);
    for (const auto& rep : reports)
      write_text_file((fs::path(config.out_dir) / (rep.check + ".json")).string(),
                      nlohmann::json(rep).dump(2) + "\n");
    if (!morse_samples.empty()) write_morse_csv((fs::path(config.out_dir) / "morse.csv").string(), morse_samples);
  }
  return reports;
}

bool all_pass(const std::vector<DiagnosticsReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return !reports.empty();
}

}  // namespace ravopt::harness
