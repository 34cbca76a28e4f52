// Command-line front end: run, compare, diagnose, morse.
#include "ravopt/harness/compare.hpp"
#include "ravopt/harness/diagnose.hpp"
#include "ravopt/harness/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace ravopt;
using namespace ravopt::harness;

namespace {

struct RunFlags {
  std::string config_file;
  std::string problem;
  std::string method;
  double eta = 0;
  int K = 0, I = 0, J = 0;
  double f_lb = 0;
  double init_radius = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool record_distances = false;
  int d = 0, r = 0, k = 0, m = 0;
  std::uint64_t instance_seed = 0;
  double gap_threshold = 0;
  bool warm_start = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_method) {
  cmd->add_option("--config", f.config_file, "JSON config; flags given explicitly take precedence");
  cmd->add_option("--problem", f.problem, "quartic1d|rosenbrock|circle|factorization|sensing|neuron");
  if (with_method) cmd->add_option("--method", f.method, "gd|polyak|gdpolyak|gdpolyak_lb");
  cmd->add_option("--eta", f.eta, "short stepsize");
  cmd->add_option("--K", f.K, "short steps per epoch");
  cmd->add_option("--I", f.I, "epochs");
  cmd->add_option("--J", f.J, "rounds (gdpolyak_lb)");
  cmd->add_option("--f-lb", f.f_lb, "initial lower estimate (gdpolyak_lb)");
  cmd->add_option("--init-radius", f.init_radius, "distance of the initial point from the base solution");
  cmd->add_option("--seed", f.seed, "initialization seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--record-distances", f.record_distances, "record distances to S and to the ravine");
  cmd->add_option("--d", f.d, "dimension");
  cmd->add_option("--r", f.r, "true rank");
  cmd->add_option("--k", f.k, "factor rank");
  cmd->add_option("--m", f.m, "measurements");
  cmd->add_option("--instance-seed", f.instance_seed, "instance generation seed");
  cmd->add_option("--gap-threshold", f.gap_threshold, "report the first iteration below this gap");
  cmd->add_flag("--warm-start", f.warm_start, "gdpolyak_lb: start each round from the previous round's best");
}

bool given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

ExperimentConfig assemble(const CLI::App* cmd, const RunFlags& f) {
  nlohmann::json file;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + f.config_file);
    in >> file;
  }
  std::string problem = f.problem;
  if (!given(cmd, "--problem")) {
    if (!file.contains("problem")) throw Error(ErrorCode::ConfigInvalid, "problem: required");
    problem = file.at("problem").get<std::string>();
  }
  ExperimentConfig c = default_config(parse_problem(problem));
  c.method.reset();
  if (!file.is_null()) merge_json(file, c);
  c.problem = parse_problem(problem);

  if (given(cmd, "--method")) c.method = parse_method(f.method);
  if (given(cmd, "--eta")) c.eta = f.eta;
  if (given(cmd, "--K")) c.K = f.K;
  if (given(cmd, "--I")) c.I = f.I;
  if (given(cmd, "--J")) c.J = f.J;
  if (given(cmd, "--f-lb")) c.f_lb = f.f_lb;
  if (given(cmd, "--init-radius")) c.init_radius = f.init_radius;
  if (given(cmd, "--seed")) c.seed = f.seed;
  if (given(cmd, "--out")) c.out_dir = f.out;
  if (given(cmd, "--record-distances")) c.record_distances = true;
  if (given(cmd, "--d")) c.problem_params.d = f.d;
  if (given(cmd, "--r")) c.problem_params.r = f.r;
  if (given(cmd, "--k")) c.problem_params.k = f.k;
  if (given(cmd, "--m")) c.problem_params.m = f.m;
  if (given(cmd, "--instance-seed")) c.problem_params.instance_seed = f.instance_seed;
  if (given(cmd, "--gap-threshold")) c.gap_threshold = f.gap_threshold;
  if (given(cmd, "--warm-start")) c.warm_start = true;
  return c;
}

// "a:b:step"
void parse_grid(const std::string& text, DiagnoseConfig& c) {
  const auto p1 = text.find(':');
  const auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw Error(ErrorCode::ConfigInvalid, "u-grid: expected a:b:step");
  try {
    c.u_min = std::stod(text.substr(0, p1));
    c.u_max = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
    c.u_step = std::stod(text.substr(p2 + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid, "u-grid: expected numbers in a:b:step");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient descent with interlaced Polyak steps: experiments and ravine diagnostics"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "run one method and write trace.csv + manifest.json");
  add_run_flags(run_cmd, run_flags, true);

  RunFlags cmp_flags;
  auto* cmp_cmd = app.add_subcommand("compare", "run gd, polyak, gdpolyak (and gdpolyak_lb) at equal budget");
  add_run_flags(cmp_cmd, cmp_flags, false);

  std::string diag_problem, diag_suite, diag_out;
  int diag_samples = 0;
  double diag_radius = 0;
  std::uint64_t diag_seed = 0;
  auto* diag_cmd = app.add_subcommand("diagnose", "check the ravine inequalities on a sample cloud");
  diag_cmd->add_option("--problem", diag_problem)->required();
  diag_cmd->add_option("--suite", diag_suite, "ravine,aiming,growth,lojasiewicz,gradcontrol,morse,rip")->required();
  diag_cmd->add_option("--samples", diag_samples);
  diag_cmd->add_option("--radius", diag_radius);
  diag_cmd->add_option("--seed", diag_seed);
  diag_cmd->add_option("--out", diag_out);

  std::string morse_problem, morse_grid, morse_out;
  double morse_tol = 0;
  auto* morse_cmd = app.add_subcommand("morse", "trace the Morse ravine over a grid of tangent coordinates");
  morse_cmd->add_option("--problem", morse_problem)->required();
  morse_cmd->add_option("--u-grid", morse_grid, "a:b:step");
  morse_cmd->add_option("--tol", morse_tol);
  morse_cmd->add_option("--out", morse_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      ExperimentConfig c = assemble(run_cmd, run_flags);
      const ExperimentResult res = run_experiment(c);
      std::cout << res.manifest.dump(2) << '\n';
      return res.error ? 2 : 0;
    }
    if (cmp_cmd->parsed()) {
      ExperimentConfig c = assemble(cmp_cmd, cmp_flags);
      c.method.reset();
      std::cout << compare_methods(c).to_text();
      return 0;
    }
    if (diag_cmd->parsed()) {
      DiagnoseConfig c = default_diagnose_config(parse_problem(diag_problem));
      c.suite = parse_suite(diag_suite);
      if (diag_cmd->count("--samples")) c.samples = diag_samples;
      if (diag_cmd->count("--radius")) c.radius = diag_radius;
      if (diag_cmd->count("--seed")) c.seed = diag_seed;
      c.out_dir = diag_out;
      const auto reports = diagnose(c);
      for (const auto& r : reports)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << "  lower=" << r.measured_lower
                  << " upper=" << r.measured_upper << (r.note.empty() ? "" : "  [" + r.note + "]") << '\n';
      return all_pass(reports) ? 0 : 1;
    }
    if (morse_cmd->parsed()) {
      DiagnoseConfig c = default_diagnose_config(parse_problem(morse_problem));
      c.suite = {Check::morse};
      if (morse_cmd->count("--u-grid")) parse_grid(morse_grid, c);
      if (morse_cmd->count("--tol")) c.tol = morse_tol;
      c.out_dir = morse_out;
      const auto reports = diagnose(c);
      const auto& r = reports.front();
      std::cout << (r.pass ? "PASS" : "FAIL") << " morse max error " << r.measured_upper << " (" << r.note << ")\n";
      return r.pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigInvalid || e.code() == ErrorCode::UnsupportedCheck ? 64 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
