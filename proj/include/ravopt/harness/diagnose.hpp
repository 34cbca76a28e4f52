#pragma once

#include "ravopt/harness/config.hpp"
#include "ravopt/harness/problem_bundle.hpp"
#include "ravopt/ravine/diagnostics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ravopt::harness {

enum class Check { ravine, aiming, growth, lojasiewicz, gradcontrol, morse, rip };

std::string_view to_string(Check c);
Check parse_check(std::string_view name);
// Comma-separated list, e.g. "ravine,aiming,morse".
std::vector<Check> parse_suite(std::string_view list);

struct DiagnoseConfig {
  ProblemKind problem = ProblemKind::rosenbrock;
  ProblemParams problem_params;
  std::vector<Check> suite;
  int samples = 200;
  double radius = 0.1;
  std::uint64_t seed = 0;
  std::string out_dir;
  // morse only
  double u_min = -0.5;
  double u_max = 0.5;
  double u_step = 0.05;
  double tol = 1e-12;
  int max_iter = 50;
  // rip only
  int rip_trials = 200;
};

// Problem parameters from default_config, radius and u-grid per problem.
DiagnoseConfig default_diagnose_config(ProblemKind problem);

// Throws UnsupportedCheck naming the problem/check pair before running
// anything.
void check_supported(ProblemKind problem, Check check, const ProblemBundle& bundle);

struct MorseSample {
  Vector u;
  Vector v;
  Vector point;
  double reference_error = 0.0;  // problem-specific, see morse report note
};

// Traces the Morse ravine over the u-grid (each tangent axis in turn when
// the nullspace has more than one dimension).
ravine::DiagnosticsReport run_morse_check(const DiagnoseConfig& config, const ProblemBundle& bundle,
                                          std::vector<MorseSample>* samples = nullptr);

// Runs every requested check; writes out_dir/<check>.json when out_dir is set.
std::vector<ravine::DiagnosticsReport> diagnose(const DiagnoseConfig& config);

bool all_pass(const std::vector<ravine::DiagnosticsReport>& reports);

}  // namespace ravopt::harness
