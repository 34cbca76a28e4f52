#include "ravopt/harness/compare.hpp"
#include "ravopt/harness/diagnose.hpp"
#include "ravopt/harness/experiment.hpp"
#include "ravopt/harness/rate_fit.hpp"
#include "ravopt/harness/trace_io.hpp"
#include "ravopt/problems/scalar.hpp"
#include "ravopt/algorithms.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ravopt;
using namespace ravopt::harness;
using ravopt::testing::vec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ravopt_test_" + name);
  fs::remove_all(p);
  return p;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(RateFit, Geometric) {
  std::vector<double> gaps;
  for (int i = 1; i <= 30; ++i) gaps.push_back(std::pow(2.0, -i));
  const auto fit = fit_linear_rate(gaps);
  EXPECT_NEAR(fit.slope, -std::log(2.0), 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_EQ(fit.points, 26);
}

TEST(RateFit, Constant) {
  const std::vector<double> gaps(20, 0.3);
  EXPECT_NEAR(fit_linear_rate(gaps).slope, 0.0, 1e-14);
}

TEST(RateFit, DropsConvergedGaps) {
  std::vector<double> gaps;
  for (int i = 1; i <= 12; ++i) gaps.push_back(std::exp(-i));
  gaps.push_back(0.0);
  gaps.push_back(1e-31);
  const auto fit = fit_linear_rate(gaps);
  EXPECT_EQ(fit.points, 8);
  EXPECT_NEAR(fit.slope, -1.0, 1e-12);
}

TEST(RateFit, InsufficientData) {
  const std::vector<double> gaps{1, 0.5, 0.25, 0.125, 0.06, 0.03, 0.01};
  EXPECT_EQ(code_of([&] { fit_linear_rate(gaps); }), ErrorCode::InsufficientData);
}

TEST(RateFit, QuarticGdPolyak) {
  const auto t = gdpolyak(vec({1.0}), 0.0, 1, 40, problems::quartic_objective());
  EXPECT_NEAR(fit_linear_rate(t).slope, 4 * std::log(0.75), 1e-6);
}

TEST(Config, ValidationListsEveryField) {
  ExperimentConfig c = default_config(ProblemKind::rosenbrock);
  c.method.reset();
  c.eta = -1;
  c.K = 0;
  try {
    validate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("method"), std::string::npos);
    EXPECT_NE(msg.find("eta"), std::string::npos);
    EXPECT_NE(msg.find("K"), std::string::npos);
  }
}

TEST(Config, LowerBoundNeedsRoundsAndEstimate) {
  ExperimentConfig c = default_config(ProblemKind::quartic1d);
  c.method = Method::gdpolyak_lb;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::ConfigInvalid);
  c.J = 4;
  c.f_lb = -1.0;
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c = default_config(ProblemKind::sensing);
  c.method = Method::gdpolyak;
  c.seed = 42;
  c.gap_threshold = 1e-9;
  const ExperimentConfig back = nlohmann::json(c).get<ExperimentConfig>();
  EXPECT_EQ(back, c);
}

TEST(Config, MergeKeepsAbsentFields) {
  ExperimentConfig c = default_config(ProblemKind::rosenbrock);
  merge_json(nlohmann::json{{"K", 7}}, c);
  EXPECT_EQ(c.K, 7);
  EXPECT_EQ(c.I, default_config(ProblemKind::rosenbrock).I);
  EXPECT_EQ(parse_problem("quartic1d"), ProblemKind::quartic1d);
  EXPECT_EQ(code_of([] { parse_method("adam"); }), ErrorCode::ConfigInvalid);
}

TEST(Experiment, RosenbrockTraceFiles) {
  const fs::path dir = scratch("rosen");
  ExperimentConfig c = default_config(ProblemKind::rosenbrock);
  c.method = Method::gdpolyak;
  c.out_dir = dir.string();
  const auto res = run_experiment(c);
  ASSERT_FALSE(res.error);
  EXPECT_EQ(res.trace.records.size(), 5050u);

  const std::string csv = slurp(dir / "trace.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTraceHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5051);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  for (const char* f : {"config.json", "manifest.json", "reports/rate_fit.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest.at("config").get<ExperimentConfig>(), c);
  EXPECT_EQ(manifest.at("gradient_evaluations").get<long>(), 5050);

  const fs::path dir2 = scratch("rosen2");
  c.out_dir = dir2.string();
  run_experiment(c);
  EXPECT_EQ(slurp(dir2 / "trace.csv"), csv);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST(Experiment, QuarticFinalGap) {
  ExperimentConfig c = default_config(ProblemKind::quartic1d);
  c.method = Method::gdpolyak;
  c.eta = 0;
  c.K = 1;
  c.I = 40;
  const auto res = run_experiment(c);
  const double x0 = initial_point(build_problem(c.problem, c.problem_params), c)(0);
  const double expected = 0.25 * std::pow(0.75, 160) * std::pow(x0, 4);
  EXPECT_NEAR(res.trace.epochs.back().end_gap, expected, 1e-10 * expected);
  EXPECT_NEAR(expected, 2.557067258067404e-21, 1e-30);
}

TEST(Experiment, OptionalColumnsStayPresent) {
  ExperimentConfig c = default_config(ProblemKind::rosenbrock);
  c.method = Method::gd;
  c.I = 2;
  c.K = 3;
  c.record_distances = false;
  const auto res = run_experiment(c);
  std::ostringstream out;
  write_trace_csv(out, res.trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    EXPECT_EQ(line.substr(line.size() - 2), ",,");
  }
}

TEST(Experiment, FailureIsReported) {
  ExperimentConfig c = default_config(ProblemKind::rosenbrock);
  c.method = Method::gd;
  c.eta = 1.0;
  c.K = 50;
  c.I = 4;
  c.init_radius = 3.0;
  const auto res = run_experiment(c);
  ASSERT_TRUE(res.error);
  EXPECT_EQ(res.manifest.at("status"), "error");
  EXPECT_LT(res.trace.records.size(), 200u);
}

TEST(Experiment, LowerBoundManifest) {
  ExperimentConfig c = default_config(ProblemKind::quartic1d);
  c.method = Method::gdpolyak_lb;
  c.J = 5;
  c.f_lb = -1.0;
  c.I = 20;
  const auto res = run_experiment(c);
  EXPECT_EQ(res.manifest.at("lower_estimates").size(), 5u);
  EXPECT_EQ(res.trace.gradient_evaluations, 5L * 20 * 2);
}

TEST(Compare, EqualBudgets) {
  const fs::path dir = scratch("cmp");
  ExperimentConfig c = default_config(ProblemKind::rosenbrock);
  c.out_dir = dir.string();
  c.I = 20;
  c.J = 4;
  c.f_lb = 0.0;
  const auto table = compare_methods(c);
  ASSERT_EQ(table.rows.size(), 4u);
  for (const auto& r : table.rows) EXPECT_EQ(r.gradient_evaluations, 20L * 101) << to_string(r.method);
  EXPECT_LT(table.row(Method::gdpolyak).best_gap, table.row(Method::gd).best_gap);
  EXPECT_TRUE(fs::exists(dir / "comparison.csv"));
  EXPECT_TRUE(fs::exists(dir / "gdpolyak" / "trace.csv"));
  fs::remove_all(dir);
}

TEST(Compare, QuarticPolyakMatchesGdPolyak) {
  ExperimentConfig c = default_config(ProblemKind::quartic1d);
  c.I = 20;
  const auto table = compare_methods(c);
  // eta = 0: both methods contract by 3/4 per Polyak step; polyak takes
  // I (K + 1) = 40 of them, gdpolyak I = 20
  const double f0 = 0.25 * std::pow(table.initial_point(0), 4);
  const double p = table.row(Method::polyak).best_gap;
  const double g = table.row(Method::gdpolyak).best_gap;
  EXPECT_NEAR(std::log(p / f0), 160 * std::log(0.75), 1e-9);
  EXPECT_NEAR(std::log(g / f0), 80 * std::log(0.75), 1e-9);
}

TEST(Compare, RoundsMustDivideEpochs) {
  ExperimentConfig c = default_config(ProblemKind::quartic1d);
  c.I = 10;
  c.J = 3;
  c.f_lb = -1.0;
  EXPECT_EQ(code_of([&] { compare_methods(c); }), ErrorCode::ConfigInvalid);
}

TEST(Diagnose, RosenbrockSuite) {
  const fs::path dir = scratch("diag");
  DiagnoseConfig c = default_diagnose_config(ProblemKind::rosenbrock);
  c.suite = parse_suite("ravine,aiming,morse");
  c.out_dir = dir.string();
  const auto reps = diagnose(c);
  ASSERT_EQ(reps.size(), 3u);
  EXPECT_TRUE(all_pass(reps));
  EXPECT_NEAR(reps[0].measured_lower, 10.0, 1e-6);
  EXPECT_NEAR(reps[1].measured_lower, 20.0, 1e-6);
  EXPECT_LE(reps[2].measured_upper, 1e-10);
  for (const char* f : {"ravine.json", "aiming.json", "morse.json", "morse.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  fs::remove_all(dir);
}

TEST(Diagnose, FactorizationGrowth) {
  DiagnoseConfig c = default_diagnose_config(ProblemKind::factorization);
  c.suite = {Check::growth};
  const auto reps = diagnose(c);
  EXPECT_TRUE(all_pass(reps));
}

TEST(Diagnose, AggregateFailsWhenOneReportFails) {
  ravine::DiagnosticsReport ok, bad;
  ok.pass = true;
  bad.pass = false;
  EXPECT_TRUE(all_pass({ok, ok}));
  EXPECT_FALSE(all_pass({ok, bad}));
}

TEST(Diagnose, UnsupportedChecks) {
  DiagnoseConfig c = default_diagnose_config(ProblemKind::rosenbrock);
  c.suite = {Check::rip};
  EXPECT_EQ(code_of([&] { diagnose(c); }), ErrorCode::UnsupportedCheck);
  DiagnoseConfig s = default_diagnose_config(ProblemKind::sensing);
  s.suite = {Check::morse};
  EXPECT_EQ(code_of([&] { diagnose(s); }), ErrorCode::UnsupportedCheck);
  EXPECT_EQ(code_of([] { parse_suite("ravine,nope"); }), ErrorCode::ConfigInvalid);
}

TEST(TraceIo, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}
