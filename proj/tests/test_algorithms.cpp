#include "ravopt/algorithms.hpp"
#include "ravopt/problems/scalar.hpp"
#include "ravopt/rng.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace ravopt;
using ravopt::testing::counted;
using ravopt::testing::vec;

namespace {

const Objective quartic = problems::quartic_objective();
const Objective rosen = problems::rosenbrock_objective();

double qf(double x) { return 0.25 * x * x * x * x; }

void expect_records_equal(const RunTrace& a, const RunTrace& b) {
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].value_gap, b.records[i].value_gap);
    EXPECT_EQ(a.records[i].grad_norm, b.records[i].grad_norm);
    EXPECT_EQ(a.records[i].stepsize, b.records[i].stepsize);
  }
  EXPECT_EQ(a.x_out, b.x_out);
}

}  // namespace

TEST(GdStep, QuarticUnitStep) {
  EXPECT_DOUBLE_EQ(gd_step(vec({1.0}), 0.1, quartic)(0), 0.9);
  EXPECT_DOUBLE_EQ(gd_step(vec({2.0}), 0.25, quartic)(0), 0.0);
}

TEST(GdStep, MinimizerIsFixed) {
  EXPECT_EQ(gd_step(vec({0.0, 0.0}), 0.3, rosen), vec({0.0, 0.0}));
}

TEST(GdStep, UsesOneGradient) {
  auto c = counted(quartic);
  gd_step(vec({1.0}), 0.1, c.obj);
  EXPECT_EQ(*c.gradients, 1);
}

TEST(GdStep, RejectsNonFiniteGradient) {
  Objective bad = quartic;
  bad.gradient = [](const Vector& x) { return Vector::Constant(x.size(), std::nan("")); };
  bad.value_and_gradient = nullptr;
  try {
    gd_step(vec({1.0}), 0.1, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteGradient);
  }
}

TEST(GdStep, RejectsNegativeEta) {
  EXPECT_THROW(gd_step(vec({1.0}), -0.1, quartic), Error);
}

TEST(GdRun, TwoStepsOnQuartic) {
  const auto seg = gd_run(vec({1.0}), 0.1, 2, quartic);
  EXPECT_NEAR(seg.x(0), 0.82710, 1e-15);
  ASSERT_EQ(seg.records.size(), 2u);
  EXPECT_EQ(seg.records[0].kind, StepKind::ShortGD);
  EXPECT_DOUBLE_EQ(seg.records[1].value_gap, qf(0.9));
}

TEST(GdRun, SingleStepMatchesGdStep) {
  const Vector x0 = vec({0.3, -0.2});
  EXPECT_EQ(gd_run(x0, 0.0125, 1, rosen).x, gd_step(x0, 0.0125, rosen));
}

TEST(GdRun, MinimizerStaysPut) {
  EXPECT_EQ(gd_run(vec({0.0}), 0.5, 7, quartic).x(0), 0.0);
}

TEST(PolyakStep, ThreeQuarterContraction) {
  for (double x : {1.0, -1.0, 0.3, -0.3, 10.0})
    EXPECT_NEAR(polyak_step(vec({x}), quartic, 0.0)(0), 0.75 * x, 1e-12 * std::abs(x));
}

TEST(PolyakStep, HalvedStep) {
  EXPECT_DOUBLE_EQ(polyak_step(vec({1.0}), quartic, 0.0, 2.0)(0), 0.875);
}

TEST(PolyakStep, TargetEqualToValueIsNoOp) {
  EXPECT_EQ(polyak_step(vec({1.0}), quartic, 0.25)(0), 1.0);
}

TEST(PolyakStep, ZeroGradientGuard) {
  EXPECT_EQ(polyak_step(vec({0.0}), quartic, -1.0)(0), 0.0);
}

TEST(PolyakStep, TargetAboveValue) {
  try {
    polyak_step(vec({1.0}), quartic, 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TargetAboveValue);
  }
}

TEST(GdPolyak, QuarticTwoEpochs) {
  const auto t = gdpolyak(vec({1.0}), 0.0, 1, 2, quartic);
  EXPECT_DOUBLE_EQ(t.epochs[0].x_end(0), 0.75);
  EXPECT_DOUBLE_EQ(t.epochs[1].x_end(0), 0.5625);
  EXPECT_DOUBLE_EQ(t.x_out(0), 0.5625);
  EXPECT_DOUBLE_EQ(t.best_value, qf(0.5625));
}

TEST(GdPolyak, StartAtMinimizer) {
  const auto t = gdpolyak(vec({0.0, 0.0}), 0.0125, 5, 3, rosen);
  EXPECT_EQ(t.x_out, vec({0.0, 0.0}));
  EXPECT_EQ(t.best_value, 0.0);
}

TEST(GdPolyak, NeedsFStar) {
  Objective o = quartic;
  o.f_star.reset();
  try {
    gdpolyak(vec({1.0}), 0.0, 1, 1, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFStar);
  }
}

TEST(GdPolyak, BudgetIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dk(1, 30), di(1, 20);
  for (int trial = 0; trial < 10; ++trial) {
    const int K = dk(rng), I = di(rng);
    auto c = counted(rosen);
    const auto t = gdpolyak(vec({0.3, 0.1}), 0.0125, K, I, c.obj);
    EXPECT_EQ(*c.gradients, long(I) * (K + 1));
    EXPECT_EQ(t.gradient_evaluations, long(I) * (K + 1));
    EXPECT_EQ(t.records.size(), std::size_t(I) * (K + 1));
  }
}

TEST(GdPolyak, RecordKindsAndEpochs) {
  const auto t = gdpolyak(vec({0.3, 0.1}), 0.0125, 3, 2, rosen);
  ASSERT_EQ(t.records.size(), 8u);
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    EXPECT_EQ(t.records[i].iter_index, long(i));
    EXPECT_EQ(t.records[i].epoch, int(i / 4) + 1);
    EXPECT_EQ(t.records[i].kind, i % 4 == 3 ? StepKind::PolyakLong : StepKind::ShortGD);
  }
}

TEST(GdPolyak, EpochContractionOnQuartic) {
  const auto t = gdpolyak(vec({-0.7}), 0.0, 1, 30, quartic);
  double x = -0.7;
  for (const auto& e : t.epochs) {
    x *= 0.75;
    EXPECT_NEAR(e.x_end(0), x, 1e-12 * std::abs(x));
  }
}

TEST(GdPolyak, OutputIsBestEvaluatedPoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed);
    const Vector x0 = 0.5 * random_direction(rng, 2);
    const auto t = gdpolyak(x0, 0.0125, 20, 10, rosen);
    EXPECT_DOUBLE_EQ(t.best_value, rosen.value(t.x_out));
    for (const auto& r : t.records) EXPECT_LE(t.best_value, r.value_gap);
    for (const auto& e : t.epochs) EXPECT_LE(t.best_value, e.end_gap);
  }
}

TEST(GdPolyak, Deterministic) {
  const auto a = gdpolyak(vec({0.4, -0.2}), 0.0125, 10, 5, rosen);
  const auto b = gdpolyak(vec({0.4, -0.2}), 0.0125, 10, 5, rosen);
  expect_records_equal(a, b);
}

TEST(GdPolyak, FailureKeepsPartialTrace) {
  auto calls = std::make_shared<int>(0);
  Objective o = quartic;
  o.value_and_gradient = [calls](const Vector& x) {
    Vector g = x.array().cube();
    if (++*calls == 6) g(0) = std::numeric_limits<double>::infinity();
    return std::pair<double, Vector>{0.25 * x.array().pow(4).sum(), g};
  };
  try {
    gdpolyak(vec({1.0}), 0.01, 2, 5, o);
    FAIL();
  } catch (const RunError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteGradient);
    EXPECT_EQ(e.index(), 5);
    EXPECT_EQ(e.partial().records.size(), 5u);
    EXPECT_EQ(e.partial().x_out.size(), 1);
  }
}

TEST(GdPolyakLb, QuarticTwoRounds) {
  const auto t = gdpolyak_lb(vec({1.0}), 0.0, 1, 1, 2, 0.0, quartic);
  // hand simulation with exact arithmetic
  const double x1 = 0.875;
  const double f1 = 0.5 * qf(x1);
  const double x2 = 1.0 - (0.25 - f1) / 2.0;
  const double f2 = 0.5 * (f1 + qf(x2));
  ASSERT_EQ(t.lower_estimates.size(), 2u);
  EXPECT_DOUBLE_EQ(t.lower_estimates[0], f1);
  EXPECT_DOUBLE_EQ(t.lower_estimates[1], f2);
  EXPECT_DOUBLE_EQ(t.epochs[0].x_end(0), x1);
  EXPECT_DOUBLE_EQ(t.epochs[1].x_end(0), x2);
  EXPECT_GT(x2, x1);
  EXPECT_DOUBLE_EQ(t.x_out(0), x1);
  // frozen from a rational-arithmetic simulation
  EXPECT_DOUBLE_EQ(f1, 0.073272705078125);
  EXPECT_DOUBLE_EQ(x2, 0.9116363525390625);
  EXPECT_NEAR(f2, 0.12297327271442926, 1e-16);
}

TEST(GdPolyakLb, StartAtMinimizer) {
  const auto t = gdpolyak_lb(vec({0.0}), 0.0, 1, 3, 4, -1.0, quartic);
  EXPECT_EQ(t.x_out(0), 0.0);
}

TEST(GdPolyakLb, Budget) {
  auto c = counted(quartic);
  const auto t = gdpolyak_lb(vec({0.8}), 0.0, 7, 4, 3, -1.0, c.obj);
  EXPECT_EQ(*c.gradients, 3L * 4 * 8);
  EXPECT_EQ(t.gradient_evaluations, 3L * 4 * 8);
}

TEST(GdPolyakLb, RejectsEstimateAboveStart) {
  EXPECT_THROW(gdpolyak_lb(vec({1.0}), 0.0, 1, 1, 1, 1.0, quartic), Error);
}

TEST(GdPolyakLb, OutputIsBestRound) {
  const auto t = gdpolyak_lb(vec({0.4, 0.2}), 0.0125, 10, 5, 6, -0.5, rosen);
  double best = std::numeric_limits<double>::infinity();
  for (double v : t.round_values) best = std::min(best, v);
  EXPECT_EQ(t.best_value, best);
  EXPECT_DOUBLE_EQ(rosen.value(t.x_out), best);
}

// With f0 <= f* and a round budget that drives every round below its
// target, the estimates f_j never pass f*.
TEST(GdPolyakLb, EstimatesStayBelowOptimumOnQuartic) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uf(0.0, 3.0);
  std::uniform_int_distribution<int> dj(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const double x0 = ux(rng);
    const double f0 = -uf(rng);
    const int J = dj(rng);
    const auto t = gdpolyak_lb(vec({x0}), 0.0, 1, 200, J, f0, quartic);
    double prev = f0;
    for (std::size_t j = 0; j < t.lower_estimates.size(); ++j) {
      EXPECT_LE(t.lower_estimates[j], float_slack(0.0)) << "trial " << trial << " round " << j;
      EXPECT_LE(t.lower_estimates[j], t.round_values[j]);
      EXPECT_GE(t.lower_estimates[j], prev);
      prev = t.lower_estimates[j];
    }
  }
}

TEST(GdPolyakLb, WarmStartKeepsBudget) {
  RunOptions opt;
  opt.warm_start = true;
  const auto cold = gdpolyak_lb(vec({0.4, 0.2}), 0.0125, 10, 5, 3, 0.0, rosen);
  const auto warm = gdpolyak_lb(vec({0.4, 0.2}), 0.0125, 10, 5, 3, 0.0, rosen, opt);
  EXPECT_EQ(cold.gradient_evaluations, warm.gradient_evaluations);
  EXPECT_LE(warm.best_value, warm.round_values.front());
}

TEST(Baselines, BudgetsAndPolyakContraction) {
  auto c = counted(quartic);
  const auto p = run_polyak(vec({1.0}), 3, 4, c.obj);
  EXPECT_EQ(*c.gradients, 12);
  EXPECT_NEAR(p.x_out(0), std::pow(0.75, 12), 1e-15);
  const auto g = run_gd(vec({0.3, 0.1}), 0.0125, 5, 6, rosen);
  EXPECT_EQ(g.gradient_evaluations, 30);
  EXPECT_EQ(g.epochs.size(), 6u);
}

TEST(BestIterate, Examples) {
  using P = std::pair<Vector, double>;
  std::vector<P> r{{vec({1}), 3}, {vec({2}), 1}, {vec({3}), 2}};
  EXPECT_EQ(best_iterate(r).first(0), 2);
  std::vector<P> tie{{vec({1}), 1}, {vec({2}), 1}};
  EXPECT_EQ(best_iterate(tie).first(0), 1);
  std::vector<P> one{{vec({5}), 7}};
  EXPECT_EQ(best_iterate(one).second, 7);
}

TEST(BestIterate, Empty) {
  try {
    best_iterate({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyTrace);
  }
}

TEST(FiniteDifference, QuarticGradient) {
  const Vector x = vec({0.7});
  EXPECT_LT(gradient_relative_error(quartic.gradient(x), finite_difference_gradient(quartic, x)), 1e-8);
}
