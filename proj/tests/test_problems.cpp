#include "ravopt/problems/factorization.hpp"
#include "ravopt/problems/instance_io.hpp"
#include "ravopt/problems/neuron.hpp"
#include "ravopt/problems/sampling.hpp"
#include "ravopt/problems/scalar.hpp"
#include "ravopt/problems/sensing.hpp"
#include "ravopt/ravine/diagnostics.hpp"
#include "ravopt/ravine/factorization_geometry.hpp"
#include "ravopt/rng.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ravopt;
using namespace ravopt::problems;
using ravopt::testing::vec;

namespace {

Matrix e1e1(int d) {
  Matrix X = Matrix::Zero(d, d);
  X(0, 0) = 1.0;
  return X;
}

Matrix diag2(double a, double b) {
  Matrix B = Matrix::Zero(2, 2);
  B(0, 0) = a;
  B(1, 1) = b;
  return B;
}

void expect_gradients_match(const Objective& obj, const Vector& base, double radius, int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> scale(0.2, 1.0);
  for (int i = 0; i < n; ++i) {
    const Vector x = base + radius * scale(rng) * random_direction(rng, base.size());
    const Vector g = obj.gradient(x);
    const Vector fd = finite_difference_gradient(obj, x);
    EXPECT_LT(gradient_relative_error(g, fd), 1e-5) << "sample " << i;
    const auto [f, g2] = obj.evaluate(x);
    EXPECT_EQ(f, obj.value(x));
    EXPECT_LT((g2 - g).norm(), 1e-14 * (1.0 + g.norm()));
  }
}

}  // namespace

TEST(Quartic, Examples) {
  EXPECT_EQ(quartic_eval(0.0), std::make_pair(0.0, 0.0));
  EXPECT_EQ(quartic_eval(1.0), std::make_pair(0.25, 1.0));
  EXPECT_EQ(quartic_eval(-2.0), std::make_pair(4.0, -8.0));
}

TEST(Rosenbrock, Examples) {
  auto [f0, g0] = rosenbrock_eval(0, 0);
  EXPECT_EQ(f0, 0.0);
  EXPECT_EQ(g0.norm(), 0.0);
  auto [f1, g1] = rosenbrock_eval(1, 1);
  EXPECT_EQ(f1, 1.0);
  EXPECT_EQ(g1, Eigen::Vector2d(4, 0));
  auto [f2, g2] = rosenbrock_eval(1, 0);
  EXPECT_EQ(f2, 11.0);
  EXPECT_EQ(g2, Eigen::Vector2d(44, -20));
}

TEST(Circle, Examples) {
  auto [f0, g0] = circle_eval({0, 1});
  EXPECT_EQ(f0, 0.0);
  EXPECT_LT(g0.norm(), 1e-15);
  EXPECT_DOUBLE_EQ(circle_eval({0, 2}).first, 1.0);
  EXPECT_DOUBLE_EQ(circle_eval({1, 0}).first, 4.0);
}

TEST(Circle, OriginIsSingular) {
  try {
    circle_eval({0, 1e-9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OriginSingularity);
  }
}

TEST(Factorization, Examples) {
  const auto inst = factorization_instance_from_matrix(e1e1(2), 1, 2);
  for (double t : {0.0, 0.1, 0.5, 2.0}) {
    auto [f, g] = factorization_eval(diag2(1, t), inst);
    EXPECT_NEAR(f, std::pow(t, 4), 1e-15);
    EXPECT_NEAR((g - diag2(0, 4 * t * t * t)).norm(), 0.0, 1e-14);
  }
  auto [f0, g0] = factorization_eval(Matrix::Zero(2, 2), inst);
  EXPECT_DOUBLE_EQ(f0, inst.X.squaredNorm());
  EXPECT_EQ(g0.norm(), 0.0);
}

TEST(Factorization, SolutionsHaveZeroValue) {
  const auto inst = make_factorization_instance(5, 2, 3, 4);
  Rng rng = make_rng(9);
  for (int i = 0; i < 100; ++i) {
    const Matrix B = ravine::random_factorization_solution(inst, rng);
    auto [f, g] = factorization_eval(B, inst);
    EXPECT_LT(f, 1e-26);
    EXPECT_LT(g.norm(), 1e-12);
  }
}

TEST(Factorization, InstanceNormalization) {
  const auto inst = make_factorization_instance(6, 3, 4, 1);
  EXPECT_NEAR(inst.sigma1, 1.0, 1e-14);
  EXPECT_NEAR((inst.L * inst.L.transpose() - inst.X).norm(), 0.0, 1e-12);
  EXPECT_GT(inst.sigmar, 0.0);
  EXPECT_EQ(inst.L.cols(), 3);
}

TEST(Factorization, ShapeMismatch) {
  const auto inst = make_factorization_instance(5, 2, 3, 4);
  try {
    factorization_eval(Matrix::Zero(4, 3), inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(Factorization, RankIsChecked) {
  EXPECT_THROW(factorization_instance_from_matrix(e1e1(3), 2, 2), Error);
}

TEST(Factorization, EigenbasisValueAgrees) {
  const auto inst = make_factorization_instance(5, 2, 3, 4);
  Rng rng = make_rng(3);
  for (int i = 0; i < 20; ++i) {
    const Matrix B = unflatten(factorization_base_solution(inst), 5, 3) + 0.1 * standard_normal(rng, 5, 3);
    const double a = factorization_eval(B, inst).first;
    EXPECT_NEAR(factorization_value_eigenbasis(B, inst), a, 1e-13 * (1 + a));
  }
}

TEST(Factorization, FlattenIsRowMajor) {
  Matrix B(2, 3);
  B << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(flatten(B), vec({1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(unflatten(flatten(B), 2, 3), B);
}

TEST(Factorization, DistanceToSolution) {
  const auto inst = factorization_instance_from_matrix(e1e1(2), 1, 2);
  for (double t : {0.01, 0.3, 1.0}) EXPECT_NEAR(ravine::factorization_dist_to_solution(diag2(1, t), inst), t, 1e-14);
}

TEST(Sensing, ScalarIdentity) {
  const auto fac = factorization_instance_from_matrix(Matrix::Identity(1, 1), 1, 1);
  const auto inst = make_sensing_instance(fac, {Matrix::Identity(1, 1)});
  for (double t : {0.0, 0.5, 1.0, 1.7}) {
    auto [f, g] = sensing_eval(Matrix::Constant(1, 1, t), inst);
    EXPECT_NEAR(f, std::pow(1 - t * t, 2), 1e-15);
    EXPECT_NEAR(g(0, 0), -4 * (1 - t * t) * t, 1e-14);
  }
}

TEST(Sensing, SameSeedIsBitwiseIdentical) {
  const auto a = make_sensing_instance(6, 2, 3, 50, 17);
  const auto b = make_sensing_instance(6, 2, 3, 50, 17);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.a_tilde, b.a_tilde);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.fac.X, b.fac.X);
  const auto c = make_sensing_instance(6, 2, 3, 50, 18);
  EXPECT_NE(a.y, c.y);
}

TEST(Sensing, BaseSolutionIsExact) {
  const auto inst = make_sensing_instance(8, 2, 3, 120, 5);
  const Matrix B = unflatten(factorization_base_solution(inst.fac), 8, 3);
  auto [f, g] = sensing_eval(B, inst);
  EXPECT_LT(f, 1e-26);
  EXPECT_LT(g.norm(), 1e-12);
}

TEST(Sensing, MeasurementsMatchDenseForm) {
  const auto inst = make_sensing_instance(5, 2, 3, 40, 2);
  const Vector y = apply_measurements(inst, inst.fac.X);
  EXPECT_LT((y - inst.y).norm(), 1e-12 * inst.y.norm());
  for (int i = 0; i < 5; ++i) EXPECT_NEAR((inst.measurement(i).cwiseProduct(inst.fac.X)).sum(), inst.y(i), 1e-12);
}

TEST(Sensing, CompleteOperatorReproducesFactorization) {
  const auto fac = make_factorization_instance(5, 2, 3, 8);
  const auto inst = make_complete_sensing_instance(fac);
  EXPECT_EQ(inst.m, 15);
  Rng rng = make_rng(4);
  for (int i = 0; i < 20; ++i) {
    const Matrix B = standard_normal(rng, 5, 3);
    auto [fs, gs] = sensing_eval(B, inst);
    auto [ff, gf] = factorization_eval(B, fac);
    EXPECT_NEAR(fs / ff, 1.0, 1e-10);
    EXPECT_LT((gs - gf).norm(), 1e-10 * gf.norm());
  }
}

// Needs d around 8: at d <= 4 the heavy tails of the Gaussian-difference
// measurements push the sampled constant past 0.5 at m = 10 d k.
TEST(Sensing, FullRankRip) {
  const int d = 8;
  const auto inst = make_sensing_instance(d, d, d, 10 * d * d, 3);
  EXPECT_LT(ravine::measure_rip(inst, d, 100, 1), 0.5);
}

TEST(Neuron, Examples) {
  const auto inst = make_neuron_instance(6, 2);
  auto [f0, g0] = neuron_eval(0.5 * inst.v, 0.5 * inst.v, inst);
  EXPECT_NEAR(f0, 0.0, 1e-16);
  EXPECT_LT(g0.norm(), 1e-15);
  EXPECT_NEAR(neuron_eval(inst.v, inst.v, inst).first, 0.25 * inst.v.squaredNorm(), 1e-15);
}

TEST(Neuron, ZeroWeight) {
  const auto inst = make_neuron_instance(3, 2);
  try {
    neuron_eval(Vector::Zero(3), inst.v, inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroNeuron);
  }
}

TEST(Neuron, SwapSymmetry) {
  const auto inst = make_neuron_instance(5, 4);
  Rng rng = make_rng(6);
  for (int i = 0; i < 20; ++i) {
    const Vector w1 = standard_normal(rng, 5), w2 = standard_normal(rng, 5);
    auto [fa, ga] = neuron_eval(w1, w2, inst);
    auto [fb, gb] = neuron_eval(w2, w1, inst);
    EXPECT_NEAR(fa, fb, 1e-14);
    EXPECT_LT((ga.head(5) - gb.tail(5)).norm(), 1e-14);
  }
}

TEST(Neuron, SolutionSetHasZeroLoss) {
  const auto inst = make_neuron_instance(5, 1);
  for (double a : {0.125, 0.3, 0.5, 0.875}) {
    auto [f, g] = neuron_eval(a * inst.v, (1 - a) * inst.v, inst);
    EXPECT_NEAR(f, 0.0, 1e-15);
    EXPECT_LT(g.norm(), 1e-14);
  }
}

TEST(Neuron, ClosedFormMatchesMonteCarlo) {
  const auto inst = make_neuron_instance(5, 3);
  Rng rng = make_rng(12);
  for (int c = 0; c < 2; ++c) {
    const Vector w1 = 0.5 * inst.v + 0.3 * standard_normal(rng, 5);
    const Vector w2 = 0.5 * inst.v + 0.3 * standard_normal(rng, 5);
    const auto mc = ravopt::testing::neuron_monte_carlo(w1, w2, inst.v, 200000, c);
    EXPECT_LT(std::abs(neuron_eval(w1, w2, inst).first - mc.mean), 5 * mc.stderr_);
  }
}

TEST(Neuron, DistanceProxy) {
  const auto inst = neuron_instance_from_teacher(vec({1, 0, 0}));
  EXPECT_NEAR(neuron_dist_proxy(0.5 * inst.v, 0.5 * inst.v, inst), 0.0, 1e-16);
  EXPECT_NEAR(neuron_dist_proxy(inst.v, vec({0, 0.1, 0}), inst), 0.2, 1e-15);
}

TEST(Neuron, AngleIsClamped) {
  const Vector a = vec({1, 1e-9, 0});
  EXPECT_FALSE(std::isnan(vector_angle(a, a)));
  EXPECT_NEAR(vector_angle(vec({1, 0}), vec({-1, 0})), std::numbers::pi, 1e-15);
}

TEST(Gradients, AllProblemsMatchFiniteDifferences) {
  expect_gradients_match(quartic_objective(), vec({0}), 1.0, 50, 1);
  expect_gradients_match(rosenbrock_objective(), vec({0, 0}), 0.5, 50, 2);
  expect_gradients_match(circle_objective(), vec({0, 1}), 0.3, 50, 3);
  const auto fac = make_factorization_instance(5, 2, 3, 0);
  expect_gradients_match(factorization_objective(fac), factorization_base_solution(fac), 0.3, 50, 4);
  const auto sen = make_sensing_instance(6, 2, 3, 60, 0);
  expect_gradients_match(sensing_objective(sen), factorization_base_solution(sen.fac), 0.3, 50, 5);
  const auto neu = make_neuron_instance(6, 0);
  expect_gradients_match(neuron_objective(neu), neuron_base_solution(neu), 0.2, 50, 6);
}

TEST(SampleInit, RadiusAndDeterminism) {
  const Vector base = vec({0.3, -1.0, 2.0});
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Vector x = sample_init(base, 0.7, s);
    EXPECT_NEAR((x - base).norm(), 0.7, 1e-12);
    EXPECT_EQ(x, sample_init(base, 0.7, s));
  }
  EXPECT_NE(sample_init(base, 0.7, 1), sample_init(base, 0.7, 2));
}

TEST(SampleInit, FactorizationDistance) {
  const auto fac = make_factorization_instance(5, 2, 3, 0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matrix B = unflatten(sample_init(factorization_base_solution(fac), 0.01, s), 5, 3);
    EXPECT_LE(ravine::factorization_dist_to_solution(B, fac), 0.01 + 1e-10);
  }
}

TEST(InstanceJson, RoundTrips) {
  const auto fac = make_factorization_instance(4, 2, 3, 5);
  const FactorizationInstance fac2 = nlohmann::json(fac).get<FactorizationInstance>();
  EXPECT_EQ(fac2.X, fac.X);
  EXPECT_EQ(fac2.k, 3);

  const auto sen = make_sensing_instance(4, 2, 3, 20, 5);
  const SensingInstance sen2 = nlohmann::json(sen).get<SensingInstance>();
  EXPECT_EQ(sen2.a, sen.a);
  EXPECT_EQ(sen2.y, sen.y);
  const Matrix B = Matrix::Constant(4, 3, 0.2);
  EXPECT_EQ(sensing_eval(B, sen2).first, sensing_eval(B, sen).first);

  const auto neu = make_neuron_instance(4, 5);
  EXPECT_EQ(nlohmann::json(neu).get<NeuronInstance>().v, neu.v);
}
