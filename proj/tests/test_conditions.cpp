#include <homc/conditions.hpp>
#include <homc/fixtures.hpp>
#include <homc/solvers.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace homc {
namespace {

TEST(DeltaM, UniformOrder3Dim2IsOne) {
  // every subset sum over one state equals 1/2 for every tail
  EXPECT_DOUBLE_EQ(delta_m(StochasticTensor::uniform(3, 2)), 1.0);
}

TEST(DeltaM, IdentityColumnsGiveZero) {
  auto t = StochasticTensor::from_dense(2, 2, {1, 0, 0, 1});
  EXPECT_DOUBLE_EQ(delta_m(t), 0.0);
}

TEST(DeltaM, FixtureValuesMatchExhaustiveEnumerationExactly) {
  for (const char* name : {"i", "ii", "iii", "iv"}) {
    const Fixture& f = fixture(name);
    const double fast = delta_m(f.tensor);
    const double slow = oracle::delta_m_exhaustive(f.tensor);
    EXPECT_EQ(fast, slow) << "fixture " << name;
  }
  // frozen reference values for the first two tensors
  EXPECT_NEAR(delta_m(fixture("i").tensor), 0.73, 1e-12);
  EXPECT_NEAR(delta_m(fixture("ii").tensor), 0.6472, 1e-12);
}

TEST(DeltaM, SizeGuardRejectsLargeDimensions) {
  auto t = StochasticTensor::uniform(2, 21);
  EXPECT_THROW(delta_m(t), std::invalid_argument);
}

TEST(ConditionReportOp, UniformTensor) {
  ConditionReport r = condition_report(StochasticTensor::uniform(3, 2));
  EXPECT_DOUBLE_EQ(r.delta_m, 1.0);
  EXPECT_DOUBLE_EQ(r.eta_m, 0.0);
  EXPECT_TRUE(r.uniqueness_holds);
  EXPECT_DOUBLE_EQ(r.hopmm1_beta_max, 1.0);
  EXPECT_DOUBLE_EQ(r.hopmm2_eta_max, 1.0);
}

TEST(ConditionReportOp, IdentityMatrixHasNoGuarantee) {
  auto t = StochasticTensor::from_dense(2, 2, {1, 0, 0, 1});
  ConditionReport r = condition_report(t);
  EXPECT_DOUBLE_EQ(r.delta_m, 0.0);
  EXPECT_DOUBLE_EQ(r.eta_m, 1.0);
  EXPECT_FALSE(r.uniqueness_holds);  // needs delta > 0 at order 2
  EXPECT_DOUBLE_EQ(r.hopmm1_beta_max, 0.0);
  EXPECT_DOUBLE_EQ(r.hopmm2_eta_max, 0.0);
}

TEST(ConditionReportOp, FixtureIIAgainstOracle) {
  const Fixture& f = fixture("ii");
  ConditionReport r = condition_report(f.tensor);
  const double d = oracle::delta_m_exhaustive(f.tensor);
  EXPECT_EQ(r.delta_m, d);
  EXPECT_DOUBLE_EQ(r.eta_m, (1.0 - d) * 2.0);
  EXPECT_TRUE(r.uniqueness_holds);
  EXPECT_NEAR(r.hopmm2_eta_max, (1.0 - r.eta_m) / (1.0 + r.eta_m), 1e-15);
  EXPECT_NEAR(r.hopmm1_beta_max, 1.0 - r.eta_m, 1e-15);
}

TEST(Property, DeltaStaysInUnitInterval) {
  std::mt19937_64 rng(42);
  for (int c = 0; c < 300; ++c) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const int n = 2 + static_cast<int>(rng() % 5);
    StochasticTensor t = oracle::random_dense_tensor(m, n, rng);
    const double d = delta_m(t);
    ASSERT_GE(d, 0.0);
    ASSERT_LE(d, 1.0 + 1e-15);
  }
}

TEST(Property, HalfSubsetEnumerationMatchesFull) {
  std::mt19937_64 rng(43);
  for (int c = 0; c < 200; ++c) {
    const int m = 2 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 4);
    StochasticTensor t = oracle::random_dense_tensor(m, n, rng);
    ASSERT_EQ(delta_m(t), oracle::delta_m_exhaustive(t));
  }
}

TEST(Property, UniquenessImpliesStartIndependentLimit) {
  std::mt19937_64 rng(44);
  int checked = 0;
  while (checked < 10) {
    const int n = 3 + static_cast<int>(rng() % 3);
    StochasticTensor t = oracle::random_contractive_tensor(3, n, 0.5, rng);
    if (!condition_report(t).uniqueness_holds) continue;
    SolverConfig cfg;
    cfg.x0 = oracle::random_simplex(n, rng);
    SolveReport a = solve_hopm(t, cfg);
    cfg.x0 = oracle::random_simplex(n, rng);
    SolveReport b = solve_hopm(t, cfg);
    ASSERT_TRUE(a.converged && b.converged);
    ASSERT_LT(a.final_x.l1_distance(b.final_x), 1e-8);
    ++checked;
  }
}

}  // namespace
}  // namespace homc
