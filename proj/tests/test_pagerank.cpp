#include <homc/pagerank.hpp>
#include <homc/solvers.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace homc {
namespace {

// seed of a frozen n=4 stress instance, found by scanning the generator at
// density 0.3 for a base tensor where the plain power iteration exhausts its
// budget at theta = 0.99 while the extrapolated method converges
constexpr std::uint64_t kStressSeed = 1;

// dense damped tensor theta*P + (1-theta)*V for the materialization oracle
StochasticTensor materialize(const StochasticTensor& base, const ProbVector& v,
                             double theta) {
  const int m = base.order();
  const int n = base.dim();
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) total *= static_cast<std::uint64_t>(n);
  std::vector<double> vals(total);
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(m), 0);
  std::uint64_t k = 0;
  do {
    vals[k++] = theta * base.at(idx) + (1.0 - theta) * v[idx[0]];
  } while (oracle::next_tuple(idx, n));
  return StochasticTensor::from_dense(m, n, std::move(vals));
}

TEST(PageRankApply, UniformEverythingStaysUniform) {
  PageRankProblem p(StochasticTensor::uniform(3, 3), ProbVector::uniform(3), 0.5);
  ProbVector y = p.apply(ProbVector::uniform(3));
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(y[i], 1.0 / 3.0, 1e-15);
}

TEST(PageRankApply, BasisTeleportHalfDamping) {
  PageRankProblem p(StochasticTensor::uniform(3, 2), ProbVector::basis(2, 0), 0.5);
  ProbVector y = p.apply(ProbVector::uniform(2));
  EXPECT_DOUBLE_EQ(y[0], 0.75);
  EXPECT_DOUBLE_EQ(y[1], 0.25);
}

TEST(PageRankApply, MatchesMaterializedTensor) {
  std::mt19937_64 rng(2718);
  for (int c = 0; c < 50; ++c) {
    const int n = 2 + static_cast<int>(rng() % 4);  // n <= 5
    StochasticTensor base = oracle::random_dense_tensor(3, n, rng);
    ProbVector v = oracle::random_simplex(n, rng);
    const double theta = 0.1 + 0.8 * oracle::unit(rng);
    PageRankProblem p(base, v, theta);
    StochasticTensor dense = materialize(base, v, theta);
    ASSERT_TRUE(dense.validate().ok());
    ProbVector x = oracle::random_simplex(n, rng);
    ASSERT_LT((p.apply(x).values() - dense.apply(x).values()).cwiseAbs().maxCoeff(), 1e-14);
    ASSERT_LT((p.apply_matrix(x).values() - dense.apply_matrix(x).values())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-14);
  }
}

TEST(PageRankSolve, StrongDampingAllMethodsAgree) {
  std::mt19937_64 rng(31415);
  for (int c = 0; c < 5; ++c) {
    PageRankProblem p(gen_random_tensor(3, 4, 0.6, 1000 + c), ProbVector::uniform(4), 0.1);
    SolveReport a = solve_hopm(p);
    SolveReport b = solve_qehopm(p);
    ASSERT_TRUE(a.converged && b.converged);
    EXPECT_LT(a.final_x.l1_distance(b.final_x), 1e-9);
  }
}

TEST(PageRankSolve, UniformProblemFixedImmediately) {
  PageRankProblem p(StochasticTensor::uniform(3, 4), ProbVector::uniform(4), 0.7);
  SolveReport rep = solve_hopm(p);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.iterations, 1);
}

// instance found by seed search: the plain power iteration oscillates at
// weak damping while the extrapolated method settles
TEST(PageRankSolve, StressInstanceSeparatesMethods) {
  PageRankProblem p(gen_random_tensor(3, 4, 0.3, kStressSeed), ProbVector::uniform(4), 0.99);
  SolveReport plain = solve_hopm(p);
  EXPECT_FALSE(plain.converged);
  EXPECT_EQ(plain.iterations, 1000);
  SolveReport accel = solve_qehopm(p);
  EXPECT_TRUE(accel.converged);
  EXPECT_LE(p.apply(accel.final_x).l1_distance(accel.final_x), 1e-9);
}

TEST(PageRankSolve, ConvergedReportsSatisfyFixedPointEquation) {
  for (double theta : {0.3, 0.85}) {
    PageRankProblem p(gen_random_tensor(3, 5, 0.5, 77), ProbVector::uniform(5), theta);
    SolveReport rep = solve_qehopm(p);
    ASSERT_TRUE(rep.converged);
    EXPECT_LT(p.apply(rep.final_x).l1_distance(rep.final_x), 10.0 * 1e-10);
  }
}

TEST(PageRankProblemType, RejectsBadDamping) {
  auto t = StochasticTensor::uniform(3, 3);
  EXPECT_THROW(PageRankProblem(t, ProbVector::uniform(3), 0.0), std::invalid_argument);
  EXPECT_THROW(PageRankProblem(t, ProbVector::uniform(3), 1.0), std::invalid_argument);
  EXPECT_THROW(PageRankProblem(t, ProbVector::uniform(4), 0.5), std::invalid_argument);
}

TEST(GenRandomTensor, FullDensityFillsEveryEntry) {
  StochasticTensor t = gen_random_tensor(3, 3, 1.0, 5);
  EXPECT_EQ(t.nnz(), 27u);
  EXPECT_TRUE(t.validate().ok());
}

TEST(GenRandomTensor, DeterministicPerSeed) {
  StochasticTensor a = gen_random_tensor(3, 4, 0.5, 7);
  StochasticTensor b = gen_random_tensor(3, 4, 0.5, 7);
  EXPECT_EQ(a.nnz(), b.nnz());
  std::vector<std::uint32_t> idx(3, 0);
  do {
    ASSERT_EQ(a.at(idx), b.at(idx));
  } while (oracle::next_tuple(idx, 4));
  StochasticTensor c = gen_random_tensor(3, 4, 0.5, 8);
  bool differs = false;
  std::fill(idx.begin(), idx.end(), 0);
  do {
    differs |= a.at(idx) != c.at(idx);
  } while (oracle::next_tuple(idx, 4));
  EXPECT_TRUE(differs);
}

TEST(GenRandomTensor, ColumnsSumToOne) {
  StochasticTensor t = gen_random_tensor(3, 4, 0.5, 7);
  EXPECT_TRUE(t.validate().ok());  // column tolerance 1e-12
}

TEST(GenRandomTensor, ParameterValidation) {
  EXPECT_THROW(gen_random_tensor(1, 3, 0.5, 0), std::invalid_argument);
  EXPECT_THROW(gen_random_tensor(3, 3, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(gen_random_tensor(3, 3, 1.5, 0), std::invalid_argument);
}

}  // namespace
}  // namespace homc
