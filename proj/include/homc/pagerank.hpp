#pragma once

#include <homc/solvers.hpp>
#include <homc/tensor.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

namespace homc {

/// Damped fixed-point operator theta*P x^{m-1} + (1-theta)*v, the action of
/// the convex combination theta*P + (1-theta)*V where V copies the teleport
/// vector into every column. V itself is never formed; both contractions stay
/// O(nnz) in the base tensor.
class PageRankProblem {
 public:
  PageRankProblem(StochasticTensor base, ProbVector teleport, double damping)
      : base_(std::move(base)), teleport_(std::move(teleport)), damping_(damping) {
    if (!(damping > 0.0 && damping < 1.0)) {
      throw std::invalid_argument("PageRankProblem: damping must lie in (0,1)");
    }
    if (teleport_.size() != base_.dim()) {
      throw std::invalid_argument("PageRankProblem: teleport dimension mismatch");
    }
  }

  int order() const { return base_.order(); }
  Index dim() const { return base_.dim(); }
  const StochasticTensor& base() const { return base_; }
  const ProbVector& teleport() const { return teleport_; }
  double damping() const { return damping_; }

  ProbVector apply(const ProbVector& x) const {
    return ProbVector(damping_ * base_.apply(x).values() +
                      (1.0 - damping_) * teleport_.values());
  }

  ContractionMatrix apply_matrix(const ProbVector& x) const {
    Matrix M = damping_ * base_.apply_matrix(x).values();
    M.colwise() += (1.0 - damping_) * teleport_.values();
    return ContractionMatrix(std::move(M));
  }

 private:
  StochasticTensor base_;
  ProbVector teleport_;
  double damping_;
};

inline ProbVector pagerank_apply(const PageRankProblem& p, const ProbVector& x) {
  return p.apply(x);
}

inline SolveReport solve_pagerank(const PageRankProblem& p, const SolverConfig& cfg) {
  return solve(p, cfg);
}

namespace detail {

// 53-bit uniform draw in [0,1); fixed mapping keeps generated tensors
// identical across platforms
inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Random transition probability tensor: per column, entries survive with the
/// given density (at least one forced), draw uniform values, and are rescaled
/// to unit sum. Deterministic per seed.
inline StochasticTensor gen_random_tensor(int order, int dim, double density,
                                          std::uint64_t seed) {
  if (order < 2) throw std::invalid_argument("gen_random_tensor: order must be >= 2");
  if (dim < 1) throw std::invalid_argument("gen_random_tensor: dim must be >= 1");
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("gen_random_tensor: density must lie in (0,1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<StochasticTensor::Entry> entries;
  std::uint64_t cols = 1;
  for (int j = 1; j < order; ++j) cols *= static_cast<std::uint64_t>(dim);

  std::vector<double> col(static_cast<std::size_t>(dim));
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(order));
  for (std::uint64_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
      const bool keep = detail::canonical(rng) < density;
      const double v = detail::canonical(rng);
      col[static_cast<std::size_t>(i)] = keep ? v : 0.0;
      sum += col[static_cast<std::size_t>(i)];
    }
    if (!(sum > 0.0)) {
      const auto i = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(dim));
      col[i] = detail::canonical(rng) + 0.5;
      sum = col[i];
    }
    std::uint64_t tail = c;
    for (int j = 1; j < order; ++j) {
      idx[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(tail % dim);
      tail /= static_cast<std::uint64_t>(dim);
    }
    for (int i = 0; i < dim; ++i) {
      if (col[static_cast<std::size_t>(i)] == 0.0) continue;
      idx[0] = static_cast<std::uint32_t>(i);
      entries.push_back({idx, col[static_cast<std::size_t>(i)] / sum});
    }
  }
  return StochasticTensor::from_entries(order, dim, entries);
}

}  // namespace homc
