#pragma once

#include <homc/tensor.hpp>

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace homc {

/// Structural quantities controlling uniqueness of the stationary vector and
/// the contraction rate of the power iteration.
///
///   delta_m = min over nonempty proper S of
///             [ min over tails of sum_{i in S'} p(i,tail)
///             + min over tails of sum_{i in S}  p(i,tail) ]
///   eta_m   = (1 - delta_m) * (m - 1)
///
/// delta_m > (m-2)/(m-1) makes the fixed point unique and eta_m < 1 a
/// contraction factor for ||P(x^{m-1} - y^{m-1})||_1.
struct ConditionReport {
  double delta_m = 0.0;
  double eta_m = 0.0;
  bool uniqueness_holds = false;
  // largest heavy-ball weight with (1+eta)*eta_m + eta < 1, zero when none
  double hopmm2_eta_max = 0.0;
  // largest two-step momentum weight with (eta_m+beta)*eta_m + beta < 1
  double hopmm1_beta_max = 0.0;
};

/// Exact subset-enumeration evaluation of delta_m. Cost grows as
/// 2^n * n^(m-1); inputs beyond the guards below are rejected rather than
/// approximated, since the value gates theorem-level assertions.
inline double delta_m(const StochasticTensor& t) {
  const int n = t.dim();
  const std::uint64_t tails = t.column_count();
  if (n < 2) {
    throw std::invalid_argument("delta_m: dimension must be >= 2");
  }
  if (n > 20 || tails > 1'000'000 ||
      (static_cast<std::uint64_t>(1) << (n - 1)) * tails > 200'000'000ULL) {
    throw std::invalid_argument("delta_m: tensor too large for exact enumeration");
  }

  const std::uint32_t full = (1u << n) - 1u;
  const std::uint32_t nmasks = 1u << n;
  // per-subset minima over tails, updated while streaming columns
  std::vector<double> min_in(nmasks, std::numeric_limits<double>::infinity());
  std::vector<double> sums(nmasks, 0.0);

  t.visit_columns([&](std::uint64_t, std::span<const double> col) {
    // subset sums by peeling the highest bit; keeps the accumulation order
    // identical to a plain ascending loop over the states
    for (std::uint32_t mask = 1; mask < nmasks; ++mask) {
      const std::uint32_t high = std::bit_floor(mask);
      const int bit = std::countr_zero(high);
      sums[mask] = sums[mask ^ high] + col[static_cast<std::size_t>(bit)];
    }
    for (std::uint32_t mask = 1; mask < nmasks; ++mask) {
      if (sums[mask] < min_in[mask]) min_in[mask] = sums[mask];
    }
  });

  // S and its complement enter symmetrically; subsets containing state 0
  // enumerate each pair once
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    const double cand = min_in[mask] + min_in[full ^ mask];
    if (cand < best) best = cand;
  }
  return best;
}

inline ConditionReport condition_report(const StochasticTensor& t) {
  ConditionReport r;
  const int m = t.order();
  r.delta_m = delta_m(t);
  r.eta_m = (1.0 - r.delta_m) * static_cast<double>(m - 1);
  r.uniqueness_holds =
      r.delta_m > static_cast<double>(m - 2) / static_cast<double>(m - 1);
  const double eta_bound = (1.0 - r.eta_m) / (1.0 + r.eta_m);
  r.hopmm2_eta_max = eta_bound > 0.0 ? eta_bound : 0.0;
  const double beta_bound = 1.0 - r.eta_m;
  r.hopmm1_beta_max = beta_bound > 0.0 ? beta_bound : 0.0;
  return r;
}

}  // namespace homc
