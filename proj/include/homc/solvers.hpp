#pragma once

#include <homc/prob_vector.hpp>
#include <homc/tensor.hpp>

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <concepts>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homc {

/// Fixed-point operator x -> Px^{m-1}. StochasticTensor models this directly;
/// the PageRank operator provides the damped variant without materializing
/// the teleportation tensor.
template <class Op>
concept TransitionOp = requires(const Op& op, const ProbVector& x) {
  { op.order() } -> std::convertible_to<int>;
  { op.dim() } -> std::convertible_to<Index>;
  { op.apply(x) } -> std::same_as<ProbVector>;
  { op.apply_matrix(x) } -> std::same_as<ContractionMatrix>;
};

enum class Method { Hopm, Geap, Rhopm, Hopmm1, Hopmm2, Qehopm };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Hopm: return "hopm";
    case Method::Geap: return "geap";
    case Method::Rhopm: return "rhopm";
    case Method::Hopmm1: return "hopmm1";
    case Method::Hopmm2: return "hopmm2";
    case Method::Qehopm: return "qehopm";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  if (s == "hopm") return Method::Hopm;
  if (s == "geap") return Method::Geap;
  if (s == "rhopm") return Method::Rhopm;
  if (s == "hopmm1") return Method::Hopmm1;
  if (s == "hopmm2") return Method::Hopmm2;
  if (s == "qehopm") return Method::Qehopm;
  throw std::invalid_argument("unknown method '" + s + "'");
}

struct SolverConfig {
  double tol = 1e-10;
  int max_iter = 1000;
  Method method = Method::Hopm;
  double beta = 0.0;   // momentum weight beta*(x_{k-1} - x_{k-2})
  double eta = 0.0;    // heavy-ball weight eta*(x_k - x_{k-1})
  double gamma = 1.2;  // relaxation blend gamma*y + (1-gamma)*x
  double tau = 1e-6;   // positive-definiteness tolerance for the adaptive shift
  // acceleration cadence; method default when unset (momentum: 3 and 2,
  // extrapolation: 4)
  std::optional<int> period;
  std::optional<ProbVector> x0;  // uniform start when unset
  bool record_iterates = false;

  int effective_period() const {
    if (period) return *period;
    switch (method) {
      case Method::Hopmm1: return 3;
      case Method::Hopmm2: return 2;
      case Method::Qehopm: return 4;
      default: return 1;
    }
  }

  void check() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    if (period && *period < 1) throw std::invalid_argument("SolverConfig: period must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("SolverConfig: gamma must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("SolverConfig: tau must be > 0");
    if (beta < 0.0) throw std::invalid_argument("SolverConfig: beta must be >= 0");
    if (eta < 0.0) throw std::invalid_argument("SolverConfig: eta must be >= 0");
  }
};

struct ResidualSample {
  int iteration;
  double step_norm;  // ||x_k - x_{k-1}||_1, the stopping quantity
  double residual;   // ||P x_k^{m-1} - x_k||_1
};

struct ExtrapolationEvent {
  int iteration;
  bool accepted;  // false when the step was skipped (degenerate system)
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;  // fixed-point map applications driving the iteration
  ProbVector final_x;
  double residual = 0.0;  // recomputed from final_x at exit
  std::vector<ResidualSample> residual_history;
  double wall_time = 0.0;  // seconds
  Method method = Method::Hopm;
  std::vector<ExtrapolationEvent> extrapolation_events;
  std::vector<ProbVector> iterate_history;  // filled when record_iterates
};

/// Coefficients recovered by the extrapolation kernel. gamma3 is pinned to 1;
/// the combination weights alpha sum to one by construction.
struct ExtrapolationCoeffs {
  double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 1.0;
  double beta0 = 0.0, beta1 = 0.0, beta2 = 1.0;
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
};

struct Extrapolation {
  ProbVector x;
  ExtrapolationCoeffs coeffs;
};

/// Quadratic extrapolation from four consecutive iterates.
///
/// Writes y_j = x_j - x_{k-3}, solves the overdetermined system
/// Y (gamma1, gamma2)^T = -y_k in least squares via a two-column Gram-Schmidt
/// QR with back substitution, then combines
///   x_hat = (beta0 x_{k-2} + beta1 x_{k-1} + beta2 x_k) / (beta0+beta1+beta2)
/// with beta0 = gamma1+gamma2+gamma3, beta1 = gamma2+gamma3, beta2 = gamma3,
/// and projects onto the simplex.
///
/// If the iterates are exact powers of a column-stochastic matrix whose
/// minimal polynomial has degree <= 3 and a simple eigenvalue 1, the result is
/// that matrix's principal eigenvector.
///
/// Returns nullopt (extrapolation skipped) when the difference vectors are
/// numerically rank deficient, the beta sum vanishes, or the combination has
/// no positive mass; the caller keeps its current iterate.
inline std::optional<Extrapolation> quadratic_extrapolation(const ProbVector& x_km3,
                                                            const ProbVector& x_km2,
                                                            const ProbVector& x_km1,
                                                            const ProbVector& x_k) {
  constexpr double kEps = 1e-13;
  const Index n = x_km3.size();
  if (x_km2.size() != n || x_km1.size() != n || x_k.size() != n) {
    throw std::invalid_argument("quadratic_extrapolation: dimension mismatch");
  }
  const Vector y2 = x_km2.values() - x_km3.values();
  const Vector y1 = x_km1.values() - x_km3.values();
  const Vector yk = x_k.values() - x_km3.values();
  if (yk.lpNorm<1>() < kEps) return std::nullopt;

  // two steps of Gram-Schmidt on Y = [y2 y1]
  const double r11 = y2.norm();
  if (r11 < kEps) return std::nullopt;
  const Vector q1 = y2 / r11;
  const double r12 = q1.dot(y1);
  const Vector w = y1 - r12 * q1;
  const double r22 = w.norm();
  if (r22 < kEps) return std::nullopt;
  const Vector q2 = w / r22;

  // back substitution for R (gamma1, gamma2)^T = -Q^T y_k
  const double b1 = -q1.dot(yk);
  const double b2 = -q2.dot(yk);
  ExtrapolationCoeffs c;
  c.gamma2 = b2 / r22;
  c.gamma1 = (b1 - r12 * c.gamma2) / r11;
  c.gamma3 = 1.0;
  c.beta0 = c.gamma1 + c.gamma2 + c.gamma3;
  c.beta1 = c.gamma2 + c.gamma3;
  c.beta2 = c.gamma3;
  const double s = c.beta0 + c.beta1 + c.beta2;
  if (std::abs(s) < kEps) return std::nullopt;
  c.alpha1 = c.beta2 / s;
  c.alpha2 = c.beta1 / s;
  c.alpha3 = 1.0 - c.alpha1 - c.alpha2;

  const Vector xhat = (c.beta0 * x_km2.values() + c.beta1 * x_km1.values() +
                       c.beta2 * x_k.values()) /
                      s;
  if (xhat.cwiseMax(0.0).sum() <= 0.0) return std::nullopt;
  return Extrapolation{proj(xhat), c};
}

namespace detail {

inline double l1_diff(const Vector& a, const Vector& b) { return (a - b).lpNorm<1>(); }

/// Smallest real part over the spectrum of the (generally nonsymmetric)
/// scaled contraction matrix m(m-1) Px^{m-2}.
inline double min_real_eigenvalue(const Matrix& H) {
  Eigen::EigenSolver<Matrix> es(H, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue computation failed");
  }
  return es.eigenvalues().real().minCoeff();
}

}  // namespace detail

inline constexpr Index kGeapMaxDim = 512;

/// Shared driver for the six fixed-point solvers.
///
/// Each pass applies the operator once (the counted contraction), runs the
/// method's update, and stops when ||x_k - x_{k-1}||_1 < tol. The power
/// iterate is rescaled to unit sum every step: the map is homogeneous of
/// degree m-1, so an uncorrected sum error doubles per iteration and
/// eventually floors the achievable step norm.
template <TransitionOp Op>
SolveReport solve(const Op& op, const SolverConfig& cfg) {
  cfg.check();
  const int m = op.order();
  const Index n = op.dim();
  if (cfg.method == Method::Geap && n > kGeapMaxDim) {
    throw std::invalid_argument("solve: adaptive shift needs a dense eigensolve, dim limited to " +
                                std::to_string(kGeapMaxDim));
  }
  const int period = cfg.effective_period();

  SolveReport rep;
  rep.method = cfg.method;

  ProbVector x0 = cfg.x0 ? *cfg.x0 : ProbVector::uniform(n);
  if (x0.size() != n) throw std::invalid_argument("solve: x0 dimension mismatch");

  const auto t_start = std::chrono::steady_clock::now();
  std::deque<ProbVector> hist;  // most recent last; at most 4 needed
  hist.push_back(std::move(x0));
  if (cfg.record_iterates) rep.iterate_history.push_back(hist.back());

  for (int k = 1; k <= cfg.max_iter; ++k) {
    const ProbVector& x_prev = hist.back();
    Vector y = op.apply(x_prev).values();
    // RR of the previous iterate comes free from this application
    if (k >= 2) rep.residual_history[static_cast<std::size_t>(k) - 2].residual =
        detail::l1_diff(y, x_prev.values());
    y /= y.sum();
    ProbVector power(std::move(y));

    ProbVector x_k = power;
    std::optional<double> step;  // stopping quantity, defaults to post-update norm
    switch (cfg.method) {
      case Method::Hopm:
        break;
      case Method::Geap: {
        Matrix H = op.apply_matrix(x_prev).values();
        H *= static_cast<double>(m) * static_cast<double>(m - 1);
        const double lmin = detail::min_real_eigenvalue(H);
        const double alpha = std::max(0.0, (cfg.tau - lmin) / static_cast<double>(m));
        x_k = proj(power.values() + alpha * x_prev.values());
        break;
      }
      case Method::Rhopm:
        x_k = proj(cfg.gamma * power.values() + (1.0 - cfg.gamma) * x_prev.values());
        break;
      case Method::Hopmm1:
        if (k % period == 0) {
          if (hist.size() >= 2) {
            const ProbVector& x_km2 = hist[hist.size() - 2];
            x_k = proj(power.values() + cfg.beta * (x_prev.values() - x_km2.values()));
            rep.extrapolation_events.push_back({k, true});
          } else {
            rep.extrapolation_events.push_back({k, false});
          }
        }
        break;
      case Method::Hopmm2:
        if (k % period == 0) {
          x_k = proj(power.values() + cfg.eta * (power.values() - x_prev.values()));
          rep.extrapolation_events.push_back({k, true});
        }
        break;
      case Method::Qehopm:
        // the stopping test uses the plain power step, the extrapolated
        // iterate replaces it for subsequent passes
        step = detail::l1_diff(power.values(), x_prev.values());
        if (k % period == 0) {
          if (hist.size() >= 3) {
            auto qe = quadratic_extrapolation(hist[hist.size() - 3], hist[hist.size() - 2],
                                              hist[hist.size() - 1], power);
            rep.extrapolation_events.push_back({k, qe.has_value()});
            if (qe) x_k = std::move(qe->x);
          } else {
            rep.extrapolation_events.push_back({k, false});
          }
        }
        break;
    }

    const double step_norm = step ? *step : detail::l1_diff(x_k.values(), x_prev.values());
    rep.residual_history.push_back({k, step_norm, 0.0});
    rep.iterations = k;
    hist.push_back(std::move(x_k));
    if (hist.size() > 4) hist.pop_front();
    if (cfg.record_iterates) rep.iterate_history.push_back(hist.back());
    if (step_norm < cfg.tol) {
      rep.converged = true;
      break;
    }
  }

  rep.final_x = hist.back();
  // exit residual recomputed from scratch, not read from the loop
  rep.residual = detail::l1_diff(op.apply(rep.final_x).values(), rep.final_x.values());
  if (!rep.residual_history.empty()) {
    rep.residual_history.back().residual = rep.residual;
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

template <TransitionOp Op>
SolveReport solve_with(const Op& op, SolverConfig cfg, Method method) {
  cfg.method = method;
  return solve(op, cfg);
}

template <TransitionOp Op>
SolveReport solve_hopm(const Op& op, SolverConfig cfg = {}) {
  return solve_with(op, cfg, Method::Hopm);
}
template <TransitionOp Op>
SolveReport solve_geap(const Op& op, SolverConfig cfg = {}) {
  return solve_with(op, cfg, Method::Geap);
}
template <TransitionOp Op>
SolveReport solve_rhopm(const Op& op, SolverConfig cfg = {}) {
  return solve_with(op, cfg, Method::Rhopm);
}
template <TransitionOp Op>
SolveReport solve_hopmm1(const Op& op, SolverConfig cfg = {}) {
  return solve_with(op, cfg, Method::Hopmm1);
}
template <TransitionOp Op>
SolveReport solve_hopmm2(const Op& op, SolverConfig cfg = {}) {
  return solve_with(op, cfg, Method::Hopmm2);
}
template <TransitionOp Op>
SolveReport solve_qehopm(const Op& op, SolverConfig cfg = {}) {
  return solve_with(op, cfg, Method::Qehopm);
}

}  // namespace homc
