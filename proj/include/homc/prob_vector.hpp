#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <utility>

namespace homc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Probability vector on the standard simplex: componentwise nonnegative,
/// 1-norm equal to one within kSumTol.
class ProbVector {
 public:
  static constexpr double kSumTol = 1e-12;

  ProbVector() = default;

  explicit ProbVector(Vector values) : v_(std::move(values)) {
    std::string why;
    if (!is_valid(v_, &why)) {
      throw std::invalid_argument("ProbVector: " + why);
    }
    // entries inside [-kSumTol, 0) are rounding noise; store them as exact zeros
    for (Index i = 0; i < v_.size(); ++i) {
      if (v_[i] < 0.0) v_[i] = 0.0;
    }
  }

  static ProbVector uniform(Index n) {
    if (n < 1) throw std::invalid_argument("ProbVector::uniform: n must be >= 1");
    return ProbVector(Vector::Constant(n, 1.0 / static_cast<double>(n)), unchecked_t{});
  }

  /// Unit vector e_i.
  static ProbVector basis(Index n, Index i) {
    if (i < 0 || i >= n) throw std::invalid_argument("ProbVector::basis: index out of range");
    Vector v = Vector::Zero(n);
    v[i] = 1.0;
    return ProbVector(std::move(v), unchecked_t{});
  }

  static bool is_valid(const Vector& v, std::string* why = nullptr) {
    if (v.size() == 0) {
      if (why) *why = "empty vector";
      return false;
    }
    double sum = 0.0;
    for (Index i = 0; i < v.size(); ++i) {
      if (v[i] < -kSumTol || !std::isfinite(v[i])) {
        if (why) *why = "negative component at index " + std::to_string(i) + " (" + std::to_string(v[i]) + ")";
        return false;
      }
      sum += v[i];
    }
    if (std::abs(sum - 1.0) > kSumTol) {
      if (why) *why = "components sum to " + std::to_string(sum) + ", expected 1";
      return false;
    }
    return true;
  }

  const Vector& values() const { return v_; }
  Index size() const { return v_.size(); }
  double operator[](Index i) const { return v_[i]; }

  double l1_distance(const ProbVector& other) const {
    return (v_ - other.v_).lpNorm<1>();
  }

 private:
  struct unchecked_t {};
  ProbVector(Vector v, unchecked_t) : v_(std::move(v)) {}

  friend ProbVector proj(const Vector&);

  Vector v_;
};

/// proj(x) = max(x, 0) / ||max(x, 0)||_1.
/// Throws std::domain_error when x has no positive component.
inline ProbVector proj(const Vector& x) {
  Vector xp = x.cwiseMax(0.0);
  const double s = xp.sum();
  if (!(s > 0.0)) {
    throw std::domain_error("proj: no positive mass");
  }
  xp /= s;
  return ProbVector(std::move(xp), ProbVector::unchecked_t{});
}

inline ProbVector proj(const ProbVector& x) { return proj(x.values()); }

}  // namespace homc
