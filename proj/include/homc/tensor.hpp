#pragma once

#include <homc/prob_vector.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homc {

/// Matrix contraction Px^{m-2}: entry (i1,i2) = sum_{i3..im} p(i1,i2,i3..im) x_{i3}..x_{im}.
/// When x lies on the simplex the result is column-stochastic.
class ContractionMatrix {
 public:
  explicit ContractionMatrix(Matrix values) : m_(std::move(values)) {
    if (m_.rows() != m_.cols()) {
      throw std::invalid_argument("ContractionMatrix: matrix must be square");
    }
  }

  const Matrix& values() const { return m_; }
  Index dim() const { return m_.rows(); }

  ProbVector times(const ProbVector& x) const {
    if (x.size() != m_.cols()) {
      throw std::invalid_argument("ContractionMatrix::times: dimension mismatch");
    }
    return ProbVector(m_ * x.values());
  }

 private:
  Matrix m_;
};

struct Violation {
  enum class Kind { NegativeEntry, ColumnSum };
  Kind kind;
  // full index tuple for NegativeEntry, tail tuple (i2..im) for ColumnSum; 0-based
  std::vector<std::uint32_t> index;
  double value;  // the offending entry, or the column sum
};

struct ValidationResult {
  bool ok() const { return violations.empty(); }
  std::vector<Violation> violations;
};

/// Order-m, dimension-n transition probability tensor. The first index is the
/// destination state; every column (fixed tail i2..im) sums to one over i1.
///
/// Storage is either a coordinate list sorted by (tail, i1) or a dense array
/// with i1 varying fastest; unstored sparse entries are exactly zero. Instances
/// are immutable after construction and safe to share across threads.
class StochasticTensor {
 public:
  static constexpr double kColumnTol = 1e-12;
  static constexpr std::uint64_t kDenseCap = 1'000'000;

  struct Entry {
    std::vector<std::uint32_t> index;  // 0-based, size = order
    double value;
  };

  /// Empty placeholder; assign a real tensor before use.
  StochasticTensor() = default;

  static StochasticTensor from_dense(int order, int dim, std::vector<double> values) {
    StochasticTensor t(order, dim);
    const std::uint64_t total = t.total_size();
    if (total > kDenseCap) {
      throw std::invalid_argument("StochasticTensor: dense storage limited to " +
                                  std::to_string(kDenseCap) + " entries");
    }
    if (values.size() != total) {
      throw std::invalid_argument("StochasticTensor: expected " + std::to_string(total) +
                                  " dense values, got " + std::to_string(values.size()));
    }
    t.dense_ = std::move(values);
    return t;
  }

  static StochasticTensor from_entries(int order, int dim, const std::vector<Entry>& entries) {
    StochasticTensor t(order, dim);
    t.keys_.reserve(entries.size());
    t.vals_.reserve(entries.size());
    std::vector<std::pair<std::uint64_t, double>> kv;
    kv.reserve(entries.size());
    for (const Entry& e : entries) {
      kv.emplace_back(t.key_of(e.index), e.value);
    }
    std::sort(kv.begin(), kv.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < kv.size(); ++i) {
      if (kv[i].first == kv[i - 1].first) {
        throw std::invalid_argument("StochasticTensor: duplicate entry at key " +
                                    std::to_string(kv[i].first));
      }
    }
    for (const auto& [k, v] : kv) {
      t.keys_.push_back(k);
      t.vals_.push_back(v);
    }
    return t;
  }

  /// Tensor with every entry 1/dim; dense storage.
  static StochasticTensor uniform(int order, int dim) {
    StochasticTensor probe(order, dim);
    const std::uint64_t total = probe.total_size();
    if (total > kDenseCap) {
      throw std::invalid_argument("StochasticTensor::uniform: too large for dense storage");
    }
    return from_dense(order, dim,
                      std::vector<double>(total, 1.0 / static_cast<double>(dim)));
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  bool is_dense() const { return !dense_.empty(); }
  std::size_t nnz() const {
    if (!is_dense()) return keys_.size();
    std::size_t count = 0;
    for (double v : dense_) count += (v != 0.0);
    return count;
  }

  double at(std::span<const std::uint32_t> index) const {
    const std::uint64_t key = key_of(index);
    if (is_dense()) return dense_[static_cast<std::size_t>(key)];
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return 0.0;
    return vals_[static_cast<std::size_t>(it - keys_.begin())];
  }

  /// Iterates stored nonzero entries as (index tuple, value).
  template <class F>
  void for_each_entry(F&& f) const {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(order_));
    if (is_dense()) {
      for (std::uint64_t key = 0; key < dense_.size(); ++key) {
        if (dense_[static_cast<std::size_t>(key)] == 0.0) continue;
        decode_key(key, idx);
        f(std::span<const std::uint32_t>(idx), dense_[static_cast<std::size_t>(key)]);
      }
    } else {
      for (std::size_t e = 0; e < keys_.size(); ++e) {
        if (vals_[e] == 0.0) continue;
        decode_key(keys_[e], idx);
        f(std::span<const std::uint32_t>(idx), vals_[e]);
      }
    }
  }

  /// (Px^{m-1})_i = sum over tails of p(i, i2..im) x_{i2}..x_{im}.
  /// Sparse storage touches only stored entries; dense storage reuses the
  /// matrix contraction and multiplies by x. Both paths agree within rounding.
  ProbVector apply(const ProbVector& x) const {
    check_dim(x);
    if (is_dense()) {
      return apply_matrix(x).times(x);
    }
    Vector r = Vector::Zero(dim_);
    const auto n = static_cast<std::uint64_t>(dim_);
    for (std::size_t e = 0; e < keys_.size(); ++e) {
      std::uint64_t rest = keys_[e];
      const auto i1 = static_cast<Index>(rest % n);
      rest /= n;
      double w = vals_[e];
      for (int j = 1; j < order_; ++j) {
        w *= x[static_cast<Index>(rest % n)];
        rest /= n;
      }
      r[i1] += w;
    }
    return ProbVector(std::move(r));
  }

  /// Px^{m-2}; for m = 2 this is the tensor itself as a matrix.
  ContractionMatrix apply_matrix(const ProbVector& x) const {
    check_dim(x);
    Matrix M = Matrix::Zero(dim_, dim_);
    const auto n = static_cast<std::uint64_t>(dim_);
    if (is_dense()) {
      const std::uint64_t tails = total_size() / (n * n);  // tuples (i3..im)
      std::uint64_t key = 0;
      for (std::uint64_t t = 0; t < tails; ++t) {
        double w = 1.0;
        std::uint64_t rest = t;
        for (int j = 2; j < order_; ++j) {
          w *= x[static_cast<Index>(rest % n)];
          rest /= n;
        }
        for (std::uint64_t i2 = 0; i2 < n; ++i2) {
          for (std::uint64_t i1 = 0; i1 < n; ++i1, ++key) {
            M(static_cast<Index>(i1), static_cast<Index>(i2)) += dense_[key] * w;
          }
        }
      }
    } else {
      for (std::size_t e = 0; e < keys_.size(); ++e) {
        std::uint64_t rest = keys_[e];
        const auto i1 = static_cast<Index>(rest % n);
        rest /= n;
        const auto i2 = static_cast<Index>(rest % n);
        rest /= n;
        double w = vals_[e];
        for (int j = 2; j < order_; ++j) {
          w *= x[static_cast<Index>(rest % n)];
          rest /= n;
        }
        M(i1, i2) += w;
      }
    }
    return ContractionMatrix(std::move(M));
  }

  /// ||Px^{m-1} - x||_1; zero exactly at a fixed point.
  double residual(const ProbVector& x) const {
    return (apply(x).values() - x.values()).lpNorm<1>();
  }

  /// Checks entry nonnegativity and unit column sums (tolerance kColumnTol).
  ValidationResult validate() const {
    ValidationResult result;
    for_each_entry([&](std::span<const std::uint32_t> index, double v) {
      if (v < 0.0) {
        result.violations.push_back(
            {Violation::Kind::NegativeEntry,
             std::vector<std::uint32_t>(index.begin(), index.end()), v});
      }
    });
    visit_columns([&](std::uint64_t tail, std::span<const double> col) {
      double sum = 0.0;
      for (double v : col) sum += v;
      if (std::abs(sum - 1.0) > kColumnTol) {
        result.violations.push_back(
            {Violation::Kind::ColumnSum, decode_tail(tail), sum});
      }
    });
    return result;
  }

  /// Returns a copy with every column rescaled to unit sum.
  /// Throws if some column has no positive mass to rescale.
  StochasticTensor repaired() const {
    StochasticTensor t(*this);
    if (is_dense()) {
      const auto n = static_cast<std::uint64_t>(dim_);
      for (std::uint64_t c = 0; c * n < t.dense_.size(); ++c) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) sum += t.dense_[c * n + i];
        if (!(sum > 0.0)) {
          throw std::domain_error("StochasticTensor::repaired: column " +
                                  std::to_string(c) + " has no mass");
        }
        for (std::uint64_t i = 0; i < n; ++i) t.dense_[c * n + i] /= sum;
      }
    } else {
      const auto n = static_cast<std::uint64_t>(dim_);
      std::size_t e = 0;
      while (e < t.keys_.size()) {
        const std::uint64_t tail = t.keys_[e] / n;
        std::size_t end = e;
        double sum = 0.0;
        while (end < t.keys_.size() && t.keys_[end] / n == tail) {
          sum += t.vals_[end];
          ++end;
        }
        if (!(sum > 0.0)) {
          throw std::domain_error("StochasticTensor::repaired: column " +
                                  std::to_string(tail) + " has no mass");
        }
        for (std::size_t k = e; k < end; ++k) t.vals_[k] /= sum;
        e = end;
      }
      // absent columns stay absent; validate() reports them either way
    }
    return t;
  }

  /// Number of index tuples, n^m.
  std::uint64_t total_size() const {
    std::uint64_t total = 1;
    for (int j = 0; j < order_; ++j) total *= static_cast<std::uint64_t>(dim_);
    return total;
  }

  std::uint64_t column_count() const { return total_size() / static_cast<std::uint64_t>(dim_); }

  /// Visits every column of the tensor in tail order as a dense span of length
  /// dim. Sparse storage materializes each column on the fly.
  template <class F>
  void visit_columns(F&& f) const {
    const auto n = static_cast<std::uint64_t>(dim_);
    const std::uint64_t cols = column_count();
    if (is_dense()) {
      for (std::uint64_t c = 0; c < cols; ++c) {
        f(c, std::span<const double>(dense_.data() + c * n, n));
      }
    } else {
      std::vector<double> col(static_cast<std::size_t>(n));
      std::size_t e = 0;
      for (std::uint64_t c = 0; c < cols; ++c) {
        std::fill(col.begin(), col.end(), 0.0);
        while (e < keys_.size() && keys_[e] / n == c) {
          col[static_cast<std::size_t>(keys_[e] % n)] = vals_[e];
          ++e;
        }
        f(c, std::span<const double>(col));
      }
    }
  }

 private:
  StochasticTensor(int order, int dim) : order_(order), dim_(dim) {
    if (order < 2) throw std::invalid_argument("StochasticTensor: order must be >= 2");
    if (dim < 1) throw std::invalid_argument("StochasticTensor: dim must be >= 1");
    // keys are linear indices with i1 fastest; guard against overflow
    const double bits = static_cast<double>(order) * std::log2(static_cast<double>(dim));
    if (bits >= 62.0) {
      throw std::invalid_argument("StochasticTensor: dim^order exceeds index range");
    }
  }

  void check_dim(const ProbVector& x) const {
    if (x.size() != dim_) {
      throw std::invalid_argument("StochasticTensor: vector dimension " +
                                  std::to_string(x.size()) + " does not match tensor dim " +
                                  std::to_string(dim_));
    }
  }

  // key = i1 + n*(i2 + n*(i3 + ...)); equivalently tail*n + i1 with
  // tail = i2 + n*i3 + ..., so sorting by key groups entries by column.
  std::uint64_t key_of(std::span<const std::uint32_t> index) const {
    if (index.size() != static_cast<std::size_t>(order_)) {
      throw std::invalid_argument("StochasticTensor: index tuple has wrong arity");
    }
    std::uint64_t key = 0;
    for (int j = order_ - 1; j >= 0; --j) {
      if (index[static_cast<std::size_t>(j)] >= static_cast<std::uint32_t>(dim_)) {
        throw std::out_of_range("StochasticTensor: index " +
                                std::to_string(index[static_cast<std::size_t>(j)]) +
                                " out of range for dim " + std::to_string(dim_));
      }
      key = key * static_cast<std::uint64_t>(dim_) + index[static_cast<std::size_t>(j)];
    }
    return key;
  }

  void decode_key(std::uint64_t key, std::vector<std::uint32_t>& out) const {
    const auto n = static_cast<std::uint64_t>(dim_);
    for (int j = 0; j < order_; ++j) {
      out[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(key % n);
      key /= n;
    }
  }

  std::vector<std::uint32_t> decode_tail(std::uint64_t tail) const {
    const auto n = static_cast<std::uint64_t>(dim_);
    std::vector<std::uint32_t> out(static_cast<std::size_t>(order_ - 1));
    for (int j = 0; j + 1 < order_; ++j) {
      out[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(tail % n);
      tail /= n;
    }
    return out;
  }

  int order_ = 0;
  int dim_ = 0;
  std::vector<double> dense_;        // i1 fastest, column-contiguous
  std::vector<std::uint64_t> keys_;  // sorted linear keys (sparse)
  std::vector<double> vals_;
};

inline ValidationResult validate(const StochasticTensor& t) { return t.validate(); }
inline ProbVector apply(const StochasticTensor& t, const ProbVector& x) { return t.apply(x); }
inline ContractionMatrix apply_matrix(const StochasticTensor& t, const ProbVector& x) {
  return t.apply_matrix(x);
}
inline double residual(const StochasticTensor& t, const ProbVector& x) { return t.residual(x); }

}  // namespace homc
