#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sjlt {

using DenseVector = std::vector<double>;

struct SparseEntry {
  std::uint64_t index;
  double value;
  bool operator==(const SparseEntry&) const = default;
};

/// x in R^dim stored as (index, value) pairs with strictly increasing indices,
/// finite values and no stored zeros.
class SparseVector {
 public:
  /// Throws std::invalid_argument on dim == 0, out-of-range or non-increasing
  /// indices, or non-finite values. Explicit zeros are dropped.
  SparseVector(std::uint64_t dim, std::vector<SparseEntry> entries);

  /// The all-zero vector.
  explicit SparseVector(std::uint64_t dim) : SparseVector(dim, {}) {}

  static SparseVector from_dense(std::span<const double> values);

  std::uint64_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  std::span<const SparseEntry> entries() const noexcept { return entries_; }

  double norm2() const;
  DenseVector to_dense() const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::uint64_t dim_;
  std::vector<SparseEntry> entries_;
};

/// alpha*x + beta*z. Throws std::invalid_argument on a dimension mismatch.
SparseVector linear_combination(double alpha, const SparseVector& x, double beta, const SparseVector& z);

double norm2(std::span<const double> v);

}  // namespace sjlt
