#pragma once

// Sparse Johnson-Lindenstrauss transform M = H P.
//
// P duplicates every coordinate c times and scales by 1/sqrt(c); replica r of
// coordinate i lands at flat index i*c + r. H is k x (c d) with one signed
// nonzero per column: column j holds zeta(j) in row h(j). Both h and zeta come
// from polynomial hash families, so M never has to be stored and Mx costs
// O(c nnz(x)) hash evaluations.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sjlt/kwise.hpp"
#include "sjlt/sparse_vector.hpp"
#include "sjlt/stats.hpp"

namespace sjlt {

/// Multipliers in m = ceil(kappa.m ln(1/delta)), k = ceil(kappa.k m / eps^2),
/// c = ceil(kappa.c (m / F(m))^2 / eps).
struct Kappa {
  double m = 1.0;
  double k = 4.0;
  double c = 2.0;
};

struct TransformSpec {
  std::uint64_t d = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t c = 0;
  double F_of_m = 1.0;
  std::uint64_t bucket_seed = 0;
  std::uint64_t sign_seed = 0;
  std::size_t independence_degree = 0;
  Kappa kappa;
  std::vector<std::string> warnings;
};

/// max(1, ln m / ln ln m) for m >= 3, and 1 below that.
double F_of_m(std::uint64_t m);

/// Natural logarithms throughout. `independence_degree` defaults to 2m.
/// Throws std::invalid_argument for d == 0, epsilon or delta outside (0, 1),
/// non-positive kappa, k < m, or a replica space c*d that does not fit the field.
/// A violated epsilon <= ln(1/delta)^-2 only adds a warning.
TransformSpec derive_spec(std::uint64_t d, double epsilon, double delta, std::uint64_t bucket_seed,
                          std::uint64_t sign_seed, Kappa kappa = {},
                          std::optional<std::size_t> independence_degree = std::nullopt);

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Column-compressed view of M: column i lists its c replica entries
/// (row, value) in replica order. Entries in the same row are not merged.
struct ReplicaColumns {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::vector<std::pair<std::uint64_t, double>>> columns;
};

class SparseJL {
 public:
  explicit SparseJL(const TransformSpec& spec);

  /// Explicit hash families; k is taken from `buckets.range()`.
  SparseJL(std::uint64_t d, std::uint64_t c, KWiseGenerator buckets, KWiseGenerator signs);

  std::uint64_t d() const noexcept { return d_; }
  std::uint64_t k() const noexcept { return buckets_.range(); }
  std::uint64_t c() const noexcept { return c_; }

  std::uint64_t bucket(std::uint64_t flat) const { return buckets_.bucket(flat); }
  int sign(std::uint64_t flat) const { return signs_.sign(flat); }

  /// y = M x, accumulated in increasing flat-index order.
  DenseVector apply(const SparseVector& x) const;

  /// Dense k x d matrix (row-major rows of length d). Small instances only.
  std::vector<DenseVector> materialize() const;
  ReplicaColumns replica_columns() const;

 private:
  std::uint64_t d_;
  std::uint64_t c_;
  double scale_;
  KWiseGenerator buckets_;
  KWiseGenerator signs_;
};

DenseVector apply(const TransformSpec& spec, const SparseVector& x);

/// One output per input, rows processed in parallel.
std::vector<DenseVector> apply_batch(const TransformSpec& spec, std::span<const SparseVector> xs);

enum class BaselineKind { rademacher, gaussian };

/// y = A x / sqrt(k) with A[t][i] i.i.d. +-1 or N(0,1), a pure function of
/// (seed, i, t). Only the columns of nonzero x_i are generated.
DenseVector apply_dense_baseline(BaselineKind kind, std::uint64_t seed, std::uint64_t k, const SparseVector& x);

/// ||M x|| / ||x||. Throws std::invalid_argument for the zero vector.
double distortion_trial(const TransformSpec& spec, const SparseVector& x);

struct DistortionReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;  // ratio outside [1 - eps, 1 + eps]
  double failure_rate = 0.0;
  Interval wilson;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Trial t uses seeds (bucket_seed + t, sign_seed + t). Runs in parallel;
/// the report does not depend on the worker count.
DistortionReport distortion_bench(const TransformSpec& spec, const SparseVector& x, std::uint64_t trials);

/// Same experiment for the dense baselines; trial t uses seed + t and the
/// target dimension spec.k.
DistortionReport baseline_distortion_bench(BaselineKind kind, const TransformSpec& spec, const SparseVector& x,
                                           std::uint64_t trials);

/// Folds per-trial ratios (in trial order) into a report.
DistortionReport summarize_ratios(std::span<const double> ratios, double epsilon);

}  // namespace sjlt
