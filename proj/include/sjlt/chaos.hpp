#pragma once

// The order-2 chaos Z = sum_t sum_{i != j} x_i x_j zeta_i zeta_j 1{H(i) = H(j) = t}
// (ordered pairs, so every colliding unordered pair counts twice). For the
// sparse transform, ||M x||^2 = ||x||^2 + Z evaluated on the duplicated vector.
//
// Exact oracles:
//   exact_moment            averages Z^{2m} over all k^d 2^d assignments;
//   graph_expansion_moment  sums 2^{2m} WEIGHT(G(S)) over all pair sequences.
// The two agree exactly; moment_bound_rhs upper-bounds both.

#include <cstdint>
#include <span>
#include <vector>

#include "sjlt/errors.hpp"
#include "sjlt/graphs.hpp"
#include "sjlt/sparse_vector.hpp"
#include "sjlt/stats.hpp"
#include "sjlt/transform.hpp"

namespace sjlt::chaos {

using Real = long double;
using graphs::BigCount;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
inline constexpr double kUnitTolerance = 1e-12;

/// Unit vector x in R^d with ||x||_inf <= infinity_bound, hashed into k buckets.
class ChaosInstance {
 public:
  /// Throws std::invalid_argument when k == 0, x is empty or not a unit
  /// vector, or an entry exceeds infinity_bound (both to 1e-12).
  ChaosInstance(std::uint64_t k, DenseVector x, double infinity_bound);

  /// infinity_bound = ||x||_inf.
  ChaosInstance(std::uint64_t k, DenseVector x);

  std::uint64_t d() const noexcept { return x_.size(); }
  std::uint64_t k() const noexcept { return k_; }
  std::span<const double> x() const noexcept { return x_; }
  double infinity_bound() const noexcept { return bound_; }

  /// 1 / infinity_bound^2, the largest C with ||x||_inf <= C^-1/2.
  double max_C() const noexcept { return 1.0 / (static_cast<double>(bound_) * bound_); }

 private:
  std::uint64_t k_;
  DenseVector x_;
  double bound_;
};

struct RandomnessAssignment {
  std::vector<std::uint64_t> H;  // bucket of each coordinate, in [0, k)
  std::vector<int> zeta;         // +1 or -1
};

/// Direct double sum over ordered pairs i != j.
Real compute_Z(const ChaosInstance& inst, const RandomnessAssignment& r);

/// sum_t (S_t^2 - Q_t) with S_t = sum_{H(i)=t} zeta_i x_i and
/// Q_t = sum_{H(i)=t} x_i^2. O(d + k); x need not be a unit vector.
Real compute_Z_bucketed(std::span<const double> x, std::span<const std::uint64_t> H, std::span<const int> zeta,
                        std::uint64_t k);

/// Average of Z^power over all k^d 2^d fully independent assignments.
/// Parallel over a fixed partition of the bucket assignments; the result does
/// not depend on the worker count. Throws BudgetExceeded past `budget`.
Real exact_raw_moment(const ChaosInstance& inst, int power, std::uint64_t budget = kDefaultBudget);

/// E(Z^{2m}) by full enumeration.
Real exact_moment(const ChaosInstance& inst, int m, std::uint64_t budget = kDefaultBudget);

/// 2^{2m} * sum over all sequences S of 2m pairs over [d] of WEIGHT(G(S)).
/// Throws BudgetExceeded when (d(d-1)/2)^{2m} > budget.
Real graph_expansion_moment(const ChaosInstance& inst, int m, std::uint64_t budget = kDefaultBudget);

/// |W_{[i],t}| for i = 1..2m; table[i][t].
struct ClassTable {
  int m = 0;
  std::vector<std::vector<BigCount>> counts;
};
ClassTable class_table(int m, std::uint64_t budget = graphs::kDefaultEnumerationBudget);

/// 2^{2m} sum_{i=1}^{2m} (1/i!) sum_{t=1}^{floor(i/2)} |W_{[i],t}| k^-(i-t) C^-(2m-i).
Real moment_bound_rhs(const ClassTable& table, std::uint64_t k, double C);
Real moment_bound_rhs(const ChaosInstance& inst, int m, double C,
                      std::uint64_t budget = graphs::kDefaultEnumerationBudget);

/// Hash families used by the sampling estimators.
struct SamplingParams {
  std::uint64_t c = 1;  // replicas per coordinate
  std::uint64_t k = 1;
  double epsilon = 0.0;  // tail threshold, |Z| >= epsilon
  std::uint64_t bucket_seed = 0;
  std::uint64_t sign_seed = 0;
  std::size_t independence_degree = 2;

  static SamplingParams from_spec(const TransformSpec& spec);
};

/// Z for x duplicated c times and scaled by 1/sqrt(c), with H and zeta drawn
/// from generators seeded (bucket_seed, sign_seed) over flat index i*c + r.
Real sample_Z(const SamplingParams& p, std::span<const double> x);

struct MonteCarloMoment {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Mean of Z^{2m} over trials (trial t offsets both seeds by t), with c = 1
/// and k = inst.k(). A degree of at least 4m makes every monomial of Z^{2m}
/// see fully independent values (up to the modulo-reduction bias).
MonteCarloMoment monte_carlo_moment(const ChaosInstance& inst, int m, std::uint64_t trials,
                                    std::uint64_t bucket_seed, std::uint64_t sign_seed,
                                    std::size_t independence_degree);

struct TailEstimate {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;  // |Z| >= epsilon
  double failure_rate = 0.0;
  Interval wilson;
};

/// Empirical P(|Z| >= epsilon) for the preconditioned x. Requires a unit x
/// and trials >= 1000. Trial t offsets both seeds by t.
TailEstimate tail_estimate(const SamplingParams& p, std::span<const double> x, std::uint64_t trials);
TailEstimate tail_estimate(const TransformSpec& spec, std::span<const double> x, std::uint64_t trials);

struct MomentReport {
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  int m = 0;
  Real exact_moment = 0;
  Real graph_expansion_moment = 0;
  MonteCarloMoment monte_carlo;
  Real rhs_bound = 0;
  double C = 0;
};

MomentReport moment_report(const ChaosInstance& inst, int m, double C, std::uint64_t mc_trials,
                           std::uint64_t mc_seed, std::size_t independence_degree,
                           std::uint64_t budget = kDefaultBudget);

}  // namespace sjlt::chaos
