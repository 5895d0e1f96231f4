#pragma once

// Multigraphs of pair sequences.
//
// A sequence S of 2m pairs (a, b), 1 <= a < b <= d, picks one monomial of
// Z^{2m}; G(S) is the multigraph with one edge per pair. E(R_S) vanishes
// unless every vertex of G(S) has even degree, and otherwise equals
// WEIGHT(G(S)) = prod over components of k^-(|V_c| - 1) prod_v x_v^deg(v).
//
// W_{[i],t} is the set of sequences whose multigraph covers exactly the
// vertices 1..i, has t components and only even degrees. Counts are exact,
// obtained by walking all (i(i-1)/2)^{2m} sequences in lexicographic order.
//
// Vertices are 1-based throughout this module; vertex v reads x[v - 1].

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sjlt/errors.hpp"

namespace sjlt::graphs {

using Real = long double;
using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000'000;
inline constexpr std::uint64_t kDefaultAssignmentBudget = 100'000'000;
/// Vertex labels are packed into 64-bit masks by the enumeration kernels.
inline constexpr int kMaxVertices = 64;

struct Pair {
  int a;
  int b;
  bool operator==(const Pair&) const = default;
  auto operator<=>(const Pair&) const = default;
};

class PairSequence {
 public:
  /// Throws std::invalid_argument unless every pair has 1 <= a < b and the
  /// length is even and positive.
  explicit PairSequence(std::vector<Pair> pairs);

  std::span<const Pair> pairs() const noexcept { return pairs_; }
  int m() const noexcept { return static_cast<int>(pairs_.size() / 2); }
  int max_vertex() const noexcept;

 private:
  std::vector<Pair> pairs_;
};

struct Multigraph {
  std::vector<int> vertices;             // ascending, positive degree only
  std::vector<Pair> edges;               // in sequence order, with multiplicity
  std::map<int, int> degree;             // vertex -> degree
  std::vector<std::vector<int>> components;  // ascending within, ordered by smallest vertex

  bool all_degrees_even() const;
};

/// Disjoint sets with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) { reset(n); }
  void reset(std::size_t n);
  std::size_t find(std::size_t v);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t v) { return size_[find(v)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

Multigraph build_multigraph(const PairSequence& s);

/// Product over components of (0 if some degree is odd, else
/// k^-(|V_c| - 1) prod x_v^deg v). Throws std::out_of_range if a vertex
/// exceeds x.size().
Real weight(const Multigraph& g, std::span<const double> x, std::uint64_t k);

/// prod_{v in V} x_v^2 (1 for the empty set). Throws std::out_of_range.
Real squares(std::span<const int> vertices, std::span<const double> x);

/// E(R_S) by enumerating all 2^d k^d sign and bucket assignments.
/// Throws BudgetExceeded past `budget` assignments.
Real exact_ERS(const PairSequence& s, std::span<const double> x, std::uint64_t k, std::uint64_t d,
               std::uint64_t budget = kDefaultAssignmentBudget);

/// All pairs (a, b) with 1 <= a < b <= n in lexicographic order.
std::vector<Pair> all_pairs(int n);

/// (n(n-1)/2)^{2m}: the number of sequences of 2m pairs over [n].
BigCount sequence_count(int n, int m);

/// Throws BudgetExceeded when sequence_count(n, m) > budget.
void require_enumerable(int n, int m, std::uint64_t budget);

/// Calls f(span<const Pair>) for every sequence of `length` pairs drawn from
/// `pairs` whose first element is pairs[first], in lexicographic order.
template <class F>
void for_each_sequence_with_first(std::span<const Pair> pairs, int length, std::size_t first, F&& f) {
  const std::size_t P = pairs.size();
  if (length <= 0 || first >= P) return;
  std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
  std::vector<Pair> seq(static_cast<std::size_t>(length), pairs[0]);
  digits[0] = first;
  seq[0] = pairs[first];
  while (true) {
    f(std::span<const Pair>(seq));
    int pos = length - 1;
    while (pos >= 1 && digits[pos] + 1 == P) {
      digits[pos] = 0;
      seq[pos] = pairs[0];
      --pos;
    }
    if (pos < 1) return;
    ++digits[pos];
    seq[pos] = pairs[digits[pos]];
  }
}

/// Allocation-free classification used by the enumeration kernels.
struct Shape {
  std::uint64_t vertex_mask = 0;  // bit v-1 set for every vertex of positive degree
  bool all_even = true;
  int n_components = 0;
  std::uint64_t component_masks[kMaxVertices / 2] = {};  // ordered by smallest vertex
};

/// Requires all vertices <= kMaxVertices.
Shape classify(std::span<const Pair> edges);

struct ClassCount {
  int i = 0;
  int t = 0;
  int m = 0;
  BigCount count = 0;
};

/// |W_{[i],t}| for every t: entry t of the result (size i + 1) counts the
/// sequences of 2m pairs over [i] with Ver = [i], even degrees and t
/// components. Partitioned over the first pair and run in parallel.
std::vector<BigCount> class_histogram(int i, int m, std::uint64_t budget = kDefaultEnumerationBudget);

ClassCount enumerate_W(int i, int t, int m, std::uint64_t budget = kDefaultEnumerationBudget);

/// |W_{Q,t}| with sequences drawn from all pairs over [d] (Q subset of [d]).
BigCount count_W_on(std::span<const int> Q, int d, int t, int m, std::uint64_t budget = kDefaultEnumerationBudget);

/// Number of components of exactly two vertices.
int size_two_components(const Shape& s);

/// Outcome of checking the size-2 component facts over W_{[i],t}.
struct StructReport {
  int i = 0;
  int t = 0;
  int m = 0;
  bool applicable = false;  // 3t > i
  int u = 0;                // 3t - i when applicable
  BigCount members = 0;     // |W_{[i],t}|
  int min_size_two = -1;    // over members; -1 when W is empty
  BigCount sparse_members = 0;  // |SPARSE_u|
  BigCount violations_size_two = 0;
  BigCount violations_sparse = 0;
  BigCount violations_concrete = 0;
  BigCount q_count = 0;  // enumerated collections of u disjoint vertex pairs of [i]
  BigCount q_bound = 0;  // C(i, 2u) (2u)! / u!
  bool q_bound_holds = true;

  bool ok() const {
    return violations_size_two == 0 && violations_sparse == 0 && violations_concrete == 0 && q_bound_holds;
  }
};

StructReport check_structidentities(int i, int t, int m, std::uint64_t budget = kDefaultEnumerationBudget);

BigCount binomial(int n, int r);
BigCount factorial(int n);

}  // namespace sjlt::graphs
