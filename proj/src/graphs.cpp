#include "sjlt/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "sjlt/parallel.hpp"

namespace sjlt::graphs {

namespace {

constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

std::uint64_t full_mask(int i) { return i >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << i) - 1; }

void check_vertex(int v, std::size_t n) {
  if (v < 1 || static_cast<std::size_t>(v) > n) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside x of length " + std::to_string(n));
  }
}

void check_class_args(int i, int m) {
  if (i < 1 || i > kMaxVertices) throw std::invalid_argument("vertex count i must lie in [1, 64]");
  if (m < 1) throw std::invalid_argument("m must be positive");
}

// Components of the sequence's multigraph by breadth-first search over an
// adjacency matrix; kept separate from the union-find kernel on purpose.
std::uint64_t bfs_component(std::span<const Pair> edges, int start) {
  std::uint64_t seen = bit(start);
  std::vector<int> frontier{start};
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    for (const Pair& e : edges) {
      int w = e.a == v ? e.b : (e.b == v ? e.a : 0);
      if (w != 0 && !(seen & bit(w))) {
        seen |= bit(w);
        frontier.push_back(w);
      }
    }
  }
  return seen;
}

// All collections of u pairwise-disjoint 2-subsets of [i], each collection as
// an ascending list of pair masks.
void collect_matchings(int i, int u, int from, std::uint64_t used, std::vector<std::uint64_t>& cur,
                       std::set<std::vector<std::uint64_t>>& out) {
  if (static_cast<int>(cur.size()) == u) {
    std::vector<std::uint64_t> sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    out.insert(std::move(sorted));
    return;
  }
  for (int a = from; a <= i; ++a) {
    if (used & bit(a)) continue;
    for (int b = a + 1; b <= i; ++b) {
      if (used & bit(b)) continue;
      cur.push_back(bit(a) | bit(b));
      collect_matchings(i, u, a + 1, used | bit(a) | bit(b), cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

PairSequence::PairSequence(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty() || pairs_.size() % 2 != 0) {
    throw std::invalid_argument("PairSequence: length must be even and positive");
  }
  for (const Pair& p : pairs_) {
    if (p.a < 1 || p.a >= p.b) throw std::invalid_argument("PairSequence: each pair needs 1 <= a < b");
  }
}

int PairSequence::max_vertex() const noexcept {
  int v = 0;
  for (const Pair& p : pairs_) v = std::max(v, p.b);
  return v;
}

bool Multigraph::all_degrees_even() const {
  return std::all_of(degree.begin(), degree.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

void DisjointSets::reset(std::size_t n) {
  parent_.resize(n);
  size_.assign(n, 1);
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t v) {
  std::size_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    std::size_t next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

Multigraph build_multigraph(const PairSequence& s) {
  Multigraph g;
  g.edges.assign(s.pairs().begin(), s.pairs().end());
  for (const Pair& e : g.edges) {
    ++g.degree[e.a];
    ++g.degree[e.b];
  }
  for (const auto& [v, deg] : g.degree) g.vertices.push_back(v);

  DisjointSets uf(static_cast<std::size_t>(s.max_vertex()) + 1);
  for (const Pair& e : g.edges) uf.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b));
  std::map<std::size_t, std::size_t> slot;  // root -> component index
  for (int v : g.vertices) {
    auto [it, fresh] = slot.try_emplace(uf.find(static_cast<std::size_t>(v)), g.components.size());
    if (fresh) g.components.emplace_back();
    g.components[it->second].push_back(v);
  }
  return g;
}

Real weight(const Multigraph& g, std::span<const double> x, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("weight: k must be positive");
  for (int v : g.vertices) check_vertex(v, x.size());
  Real total = 1.0L;
  for (const auto& comp : g.components) {
    Real w = 1.0L;
    for (int v : comp) {
      const int deg = g.degree.at(v);
      if (deg % 2 != 0) return 0.0L;
      w *= std::pow(static_cast<Real>(x[v - 1]), deg);
    }
    w /= std::pow(static_cast<Real>(k), static_cast<Real>(comp.size() - 1));
    total *= w;
  }
  return total;
}

Real squares(std::span<const int> vertices, std::span<const double> x) {
  Real p = 1.0L;
  for (int v : vertices) {
    check_vertex(v, x.size());
    p *= static_cast<Real>(x[v - 1]) * x[v - 1];
  }
  return p;
}

Real exact_ERS(const PairSequence& s, std::span<const double> x, std::uint64_t k, std::uint64_t d,
               std::uint64_t budget) {
  if (k == 0 || d == 0) throw std::invalid_argument("exact_ERS: k and d must be positive");
  if (x.size() != d) throw std::invalid_argument("exact_ERS: x must have length d");
  if (static_cast<std::uint64_t>(s.max_vertex()) > d) throw std::out_of_range("exact_ERS: sequence vertex exceeds d");
  // 2^d k^d with overflow-safe comparison against the budget
  long double total = std::pow(2.0L * static_cast<long double>(k), static_cast<long double>(d));
  if (total > static_cast<long double>(budget)) {
    throw BudgetExceeded("exact_ERS: 2^d k^d = " + std::to_string(static_cast<double>(total)) + " assignments");
  }
  const std::uint64_t n_h = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(k), d)));
  const std::uint64_t n_z = std::uint64_t{1} << d;
  std::vector<std::uint64_t> H(d);
  Real sum = 0.0L;
  for (std::uint64_t h = 0; h < n_h; ++h) {
    for (std::uint64_t q = h, v = 0; v < d; ++v, q /= k) H[v] = q % k;
    Real collide = 1.0L;
    for (const Pair& e : s.pairs()) {
      if (H[e.a - 1] != H[e.b - 1]) {
        collide = 0.0L;
        break;
      }
    }
    if (collide == 0.0L) continue;
    for (std::uint64_t z = 0; z < n_z; ++z) {
      Real r = 1.0L;
      for (const Pair& e : s.pairs()) {
        const int sa = (z >> (e.a - 1)) & 1 ? -1 : 1;
        const int sb = (z >> (e.b - 1)) & 1 ? -1 : 1;
        r *= static_cast<Real>(x[e.a - 1]) * x[e.b - 1] * (sa * sb);
      }
      sum += r;
    }
  }
  return sum / (static_cast<Real>(n_h) * static_cast<Real>(n_z));
}

std::vector<Pair> all_pairs(int n) {
  std::vector<Pair> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) out.push_back({a, b});
  return out;
}

BigCount sequence_count(int n, int m) {
  const BigCount P = n < 2 ? 0 : BigCount(n) * (n - 1) / 2;
  return boost::multiprecision::pow(P, static_cast<unsigned>(2 * m));
}

void require_enumerable(int n, int m, std::uint64_t budget) {
  const BigCount total = sequence_count(n, m);
  if (total > budget) {
    throw BudgetExceeded("enumeration of " + total.str() + " sequences exceeds the budget of " +
                         std::to_string(budget));
  }
}

Shape classify(std::span<const Pair> edges) {
  Shape s;
  std::uint64_t parity = 0;
  std::uint8_t parent[kMaxVertices + 1];
  for (const Pair& e : edges) {
    s.vertex_mask |= bit(e.a) | bit(e.b);
    parity ^= bit(e.a) ^ bit(e.b);
  }
  s.all_even = parity == 0;
  for (std::uint64_t mask = s.vertex_mask; mask; mask &= mask - 1) {
    const int v = std::countr_zero(mask) + 1;
    parent[v] = static_cast<std::uint8_t>(v);
  }
  auto find = [&](int v) {
    int root = v;
    while (parent[root] != root) root = parent[root];
    while (parent[v] != root) {
      int next = parent[v];
      parent[v] = static_cast<std::uint8_t>(root);
      v = next;
    }
    return root;
  };
  for (const Pair& e : edges) {
    int ra = find(e.a), rb = find(e.b);
    if (ra != rb) parent[std::max(ra, rb)] = static_cast<std::uint8_t>(std::min(ra, rb));
  }
  // Roots are the smallest vertex of each component, so ascending roots give
  // components ordered by smallest vertex.
  int slot_of_root[kMaxVertices + 1];
  for (std::uint64_t mask = s.vertex_mask; mask; mask &= mask - 1) {
    const int v = std::countr_zero(mask) + 1;
    const int r = find(v);
    if (r == v) slot_of_root[v] = s.n_components++;
    s.component_masks[slot_of_root[r]] |= bit(v);
  }
  return s;
}

int size_two_components(const Shape& s) {
  int n = 0;
  for (int c = 0; c < s.n_components; ++c) n += std::popcount(s.component_masks[c]) == 2;
  return n;
}

std::vector<BigCount> class_histogram(int i, int m, std::uint64_t budget) {
  check_class_args(i, m);
  require_enumerable(i, m, budget);
  const std::vector<Pair> pairs = all_pairs(i);
  const std::size_t P = pairs.size();
  const std::uint64_t full = full_mask(i);
  std::vector<std::vector<std::uint64_t>> partial(P, std::vector<std::uint64_t>(i + 1, 0));
  const auto n = static_cast<std::int64_t>(P);
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::worker_count())
  for (std::int64_t first = 0; first < n; ++first) {
    auto& hist = partial[first];
    for_each_sequence_with_first(pairs, 2 * m, static_cast<std::size_t>(first), [&](std::span<const Pair> seq) {
      const Shape s = classify(seq);
      if (s.all_even && s.vertex_mask == full) ++hist[s.n_components];
    });
  }
  std::vector<BigCount> out(i + 1, 0);
  for (const auto& hist : partial)
    for (int t = 0; t <= i; ++t) out[t] += hist[t];
  return out;
}

ClassCount enumerate_W(int i, int t, int m, std::uint64_t budget) {
  if (t < 1) throw std::invalid_argument("enumerate_W: t must be positive");
  ClassCount cc{i, t, m, 0};
  const auto hist = class_histogram(i, m, budget);
  if (t <= i) cc.count = hist[t];
  return cc;
}

BigCount count_W_on(std::span<const int> Q, int d, int t, int m, std::uint64_t budget) {
  check_class_args(d, m);
  require_enumerable(d, m, budget);
  std::uint64_t target = 0;
  for (int v : Q) {
    if (v < 1 || v > d) throw std::out_of_range("count_W_on: vertex outside [d]");
    target |= bit(v);
  }
  const std::vector<Pair> pairs = all_pairs(d);
  std::vector<std::uint64_t> partial(pairs.size(), 0);
  const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::worker_count())
  for (std::int64_t first = 0; first < n; ++first) {
    for_each_sequence_with_first(pairs, 2 * m, static_cast<std::size_t>(first), [&](std::span<const Pair> seq) {
      const Shape s = classify(seq);
      if (s.all_even && s.vertex_mask == target && s.n_components == t) ++partial[first];
    });
  }
  BigCount total = 0;
  for (std::uint64_t c : partial) total += c;
  return total;
}

BigCount binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigCount out = 1;
  for (int j = 1; j <= r; ++j) out = out * (n - r + j) / j;
  return out;
}

BigCount factorial(int n) {
  BigCount out = 1;
  for (int j = 2; j <= n; ++j) out *= j;
  return out;
}

StructReport check_structidentities(int i, int t, int m, std::uint64_t budget) {
  check_class_args(i, m);
  if (t < 1) throw std::invalid_argument("check_structidentities: t must be positive");
  require_enumerable(i, m, budget);

  StructReport rep;
  rep.i = i;
  rep.t = t;
  rep.m = m;
  rep.applicable = 3 * t > i;
  rep.u = rep.applicable ? 3 * t - i : 0;
  const int u = rep.u;

  std::set<std::vector<std::uint64_t>> family;
  if (rep.applicable && 2 * u <= i) {
    std::vector<std::uint64_t> cur;
    collect_matchings(i, u, 1, 0, cur, family);
  }
  rep.q_count = family.size();
  rep.q_bound = rep.applicable ? binomial(i, 2 * u) * factorial(2 * u) / factorial(u) : BigCount(0);
  rep.q_bound_holds = rep.q_count <= rep.q_bound;

  struct Tally {
    std::uint64_t members = 0, sparse = 0, bad_size_two = 0, bad_sparse = 0, bad_concrete = 0;
    int min_size_two = -1;
  };
  const std::vector<Pair> pairs = all_pairs(i);
  const std::uint64_t full = full_mask(i);
  std::vector<Tally> partial(pairs.size());
  const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::worker_count())
  for (std::int64_t first = 0; first < n; ++first) {
    Tally& tl = partial[first];
    for_each_sequence_with_first(pairs, 2 * m, static_cast<std::size_t>(first), [&](std::span<const Pair> seq) {
      const Shape s = classify(seq);
      if (!s.all_even || s.vertex_mask != full) return;
      const int s2 = size_two_components(s);
      const bool in_sparse = rep.applicable && s2 >= u;
      if (s.n_components == t) {
        ++tl.members;
        tl.min_size_two = tl.min_size_two < 0 ? s2 : std::min(tl.min_size_two, s2);
        if (rep.applicable && s2 < u) ++tl.bad_size_two;
        if (rep.applicable && !in_sparse) ++tl.bad_sparse;
      }
      if (!in_sparse) return;
      ++tl.sparse;
      // Q = the first u size-two components; S must lie in CONCRETE(Q).
      std::vector<std::uint64_t> q;
      for (int c = 0; c < s.n_components && static_cast<int>(q.size()) < u; ++c) {
        if (std::popcount(s.component_masks[c]) == 2) q.push_back(s.component_masks[c]);
      }
      std::sort(q.begin(), q.end());
      bool covered = family.count(q) == 1;
      for (std::uint64_t pm : q) {
        const int lo = std::countr_zero(pm) + 1;
        covered = covered && bfs_component(seq, lo) == pm;
      }
      if (!covered) ++tl.bad_concrete;
    });
  }
  for (const Tally& tl : partial) {
    rep.members += tl.members;
    rep.sparse_members += tl.sparse;
    rep.violations_size_two += tl.bad_size_two;
    rep.violations_sparse += tl.bad_sparse;
    rep.violations_concrete += tl.bad_concrete;
    if (tl.min_size_two >= 0) {
      rep.min_size_two = rep.min_size_two < 0 ? tl.min_size_two : std::min(rep.min_size_two, tl.min_size_two);
    }
  }
  return rep;
}

}  // namespace sjlt::graphs
