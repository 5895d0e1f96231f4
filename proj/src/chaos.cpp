#include "sjlt/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sjlt/kwise.hpp"
#include "sjlt/parallel.hpp"
#include "sjlt/random.hpp"

namespace sjlt::chaos {

namespace {

std::uint64_t assignment_count_or_throw(std::uint64_t d, std::uint64_t k, std::uint64_t budget) {
  const long double total = std::pow(2.0L * static_cast<long double>(k), static_cast<long double>(d));
  if (total > static_cast<long double>(budget)) {
    throw BudgetExceeded("exact moment needs k^d 2^d = " + std::to_string(static_cast<double>(total)) +
                         " assignments, budget is " + std::to_string(budget));
  }
  return static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(k), static_cast<long double>(d))));
}

Real ipow(Real v, int e) {
  Real r = 1.0L;
  for (int j = 0; j < e; ++j) r *= v;
  return r;
}

// Z for bucket assignment `h` (base-k digits, coordinate 0 least significant)
// and sign bits `z` (bit i set means zeta_i = -1), straight from the definition.
Real z_of(std::span<const double> x, std::span<const std::uint64_t> H, std::uint64_t z) {
  Real total = 0.0L;
  const std::size_t d = x.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j || H[i] != H[j]) continue;
      const int s = (((z >> i) ^ (z >> j)) & 1) ? -1 : 1;
      total += static_cast<Real>(x[i]) * x[j] * s;
    }
  }
  return total;
}

}  // namespace

ChaosInstance::ChaosInstance(std::uint64_t k, DenseVector x, double infinity_bound)
    : k_(k), x_(std::move(x)), bound_(infinity_bound) {
  if (k_ == 0) throw std::invalid_argument("ChaosInstance: k must be positive");
  if (x_.empty()) throw std::invalid_argument("ChaosInstance: x must be non-empty");
  long double sq = 0.0L;
  double inf = 0.0;
  for (double v : x_) {
    if (!std::isfinite(v)) throw std::invalid_argument("ChaosInstance: non-finite entry");
    sq += static_cast<long double>(v) * v;
    inf = std::max(inf, std::abs(v));
  }
  if (std::abs(std::sqrt(sq) - 1.0L) > kUnitTolerance) throw std::invalid_argument("ChaosInstance: x must be a unit vector");
  if (inf > bound_ + kUnitTolerance) throw std::invalid_argument("ChaosInstance: ||x||_inf exceeds the infinity bound");
}

ChaosInstance::ChaosInstance(std::uint64_t k, DenseVector x)
    : ChaosInstance(k, x, x.empty() ? 0.0 : std::abs(*std::max_element(x.begin(), x.end(), [](double a, double b) {
                                        return std::abs(a) < std::abs(b);
                                      }))) {}

Real compute_Z(const ChaosInstance& inst, const RandomnessAssignment& r) {
  const std::size_t d = inst.d();
  if (r.H.size() != d || r.zeta.size() != d) throw std::invalid_argument("compute_Z: assignment length must equal d");
  Real total = 0.0L;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j && r.H[i] == r.H[j]) total += static_cast<Real>(inst.x()[i]) * inst.x()[j] * (r.zeta[i] * r.zeta[j]);
    }
  }
  return total;
}

Real compute_Z_bucketed(std::span<const double> x, std::span<const std::uint64_t> H, std::span<const int> zeta,
                        std::uint64_t k) {
  std::vector<Real> signed_sum(k, 0.0L);
  std::vector<Real> square_sum(k, 0.0L);
  for (std::size_t i = 0; i < x.size(); ++i) {
    signed_sum[H[i]] += static_cast<Real>(zeta[i]) * x[i];
    square_sum[H[i]] += static_cast<Real>(x[i]) * x[i];
  }
  Real z = 0.0L;
  for (std::uint64_t t = 0; t < k; ++t) z += signed_sum[t] * signed_sum[t] - square_sum[t];
  return z;
}

Real exact_raw_moment(const ChaosInstance& inst, int power, std::uint64_t budget) {
  if (power < 0) throw std::invalid_argument("exact_raw_moment: power must be non-negative");
  const std::uint64_t d = inst.d(), k = inst.k();
  const std::uint64_t n_h = assignment_count_or_throw(d, k, budget);
  const std::uint64_t n_z = std::uint64_t{1} << d;
  const std::size_t parts = std::min<std::size_t>(parallel::kReductionPartitions, n_h);
  std::vector<Real> partial(parts, 0.0L);
  const auto np = static_cast<std::int64_t>(parts);
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::worker_count())
  for (std::int64_t part = 0; part < np; ++part) {
    const auto slice = parallel::partition(n_h, parts, static_cast<std::size_t>(part));
    std::vector<std::uint64_t> H(d);
    Real acc = 0.0L;
    for (std::uint64_t h = slice.begin; h < slice.end; ++h) {
      for (std::uint64_t q = h, v = 0; v < d; ++v, q /= k) H[v] = q % k;
      for (std::uint64_t z = 0; z < n_z; ++z) acc += ipow(z_of(inst.x(), H, z), power);
    }
    partial[part] = acc;
  }
  Real sum = 0.0L;
  for (Real p : partial) sum += p;
  return sum / (static_cast<Real>(n_h) * static_cast<Real>(n_z));
}

Real exact_moment(const ChaosInstance& inst, int m, std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("exact_moment: m must be positive");
  return exact_raw_moment(inst, 2 * m, budget);
}

Real graph_expansion_moment(const ChaosInstance& inst, int m, std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("graph_expansion_moment: m must be positive");
  const int d = static_cast<int>(inst.d());
  if (d < 2) return 0.0L;  // no pairs, hence no sequences
  if (d > graphs::kMaxVertices) throw BudgetExceeded("graph_expansion_moment: d too large to enumerate");
  graphs::require_enumerable(d, m, budget);
  const std::vector<graphs::Pair> pairs = graphs::all_pairs(d);
  std::vector<Real> partial(pairs.size(), 0.0L);
  const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::worker_count())
  for (std::int64_t first = 0; first < n; ++first) {
    Real acc = 0.0L;
    graphs::for_each_sequence_with_first(pairs, 2 * m, static_cast<std::size_t>(first),
                                         [&](std::span<const graphs::Pair> seq) {
                                           const graphs::PairSequence s({seq.begin(), seq.end()});
                                           acc += graphs::weight(graphs::build_multigraph(s), inst.x(), inst.k());
                                         });
    partial[first] = acc;
  }
  Real sum = 0.0L;
  for (Real p : partial) sum += p;
  return std::ldexp(sum, 2 * m);
}

ClassTable class_table(int m, std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("class_table: m must be positive");
  ClassTable table;
  table.m = m;
  table.counts.resize(2 * m + 1);
  for (int i = 1; i <= 2 * m; ++i) table.counts[i] = graphs::class_histogram(i, m, budget);
  return table;
}

Real moment_bound_rhs(const ClassTable& table, std::uint64_t k, double C) {
  if (k == 0) throw std::invalid_argument("moment_bound_rhs: k must be positive");
  if (!(C > 0.0)) throw std::invalid_argument("moment_bound_rhs: C must be positive");
  const int m = table.m;
  Real total = 0.0L;
  Real i_factorial = 1.0L;
  for (int i = 1; i <= 2 * m; ++i) {
    i_factorial *= i;
    Real inner = 0.0L;
    for (int t = 1; t <= i / 2; ++t) {
      const Real count = static_cast<Real>(table.counts[i][t]);
      inner += count / std::pow(static_cast<Real>(k), static_cast<Real>(i - t));
    }
    total += inner / (i_factorial * std::pow(static_cast<Real>(C), static_cast<Real>(2 * m - i)));
  }
  return std::ldexp(total, 2 * m);
}

Real moment_bound_rhs(const ChaosInstance& inst, int m, double C, std::uint64_t budget) {
  return moment_bound_rhs(class_table(m, budget), inst.k(), C);
}

SamplingParams SamplingParams::from_spec(const TransformSpec& spec) {
  return {spec.c, spec.k, spec.epsilon, spec.bucket_seed, spec.sign_seed, spec.independence_degree};
}

Real sample_Z(const SamplingParams& p, std::span<const double> x) {
  const KWiseGenerator buckets = new_generator(p.bucket_seed, p.independence_degree, p.k);
  const KWiseGenerator signs = new_generator(p.sign_seed, p.independence_degree, 2);
  const Real scale = 1.0L / std::sqrt(static_cast<Real>(p.c));
  std::vector<Real> signed_sum(p.k, 0.0L);
  std::vector<Real> square_sum(p.k, 0.0L);
  for (std::uint64_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const Real v = x[i] * scale;
    for (std::uint64_t r = 0; r < p.c; ++r) {
      const std::uint64_t j = i * p.c + r;
      const std::uint64_t t = buckets.bucket(j);
      signed_sum[t] += signs.sign(j) * v;
      square_sum[t] += v * v;
    }
  }
  Real z = 0.0L;
  for (std::uint64_t t = 0; t < p.k; ++t) z += signed_sum[t] * signed_sum[t] - square_sum[t];
  return z;
}

MonteCarloMoment monte_carlo_moment(const ChaosInstance& inst, int m, std::uint64_t trials,
                                    std::uint64_t bucket_seed, std::uint64_t sign_seed,
                                    std::size_t independence_degree) {
  if (m < 1) throw std::invalid_argument("monte_carlo_moment: m must be positive");
  if (trials == 0) return {};
  std::vector<double> samples(trials);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 256) num_threads(parallel::worker_count())
  for (std::int64_t t = 0; t < n; ++t) {
    SamplingParams p{1, inst.k(), 0.0, bucket_seed + static_cast<std::uint64_t>(t),
                     sign_seed + static_cast<std::uint64_t>(t), independence_degree};
    samples[t] = static_cast<double>(ipow(sample_Z(p, inst.x()), 2 * m));
  }
  MeanAccumulator acc;
  for (double s : samples) acc.add(s);
  return {trials, acc.mean(), acc.standard_error()};
}

TailEstimate tail_estimate(const SamplingParams& p, std::span<const double> x, std::uint64_t trials) {
  if (trials < 1000) throw std::invalid_argument("tail_estimate: at least 1000 trials required");
  if (p.c == 0 || p.k == 0) throw std::invalid_argument("tail_estimate: c and k must be positive");
  (void)ChaosInstance(p.k, DenseVector(x.begin(), x.end()));  // unit-norm check
  std::vector<std::uint8_t> fail(trials, 0);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 64) num_threads(parallel::worker_count())
  for (std::int64_t t = 0; t < n; ++t) {
    SamplingParams q = p;
    q.bucket_seed += static_cast<std::uint64_t>(t);
    q.sign_seed += static_cast<std::uint64_t>(t);
    fail[t] = std::abs(sample_Z(q, x)) >= p.epsilon;
  }
  TailEstimate est;
  est.trials = trials;
  for (std::uint8_t f : fail) est.failures += f;
  est.failure_rate = static_cast<double>(est.failures) / static_cast<double>(trials);
  est.wilson = wilson_interval(est.failures, trials);
  return est;
}

TailEstimate tail_estimate(const TransformSpec& spec, std::span<const double> x, std::uint64_t trials) {
  if (x.size() != spec.d) throw DimensionMismatch("tail_estimate: x length does not match d");
  return tail_estimate(SamplingParams::from_spec(spec), x, trials);
}

MomentReport moment_report(const ChaosInstance& inst, int m, double C, std::uint64_t mc_trials,
                           std::uint64_t mc_seed, std::size_t independence_degree, std::uint64_t budget) {
  MomentReport r;
  r.d = inst.d();
  r.k = inst.k();
  r.m = m;
  r.C = C;
  r.exact_moment = exact_moment(inst, m, budget);
  r.graph_expansion_moment = graph_expansion_moment(inst, m, budget);
  r.rhs_bound = moment_bound_rhs(inst, m, C);
  r.monte_carlo = monte_carlo_moment(inst, m, mc_trials, mc_seed, mix64(mc_seed ^ 0x5DEECE66Dull), independence_degree);
  return r;
}

}  // namespace sjlt::chaos
