#include "sjlt/reference.hpp"

#include <cmath>

namespace sjlt::reference {

std::vector<DenseVector> apply_batch(const TransformSpec& spec, std::span<const SparseVector> xs) {
  const SparseJL M(spec);
  std::vector<DenseVector> ys;
  ys.reserve(xs.size());
  for (const SparseVector& x : xs) ys.push_back(M.apply(x));
  return ys;
}

DistortionReport distortion_bench(const TransformSpec& spec, const SparseVector& x, std::uint64_t trials) {
  const double xn = x.norm2();
  std::vector<double> ratios;
  ratios.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    TransformSpec trial = spec;
    trial.bucket_seed = spec.bucket_seed + t;
    trial.sign_seed = spec.sign_seed + t;
    ratios.push_back(norm2(SparseJL(trial).apply(x)) / xn);
  }
  return summarize_ratios(ratios, spec.epsilon);
}

chaos::Real exact_raw_moment(const chaos::ChaosInstance& inst, int power) {
  const std::uint64_t d = inst.d(), k = inst.k();
  std::uint64_t n_h = 1;
  for (std::uint64_t v = 0; v < d; ++v) n_h *= k;
  const std::uint64_t n_z = std::uint64_t{1} << d;
  chaos::RandomnessAssignment r{std::vector<std::uint64_t>(d), std::vector<int>(d)};
  chaos::Real sum = 0.0L;
  for (std::uint64_t h = 0; h < n_h; ++h) {
    for (std::uint64_t q = h, v = 0; v < d; ++v, q /= k) r.H[v] = q % k;
    for (std::uint64_t z = 0; z < n_z; ++z) {
      for (std::uint64_t v = 0; v < d; ++v) r.zeta[v] = (z >> v) & 1 ? -1 : 1;
      chaos::Real p = 1.0L;
      const chaos::Real Z = chaos::compute_Z(inst, r);
      for (int e = 0; e < power; ++e) p *= Z;
      sum += p;
    }
  }
  return sum / (static_cast<chaos::Real>(n_h) * static_cast<chaos::Real>(n_z));
}

chaos::Real graph_expansion_moment(const chaos::ChaosInstance& inst, int m) {
  const int d = static_cast<int>(inst.d());
  if (d < 2) return 0.0L;
  const auto pairs = graphs::all_pairs(d);
  chaos::Real sum = 0.0L;
  for (std::size_t first = 0; first < pairs.size(); ++first) {
    graphs::for_each_sequence_with_first(pairs, 2 * m, first, [&](std::span<const graphs::Pair> seq) {
      sum += graphs::weight(graphs::build_multigraph(graphs::PairSequence({seq.begin(), seq.end()})), inst.x(), inst.k());
    });
  }
  return std::ldexp(sum, 2 * m);
}

std::vector<graphs::BigCount> class_histogram(int i, int m) {
  std::vector<graphs::BigCount> out(i + 1, 0);
  const auto pairs = graphs::all_pairs(i);
  for (std::size_t first = 0; first < pairs.size(); ++first) {
    graphs::for_each_sequence_with_first(pairs, 2 * m, first, [&](std::span<const graphs::Pair> seq) {
      const graphs::Multigraph g = graphs::build_multigraph(graphs::PairSequence({seq.begin(), seq.end()}));
      if (static_cast<int>(g.vertices.size()) == i && g.all_degrees_even()) ++out[g.components.size()];
    });
  }
  return out;
}

chaos::TailEstimate tail_estimate(const chaos::SamplingParams& p, std::span<const double> x, std::uint64_t trials) {
  chaos::TailEstimate est;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    chaos::SamplingParams q = p;
    q.bucket_seed += t;
    q.sign_seed += t;
    if (std::abs(chaos::sample_Z(q, x)) >= p.epsilon) ++est.failures;
  }
  est.failure_rate = static_cast<double>(est.failures) / static_cast<double>(trials);
  est.wilson = wilson_interval(est.failures, trials);
  return est;
}

chaos::MonteCarloMoment monte_carlo_moment(const chaos::ChaosInstance& inst, int m, std::uint64_t trials,
                                           std::uint64_t bucket_seed, std::uint64_t sign_seed,
                                           std::size_t independence_degree) {
  MeanAccumulator acc;
  for (std::uint64_t t = 0; t < trials; ++t) {
    chaos::SamplingParams p{1, inst.k(), 0.0, bucket_seed + t, sign_seed + t, independence_degree};
    const chaos::Real z = chaos::sample_Z(p, inst.x());
    chaos::Real v = 1.0L;
    for (int e = 0; e < 2 * m; ++e) v *= z;
    acc.add(static_cast<double>(v));
  }
  return {trials, acc.mean(), acc.standard_error()};
}

}  // namespace sjlt::reference
