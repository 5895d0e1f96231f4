#include "sjlt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sjlt/parallel.hpp"
#include "sjlt/random.hpp"

namespace sjlt {

namespace {

// ceil() that ignores floating-point noise of a few ulps above an integer,
// e.g. 5 / 0.1^2 evaluates to 500.00000000000006.
std::uint64_t ceil_count(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(v));
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("derive_spec: ") + name + " must be positive");
}

}  // namespace

double F_of_m(std::uint64_t m) {
  if (m < 3) return 1.0;
  const double lm = std::log(static_cast<double>(m));
  return std::max(1.0, lm / std::log(lm));
}

TransformSpec derive_spec(std::uint64_t d, double epsilon, double delta, std::uint64_t bucket_seed,
                          std::uint64_t sign_seed, Kappa kappa, std::optional<std::size_t> independence_degree) {
  if (d == 0) throw std::invalid_argument("derive_spec: d must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("derive_spec: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("derive_spec: delta must lie in (0, 1)");
  require_positive(kappa.m, "kappa_m");
  require_positive(kappa.k, "kappa_k");
  require_positive(kappa.c, "kappa_c");

  TransformSpec s;
  s.d = d;
  s.epsilon = epsilon;
  s.delta = delta;
  s.kappa = kappa;
  s.bucket_seed = bucket_seed;
  s.sign_seed = sign_seed;

  const double log_inv_delta = std::log(1.0 / delta);
  s.m = std::max<std::uint64_t>(1, ceil_count(kappa.m * log_inv_delta));
  s.k = ceil_count(kappa.k * static_cast<double>(s.m) / (epsilon * epsilon));
  s.F_of_m = F_of_m(s.m);
  const double ratio = static_cast<double>(s.m) / s.F_of_m;
  s.c = std::max<std::uint64_t>(1, ceil_count(kappa.c * ratio * ratio / epsilon));
  s.independence_degree = independence_degree.value_or(2 * s.m);

  if (s.k < s.m) throw std::invalid_argument("derive_spec: kappa_k too small, k would fall below m");
  if (s.k > kMaxSupportedRange) throw std::invalid_argument("derive_spec: target dimension k exceeds 2^40");
  if (s.independence_degree == 0) throw std::invalid_argument("derive_spec: independence degree must be positive");
  if (static_cast<u128>(s.c) * d >= PrimeField::kMersenne61) {
    throw std::invalid_argument("derive_spec: c*d does not fit the hash field");
  }
  if (epsilon > 1.0 / (log_inv_delta * log_inv_delta)) {
    std::ostringstream w;
    w << "epsilon=" << epsilon << " exceeds ln(1/delta)^-2=" << 1.0 / (log_inv_delta * log_inv_delta);
    s.warnings.push_back(w.str());
  }
  return s;
}

SparseJL::SparseJL(const TransformSpec& spec)
    : SparseJL(spec.d, spec.c, new_generator(spec.bucket_seed, spec.independence_degree, spec.k),
               new_generator(spec.sign_seed, spec.independence_degree, 2)) {}

SparseJL::SparseJL(std::uint64_t d, std::uint64_t c, KWiseGenerator buckets, KWiseGenerator signs)
    : d_(d), c_(c), scale_(1.0 / std::sqrt(static_cast<double>(c))), buckets_(std::move(buckets)),
      signs_(std::move(signs)) {
  if (d == 0 || c == 0) throw std::invalid_argument("SparseJL: d and c must be positive");
  if (signs_.range() != 2) throw std::invalid_argument("SparseJL: sign generator must have range 2");
  const u128 flat = static_cast<u128>(c) * d;
  if (flat > buckets_.field().modulus() || flat > signs_.field().modulus()) {
    throw std::invalid_argument("SparseJL: c*d replicas exceed the hash field");
  }
}

DenseVector SparseJL::apply(const SparseVector& x) const {
  if (x.dim() != d_) throw DimensionMismatch("SparseJL::apply: vector dimension does not match d");
  DenseVector y(k(), 0.0);
  for (const SparseEntry& e : x.entries()) {
    const double v = e.value * scale_;
    const std::uint64_t base = e.index * c_;
    for (std::uint64_t r = 0; r < c_; ++r) {
      const std::uint64_t j = base + r;
      y[buckets_.bucket(j)] += signs_.sign(j) * v;
    }
  }
  return y;
}

std::vector<DenseVector> SparseJL::materialize() const {
  std::vector<DenseVector> m(k(), DenseVector(d_, 0.0));
  for (std::uint64_t i = 0; i < d_; ++i) {
    for (std::uint64_t r = 0; r < c_; ++r) {
      const std::uint64_t j = i * c_ + r;
      m[buckets_.bucket(j)][i] += signs_.sign(j) * scale_;
    }
  }
  return m;
}

ReplicaColumns SparseJL::replica_columns() const {
  ReplicaColumns out{k(), d_, {}};
  out.columns.resize(d_);
  for (std::uint64_t i = 0; i < d_; ++i) {
    for (std::uint64_t r = 0; r < c_; ++r) {
      const std::uint64_t j = i * c_ + r;
      out.columns[i].emplace_back(buckets_.bucket(j), signs_.sign(j) * scale_);
    }
  }
  return out;
}

DenseVector apply(const TransformSpec& spec, const SparseVector& x) { return SparseJL(spec).apply(x); }

std::vector<DenseVector> apply_batch(const TransformSpec& spec, std::span<const SparseVector> xs) {
  const SparseJL M(spec);
  std::vector<DenseVector> ys(xs.size());
  for (const SparseVector& x : xs) {
    if (x.dim() != spec.d) throw DimensionMismatch("apply_batch: vector dimension does not match d");
  }
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(parallel::worker_count())
  for (std::int64_t i = 0; i < n; ++i) ys[i] = M.apply(xs[i]);
  return ys;
}

DenseVector apply_dense_baseline(BaselineKind kind, std::uint64_t seed, std::uint64_t k, const SparseVector& x) {
  if (k == 0) throw std::invalid_argument("apply_dense_baseline: k must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  DenseVector y(k, 0.0);
  for (const SparseEntry& e : x.entries()) {
    const std::uint64_t col = e.index * k;
    for (std::uint64_t t = 0; t < k; ++t) {
      const double a = kind == BaselineKind::rademacher ? ((stream_word(seed, col + t) >> 63) ? -1.0 : 1.0)
                                                        : gaussian_at(seed, col + t);
      y[t] += a * e.value;
    }
  }
  for (double& v : y) v *= scale;
  return y;
}

double distortion_trial(const TransformSpec& spec, const SparseVector& x) {
  const double xn = x.norm2();
  if (xn == 0.0) throw std::invalid_argument("distortion_trial: zero vector");
  return norm2(apply(spec, x)) / xn;
}

DistortionReport summarize_ratios(std::span<const double> ratios, double epsilon) {
  DistortionReport r;
  r.trials = ratios.size();
  if (ratios.empty()) throw std::invalid_argument("summarize_ratios: no trials");
  double sum = 0.0;
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = -std::numeric_limits<double>::infinity();
  for (double q : ratios) {
    if (q < 1.0 - epsilon || q > 1.0 + epsilon) ++r.failures;
    sum += q;
    r.min_ratio = std::min(r.min_ratio, q);
    r.max_ratio = std::max(r.max_ratio, q);
  }
  r.mean_ratio = sum / static_cast<double>(r.trials);
  r.failure_rate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
  r.wilson = wilson_interval(r.failures, r.trials);
  return r;
}

DistortionReport distortion_bench(const TransformSpec& spec, const SparseVector& x, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("distortion_bench: trials must be positive");
  if (x.dim() != spec.d) throw DimensionMismatch("distortion_bench: vector dimension does not match d");
  const double xn = x.norm2();
  if (xn == 0.0) throw std::invalid_argument("distortion_bench: zero vector");
  std::vector<double> ratios(trials);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 64) num_threads(parallel::worker_count())
  for (std::int64_t t = 0; t < n; ++t) {
    TransformSpec trial = spec;
    trial.bucket_seed = spec.bucket_seed + static_cast<std::uint64_t>(t);
    trial.sign_seed = spec.sign_seed + static_cast<std::uint64_t>(t);
    ratios[t] = norm2(SparseJL(trial).apply(x)) / xn;
  }
  return summarize_ratios(ratios, spec.epsilon);
}

DistortionReport baseline_distortion_bench(BaselineKind kind, const TransformSpec& spec, const SparseVector& x,
                                           std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("baseline_distortion_bench: trials must be positive");
  const double xn = x.norm2();
  if (xn == 0.0) throw std::invalid_argument("baseline_distortion_bench: zero vector");
  std::vector<double> ratios(trials);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16) num_threads(parallel::worker_count())
  for (std::int64_t t = 0; t < n; ++t) {
    ratios[t] = norm2(apply_dense_baseline(kind, spec.bucket_seed + static_cast<std::uint64_t>(t), spec.k, x)) / xn;
  }
  return summarize_ratios(ratios, spec.epsilon);
}

}  // namespace sjlt
