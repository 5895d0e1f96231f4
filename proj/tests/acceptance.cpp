// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sjlt/chaos.hpp"
#include "sjlt/graphs.hpp"
#include "sjlt/kwise.hpp"
#include "sjlt/transform.hpp"

using namespace sjlt;

namespace {

constexpr long double kRelTol = 1e-12L;
constexpr double kEpsilon = 0.25;
constexpr double kDelta = 0.05;
constexpr double kGamma = 5.0;
constexpr std::uint64_t kDistortionDim = 1024;
constexpr std::uint64_t kDistortionTrials = 100000;
constexpr std::uint64_t kTailDim = 256;
constexpr std::uint64_t kTailTrials = 100000;
constexpr int kVectorsPerCell = 50;
constexpr int kTimingReps = 30;
constexpr double kScaleLo = 2.0 * 0.7;
constexpr double kScaleHi = 2.0 * 1.3;

int failures = 0;

void report(int n, bool ok, const std::string& name, const std::string& detail) {
  std::printf("criterion %d: %s %s (%s)\n", n, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<double> v(d);
  double s = 0.0;
  for (double& e : v) {
    e = g(rng);
    s += e * e;
  }
  s = std::sqrt(s);
  for (double& e : v) e /= s;
  return v;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void moment_identity_and_bound() {
  std::mt19937_64 rng(20240601);
  std::map<int, chaos::ClassTable> tables{{1, chaos::class_table(1)}, {2, chaos::class_table(2)}};
  long double worst_rel = 0.0L, worst_ratio = 0.0L;
  int instances = 0, mismatches = 0, violations = 0, probes = 0;
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::uint64_t k = 2; k <= 3; ++k)
      for (int m = 1; m <= 2; ++m)
        for (int n = 0; n < kVectorsPerCell; ++n) {
          const chaos::ChaosInstance inst(k, random_unit(rng, d));
          const long double e = chaos::exact_moment(inst, m);
          const long double g = chaos::graph_expansion_moment(inst, m);
          const long double rel = std::abs(e - g) / std::max(e, g);
          worst_rel = std::max(worst_rel, rel);
          mismatches += rel > kRelTol;
          ++instances;
          // every C with ||x||_inf^2 <= 1/C is valid; probe both ends of that range
          for (double C : {1.0, inst.max_C()}) {
            const long double rhs = chaos::moment_bound_rhs(tables[m], k, C);
            worst_ratio = std::max(worst_ratio, e / rhs);
            violations += e > rhs;
            ++probes;
          }
        }
  report(1, mismatches == 0, "moment identity",
         std::to_string(instances) + " instances, max relative gap " + fmt("%.3g", static_cast<double>(worst_rel)));
  report(2, violations == 0, "moment bound",
         std::to_string(probes) + " probes, " + std::to_string(violations) + " violations, max exact/rhs " +
             fmt("%.4f", static_cast<double>(worst_ratio)));
}

void class_structure() {
  int cells = 0, nonzero_above = 0, struct_checks = 0, struct_failures = 0;
  for (int m = 1; m <= 3; ++m)
    for (int i = 1; i <= 6; ++i) {
      const auto hist = graphs::class_histogram(i, m);
      for (int t = i / 2 + 1; t <= i; ++t) nonzero_above += hist[t] != 0;
      ++cells;
      for (int t = 1; t <= i; ++t) {
        if (3 * t <= i) continue;
        const auto rep = graphs::check_structidentities(i, t, m);
        ++struct_checks;
        if (!rep.ok() || rep.members != hist[t]) ++struct_failures;
      }
    }
  report(3, nonzero_above == 0 && struct_failures == 0, "Eulerian class structure",
         std::to_string(cells) + " (i, m) cells, " + std::to_string(nonzero_above) + " nonzero t > i/2, " +
             std::to_string(struct_checks) + " size-2/SPARSE/CONCRETE checks, " + std::to_string(struct_failures) +
             " failed");
}

void specific_counts() {
  const auto a = graphs::enumerate_W(2, 1, 1).count;
  const auto b = graphs::enumerate_W(3, 1, 1).count;
  const auto c = graphs::enumerate_W(4, 2, 2).count;
  report(4, a == 1 && b == 0 && c == 18, "specific counts",
         "|W[2],1|=" + a.str() + " |W[3],1|=" + b.str() + " |W[4],2|=" + c.str());
}

void jl_distortion() {
  const auto spec = derive_spec(kDistortionDim, kEpsilon, kDelta, 1, 2);
  const SparseVector x = SparseVector::from_dense(
      std::vector<double>(kDistortionDim, 1.0 / std::sqrt(static_cast<double>(kDistortionDim))));
  const auto rep = distortion_bench(spec, x, kDistortionTrials);
  report(5, rep.wilson.hi <= kDelta, "JL distortion",
         "m=" + std::to_string(spec.m) + " k=" + std::to_string(spec.k) + " c=" + std::to_string(spec.c) + ", " +
             std::to_string(rep.failures) + "/" + std::to_string(rep.trials) + " failures, Wilson upper " +
             fmt("%.3g", rep.wilson.hi) + " <= " + fmt("%g", kDelta));
}

void tail_surrogate() {
  const auto spec = derive_spec(kTailDim, kEpsilon, kDelta, 3, 4);
  const std::vector<double> x(kTailDim, 1.0 / std::sqrt(static_cast<double>(kTailDim)));
  const auto est = chaos::tail_estimate(spec, x, kTailTrials);
  const bool desk = est.wilson.hi <= kGamma * kDelta;

  std::mt19937_64 rng(77);
  int checks = 0, markov_failures = 0;
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::uint64_t k = 2; k <= 3; ++k)
      for (int m = 1; m <= 2; ++m)
        for (double eps : {0.25, 0.5, 0.75}) {
          const auto xv = random_unit(rng, d);
          const chaos::ChaosInstance inst(k, xv);
          const double bound = static_cast<double>(chaos::exact_moment(inst, m)) / std::pow(eps, 2 * m);
          const std::size_t degree = std::max<std::size_t>(2 * m, d);
          const chaos::SamplingParams p{1, k, eps, rng(), rng(), degree};
          const auto t = chaos::tail_estimate(p, xv, 10000);
          const double se = std::sqrt(t.failure_rate * (1 - t.failure_rate) / static_cast<double>(t.trials));
          markov_failures += t.failure_rate > bound + 3 * se;
          ++checks;
        }
  report(6, desk && markov_failures == 0, "tail surrogate",
         "d=" + std::to_string(kTailDim) + " rate " + fmt("%.4f", est.failure_rate) + ", Wilson upper " +
             fmt("%.4f", est.wilson.hi) + " <= " + fmt("%g", kGamma * kDelta) + "; Markov " +
             std::to_string(checks - markov_failures) + "/" + std::to_string(checks));
}

void kwise_exactness() {
  const PrimeField f(5);
  int deviations = 0, sets = 0;
  for (std::size_t r = 1; r <= 3; ++r) {
    std::vector<std::vector<u64>> coeffs{{}};
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::vector<u64>> next;
      for (const auto& v : coeffs)
        for (u64 a = 0; a < 5; ++a) {
          next.push_back(v);
          next.back().push_back(a);
        }
      coeffs = next;
    }
    for (unsigned mask = 0; mask < 32; ++mask) {
      if (std::popcount(mask) != static_cast<int>(r)) continue;
      std::vector<u64> pts;
      for (u64 v = 0; v < 5; ++v)
        if (mask >> v & 1) pts.push_back(v);
      std::map<std::vector<u64>, int> seen;
      for (const auto& c : coeffs) {
        const KWiseGenerator g(f, c, 5);
        std::vector<u64> tuple;
        for (u64 v : pts) tuple.push_back(g.bucket(v));
        ++seen[tuple];
      }
      int expected_tuples = 1;
      for (std::size_t j = 0; j < r; ++j) expected_tuples *= 5;
      deviations += static_cast<int>(seen.size()) != expected_tuples;
      for (const auto& [tuple, n] : seen) deviations += n != 1;
      ++sets;
    }
  }
  report(7, deviations == 0, "k-wise exactness",
         std::to_string(sets) + " point sets over GF(5), degrees 1-3, " + std::to_string(deviations) + " deviations");
}

double median_apply_seconds(const SparseJL& M, const SparseVector& x) {
  std::vector<double> t;
  volatile double sink = 0.0;
  (void)M.apply(x);
  for (int r = 0; r < kTimingReps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    const DenseVector y = M.apply(x);
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    sink = sink + y[0];
  }
  std::nth_element(t.begin(), t.begin() + t.size() / 2, t.end());
  return t[t.size() / 2];
}

void sparsity_and_scaling() {
  std::mt19937_64 rng(99);
  int columns = 0, bad = 0;
  for (std::uint64_t d = 1; d <= 8; ++d)
    for (std::uint64_t c = 1; c <= 4; ++c)
      for (std::uint64_t k = 1; k <= 8; ++k) {
        TransformSpec s;
        s.d = d;
        s.c = c;
        s.k = k;
        s.bucket_seed = rng();
        s.sign_seed = rng();
        s.independence_degree = 4;
        const ReplicaColumns rc = SparseJL(s).replica_columns();
        const double mag = 1.0 / std::sqrt(static_cast<double>(c));
        for (const auto& col : rc.columns) {
          bool ok = col.size() == c;
          for (const auto& [row, v] : col) ok = ok && row < k && std::abs(std::abs(v) - mag) <= 1e-15;
          bad += !ok;
          ++columns;
        }
      }

  const std::uint64_t d = std::uint64_t{1} << 22;
  const auto spec = derive_spec(d, kEpsilon, kDelta, 5, 6);
  const SparseJL M(spec);
  std::vector<double> ratios;
  double prev = 0.0;
  std::string detail;
  for (std::uint64_t nnz = std::uint64_t{1} << 14; nnz <= (std::uint64_t{1} << 17); nnz *= 2) {
    std::vector<std::uint64_t> idx;
    std::uniform_int_distribution<std::uint64_t> pick(0, d - 1);
    while (idx.size() < nnz) idx.push_back(pick(rng));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    while (idx.size() < nnz) {  // top up after duplicates
      idx.push_back(pick(rng));
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    std::vector<SparseEntry> e;
    for (std::uint64_t i : idx) e.push_back({i, 1.0});
    const double sec = median_apply_seconds(M, SparseVector(d, e));
    if (prev > 0.0) {
      ratios.push_back(sec / prev);
      detail += (detail.empty() ? "" : " ") + fmt("%.2f", sec / prev);
    }
    prev = sec;
  }
  const bool scaling = std::all_of(ratios.begin(), ratios.end(), [](double r) { return r >= kScaleLo && r <= kScaleHi; });
  report(8, bad == 0 && scaling, "sparsity and complexity",
         std::to_string(columns) + " columns, " + std::to_string(bad) + " without exactly c entries of 1/sqrt(c); " +
             "time ratio per nnz doubling [" + detail + "] in [" + fmt("%.1f", kScaleLo) + ", " +
             fmt("%.1f", kScaleHi) + "]");
}

}  // namespace

int main() {
  moment_identity_and_bound();
  class_structure();
  specific_counts();
  jl_distortion();
  tail_surrogate();
  kwise_exactness();
  sparsity_and_scaling();
  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
