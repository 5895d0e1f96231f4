#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "sjlt/reference.hpp"

using namespace sjlt;

namespace {

std::vector<double> unit(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(d);
  for (double& e : v) e = g(rng);
  const double n = norm2(v);
  for (double& e : v) e /= n;
  return v;
}

std::vector<SparseVector> batch(std::size_t n, std::uint64_t d) {
  std::vector<SparseVector> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(SparseVector::from_dense(unit(d, i)));
  return xs;
}

void BM_apply_batch_parallel(benchmark::State& st) {
  const auto spec = derive_spec(1024, 0.25, 0.05, 1, 2);
  const auto xs = batch(static_cast<std::size_t>(st.range(0)), 1024);
  for (auto _ : st) benchmark::DoNotOptimize(apply_batch(spec, xs));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_apply_batch_serial(benchmark::State& st) {
  const auto spec = derive_spec(1024, 0.25, 0.05, 1, 2);
  const auto xs = batch(static_cast<std::size_t>(st.range(0)), 1024);
  for (auto _ : st) benchmark::DoNotOptimize(reference::apply_batch(spec, xs));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_distortion_parallel(benchmark::State& st) {
  const auto spec = derive_spec(1024, 0.25, 0.05, 1, 2);
  const auto x = SparseVector::from_dense(unit(1024, 9));
  for (auto _ : st) benchmark::DoNotOptimize(distortion_bench(spec, x, static_cast<std::uint64_t>(st.range(0))));
}

void BM_distortion_serial(benchmark::State& st) {
  const auto spec = derive_spec(1024, 0.25, 0.05, 1, 2);
  const auto x = SparseVector::from_dense(unit(1024, 9));
  for (auto _ : st) benchmark::DoNotOptimize(reference::distortion_bench(spec, x, static_cast<std::uint64_t>(st.range(0))));
}

void BM_exact_moment_parallel(benchmark::State& st) {
  const chaos::ChaosInstance inst(3, unit(static_cast<std::size_t>(st.range(0)), 3));
  for (auto _ : st) benchmark::DoNotOptimize(chaos::exact_raw_moment(inst, 4));
}

void BM_exact_moment_serial(benchmark::State& st) {
  const chaos::ChaosInstance inst(3, unit(static_cast<std::size_t>(st.range(0)), 3));
  for (auto _ : st) benchmark::DoNotOptimize(reference::exact_raw_moment(inst, 4));
}

void BM_graph_expansion_parallel(benchmark::State& st) {
  const chaos::ChaosInstance inst(2, unit(static_cast<std::size_t>(st.range(0)), 4));
  for (auto _ : st) benchmark::DoNotOptimize(chaos::graph_expansion_moment(inst, 2));
}

void BM_graph_expansion_serial(benchmark::State& st) {
  const chaos::ChaosInstance inst(2, unit(static_cast<std::size_t>(st.range(0)), 4));
  for (auto _ : st) benchmark::DoNotOptimize(reference::graph_expansion_moment(inst, 2));
}

void BM_class_histogram_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(graphs::class_histogram(static_cast<int>(st.range(0)), 2));
}

void BM_class_histogram_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::class_histogram(static_cast<int>(st.range(0)), 2));
}

// Single-vector cost against nnz: sparse transform versus the dense baselines.
SparseVector sparse_input(std::uint64_t d, std::int64_t nnz) {
  std::vector<SparseEntry> e;
  const std::uint64_t stride = d / static_cast<std::uint64_t>(nnz);
  for (std::int64_t i = 0; i < nnz; ++i) e.push_back({static_cast<std::uint64_t>(i) * stride, 1.0});
  return SparseVector(d, e);
}

void BM_apply_sparse(benchmark::State& st) {
  const auto spec = derive_spec(1 << 20, 0.25, 0.05, 1, 2);
  const SparseJL M(spec);
  const auto x = sparse_input(spec.d, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(M.apply(x));
  st.SetComplexityN(st.range(0));
}

void BM_apply_rademacher(benchmark::State& st) {
  const auto x = sparse_input(1 << 20, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(apply_dense_baseline(BaselineKind::rademacher, 1, 192, x));
  st.SetComplexityN(st.range(0));
}

void BM_apply_gaussian(benchmark::State& st) {
  const auto x = sparse_input(1 << 20, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(apply_dense_baseline(BaselineKind::gaussian, 1, 192, x));
  st.SetComplexityN(st.range(0));
}

}  // namespace

BENCHMARK(BM_apply_batch_parallel)->Arg(1000);
BENCHMARK(BM_apply_batch_serial)->Arg(1000);
BENCHMARK(BM_distortion_parallel)->Arg(2000);
BENCHMARK(BM_distortion_serial)->Arg(2000);
BENCHMARK(BM_exact_moment_parallel)->Arg(6)->Arg(8);
BENCHMARK(BM_exact_moment_serial)->Arg(6)->Arg(8);
BENCHMARK(BM_graph_expansion_parallel)->Arg(5)->Arg(7);
BENCHMARK(BM_graph_expansion_serial)->Arg(5)->Arg(7);
BENCHMARK(BM_class_histogram_parallel)->Arg(5)->Arg(6);
BENCHMARK(BM_class_histogram_serial)->Arg(5)->Arg(6);
BENCHMARK(BM_apply_sparse)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity(benchmark::oN);
BENCHMARK(BM_apply_rademacher)->RangeMultiplier(4)->Range(64, 1 << 12)->Complexity(benchmark::oN);
BENCHMARK(BM_apply_gaussian)->RangeMultiplier(4)->Range(64, 1 << 12)->Complexity(benchmark::oN);

BENCHMARK_MAIN();
