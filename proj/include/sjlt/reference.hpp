#pragma once

// Single-threaded reference versions of the parallel kernels. They walk the
// same index spaces in plain loop order with one running accumulator, and
// exist so tests and benchmarks can compare the OpenMP paths against them.

#include <span>
#include <vector>

#include "sjlt/chaos.hpp"
#include "sjlt/graphs.hpp"
#include "sjlt/transform.hpp"

namespace sjlt::reference {

std::vector<DenseVector> apply_batch(const TransformSpec& spec, std::span<const SparseVector> xs);

DistortionReport distortion_bench(const TransformSpec& spec, const SparseVector& x, std::uint64_t trials);

chaos::Real exact_raw_moment(const chaos::ChaosInstance& inst, int power);

chaos::Real graph_expansion_moment(const chaos::ChaosInstance& inst, int m);

std::vector<graphs::BigCount> class_histogram(int i, int m);

chaos::TailEstimate tail_estimate(const chaos::SamplingParams& p, std::span<const double> x, std::uint64_t trials);

chaos::MonteCarloMoment monte_carlo_moment(const chaos::ChaosInstance& inst, int m, std::uint64_t trials,
                                           std::uint64_t bucket_seed, std::uint64_t sign_seed,
                                           std::size_t independence_degree);

}  // namespace sjlt::reference
