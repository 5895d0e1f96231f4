#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sjlt/chaos.hpp"
#include "support.hpp"

using namespace sjlt;
using namespace sjlt::chaos;

namespace {

const double kR2 = std::sqrt(0.5);  // correctly rounded, so 2 kR2^2 >= 1

// E Z^2 under full independence: Z = 2 sum_{i<j} x_i x_j zeta_i zeta_j 1{H_i = H_j}
// and the cross terms average to zero, leaving 4 sum_{i<j} x_i^2 x_j^2 / k.
Real second_moment(const std::vector<double>& x, std::uint64_t k) {
  Real s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) s += static_cast<Real>(x[i]) * x[i] * x[j] * x[j];
  return 4.0L * s / k;
}

std::vector<double> uniform(std::size_t d) { return std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))); }

}  // namespace

TEST_CASE("ChaosInstance validation") {
  CHECK_THROWS_AS(ChaosInstance(0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ChaosInstance(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(ChaosInstance(2, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(ChaosInstance(2, {0.6, 0.8}, 0.7), std::invalid_argument);
  CHECK_NOTHROW(ChaosInstance(2, {0.6, 0.8}, 0.8));
  const ChaosInstance a(3, {0.6, -0.8});
  CHECK(a.infinity_bound() == 0.8);
  CHECK(a.max_C() == doctest::Approx(1.0 / 0.64));
  CHECK(a.d() == 2);
}

TEST_CASE("compute_Z examples") {
  const ChaosInstance e1(3, {1.0, 0.0, 0.0});
  std::mt19937_64 rng(1);
  for (int n = 0; n < 20; ++n) {
    RandomnessAssignment r{{rng() % 3, rng() % 3, rng() % 3}, {rng() % 2 ? 1 : -1, rng() % 2 ? 1 : -1, 1}};
    CHECK(compute_Z(e1, r) == 0.0L);
  }
  const ChaosInstance two(4, {kR2, kR2});
  CHECK(compute_Z(two, {{0, 0}, {1, 1}}) == doctest::Approx(1.0));
  CHECK(compute_Z(two, {{0, 0}, {1, -1}}) == doctest::Approx(-1.0));
  CHECK(compute_Z(two, {{0, 1}, {1, 1}}) == 0.0L);
  CHECK_THROWS_AS(compute_Z(two, {{0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("bucketed Z equals the pairwise definition") {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 500; ++n) {
    const std::size_t d = 1 + rng() % 12;
    const std::uint64_t k = 1 + rng() % 5;
    const ChaosInstance inst(k, testing::random_unit(rng, d));
    RandomnessAssignment r;
    for (std::size_t i = 0; i < d; ++i) {
      r.H.push_back(rng() % k);
      r.zeta.push_back(rng() % 2 ? 1 : -1);
    }
    CHECK(std::abs(compute_Z(inst, r) - compute_Z_bucketed(inst.x(), r.H, r.zeta, k)) < 1e-15L);
  }
}

TEST_CASE("exact_moment examples") {
  CHECK(exact_moment(ChaosInstance(2, {kR2, kR2}), 1) == doctest::Approx(0.5));
  CHECK(exact_moment(ChaosInstance(3, {0.0, 1.0, 0.0}), 2) == 0.0L);
  const ChaosInstance u3(2, uniform(3));
  const Real e = exact_moment(u3, 1);
  CHECK(e == doctest::Approx(2.0 / 3.0));  // 4 * 3 * (1/9) / 2
  CHECK(std::abs(e - graph_expansion_moment(u3, 1)) <= 1e-12L * e);
  const Real e2 = exact_moment(u3, 2);
  CHECK(std::abs(e2 - graph_expansion_moment(u3, 2)) <= 1e-12L * e2);
  CHECK_THROWS_AS(exact_moment(ChaosInstance(4, uniform(16)), 1), BudgetExceeded);
  CHECK_THROWS_AS(exact_moment(u3, 0), std::invalid_argument);
}

TEST_CASE("second moment closed form") {
  std::mt19937_64 rng(3);
  for (std::size_t d = 2; d <= 6; ++d)
    for (std::uint64_t k = 1; k <= 3; ++k) {
      const auto x = testing::random_unit(rng, d);
      const ChaosInstance inst(k, x);
      const Real want = second_moment(x, k);
      CHECK(std::abs(exact_moment(inst, 1) - want) <= 1e-12L * want);
      CHECK(std::abs(graph_expansion_moment(inst, 1) - want) <= 1e-12L * want);
    }
}

TEST_CASE("graph_expansion_moment examples") {
  CHECK(graph_expansion_moment(ChaosInstance(2, {kR2, kR2}), 1) == doctest::Approx(0.5));
  CHECK(graph_expansion_moment(ChaosInstance(2, {0.0, 0.0, 1.0}), 2) == 0.0L);
  CHECK(graph_expansion_moment(ChaosInstance(2, {1.0}), 1) == 0.0L);
  CHECK_THROWS_AS(graph_expansion_moment(ChaosInstance(2, uniform(30)), 3), BudgetExceeded);
}

TEST_CASE("oracle agreement, d <= 4, k <= 3, m <= 2") {
  std::mt19937_64 rng(4);
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::uint64_t k = 1; k <= 3; ++k)
      for (int m = 1; m <= 2; ++m)
        for (int probe = 0; probe < 50; ++probe) {
          const ChaosInstance inst(k, testing::random_unit(rng, d));
          const Real a = exact_moment(inst, m), b = graph_expansion_moment(inst, m);
          REQUIRE(std::abs(a - b) <= 1e-12L * std::max(a, b));
        }
}

TEST_CASE("first moment vanishes, third does not") {
  std::mt19937_64 rng(5);
  for (std::size_t d = 1; d <= 5; ++d)
    for (std::uint64_t k = 1; k <= 3; ++k) {
      const ChaosInstance inst(k, testing::random_unit(rng, d));
      CHECK(std::abs(exact_raw_moment(inst, 1)) <= 1e-12L);
    }
  // Two coordinates: Z = +-2 x1 x2 on a collision, symmetric, so E Z^3 = 0.
  CHECK(std::abs(exact_raw_moment(ChaosInstance(2, {0.6, 0.8}), 3)) <= 1e-12L);
  // Three coordinates share a triangle with even degrees. d = 3, k = 1, uniform x:
  // Z = 2 with probability 1/4 and -2/3 otherwise, so E Z^3 = 2 - 2/9 = 16/9.
  CHECK(exact_raw_moment(ChaosInstance(1, uniform(3)), 3) == doctest::Approx(16.0 / 9.0));
}

TEST_CASE("moments are invariant under permuting coordinates") {
  std::mt19937_64 rng(6);
  for (int probe = 0; probe < 10; ++probe) {
    auto x = testing::random_unit(rng, 5);
    const Real a = exact_moment(ChaosInstance(2, x), 2);
    std::shuffle(x.begin(), x.end(), rng);
    const Real b = exact_moment(ChaosInstance(2, x), 2);
    CHECK(std::abs(a - b) <= 1e-12L * a);
  }
}

TEST_CASE("moment_bound_rhs") {
  // m = 1: only |W_{[2],1}| = 1 contributes, 4 * (1/2) * (1/k) = 2/k
  for (std::uint64_t k : {1u, 2u, 3u, 10u})
    for (double C : {1.0, 2.5, 100.0}) CHECK(moment_bound_rhs(class_table(1), k, C) == doctest::Approx(2.0 / k));

  // m = 2 by hand from the tabulated counts
  const ClassTable t2 = class_table(2);
  CHECK(t2.counts[2][1] == 1);
  CHECK(t2.counts[4][2] == 18);
  const double k = 3, C = 2;
  long double want = 0;
  for (int i = 1; i <= 4; ++i) {
    long double fact = 1;
    for (int j = 2; j <= i; ++j) fact *= j;
    for (int t = 1; t <= i / 2; ++t)
      want += static_cast<long double>(t2.counts[i][t]) / fact / std::pow(k, i - t) / std::pow(C, 4 - i);
  }
  CHECK(moment_bound_rhs(t2, 3, C) == doctest::Approx(static_cast<double>(16 * want)));
  CHECK_THROWS_AS(moment_bound_rhs(t2, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(moment_bound_rhs(t2, 2, 0.0), std::invalid_argument);
}

TEST_CASE("the bound dominates the exact moment for m = 2, k = 2, C = 4") {
  std::mt19937_64 rng(7);
  const ClassTable table = class_table(2);
  const Real rhs = moment_bound_rhs(table, 2, 4.0);
  for (int probe = 0; probe < 100; ++probe) {
    const auto x = testing::random_capped_unit(rng, 6, 0.5);
    const ChaosInstance inst(2, x, 0.5);
    CHECK(exact_moment(inst, 2) <= rhs);
  }
}

TEST_CASE("sample_Z matches an explicit replica computation") {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    const std::size_t d = 1 + rng() % 10;
    const SamplingParams p{1 + rng() % 4, 1 + rng() % 6, 0.1, rng(), rng(), 1 + rng() % 6};
    const auto x = testing::random_unit(rng, d);
    const auto h = new_generator(p.bucket_seed, p.independence_degree, p.k);
    const auto z = new_generator(p.sign_seed, p.independence_degree, 2);
    std::vector<double> xp;
    std::vector<std::uint64_t> H;
    std::vector<int> zeta;
    for (std::size_t i = 0; i < d; ++i)
      for (std::uint64_t r = 0; r < p.c; ++r) {
        xp.push_back(x[i] / std::sqrt(static_cast<double>(p.c)));
        H.push_back(h.bucket(i * p.c + r));
        zeta.push_back(z.sign(i * p.c + r));
      }
    const ChaosInstance dup(p.k, xp, 1.0);
    CHECK(std::abs(sample_Z(p, x) - compute_Z(dup, {H, zeta})) < 1e-14L);
  }
}

TEST_CASE("Z is the squared-norm excess of the transform") {
  const auto spec = derive_spec(40, 0.3, 0.1, 21, 22);
  std::mt19937_64 rng(9);
  const auto x = testing::random_unit(rng, 40);
  const double y = norm2(apply(spec, SparseVector::from_dense(x)));
  CHECK(static_cast<double>(sample_Z(SamplingParams::from_spec(spec), x)) == doctest::Approx(y * y - 1.0).epsilon(1e-12));
}

TEST_CASE("tail_estimate examples") {
  SamplingParams p{1, 4, 0.25, 1, 2, 4};
  const TailEstimate zero = tail_estimate(p, std::vector<double>{1.0, 0.0, 0.0}, 1000);
  CHECK(zero.failures == 0);
  CHECK(zero.failure_rate == 0.0);
  CHECK(zero.wilson.lo == 0.0);

  const SamplingParams forced{1, 1, 1.0, 3, 4, 2};
  const TailEstimate one = tail_estimate(forced, std::vector<double>{kR2, kR2}, 1000);
  CHECK(one.failure_rate == 1.0);

  CHECK_THROWS_AS(tail_estimate(p, std::vector<double>{1.0}, 999), std::invalid_argument);
  CHECK_THROWS_AS(tail_estimate(p, std::vector<double>{0.5, 0.5}, 1000), std::invalid_argument);
  CHECK_THROWS_AS(tail_estimate(derive_spec(3, 0.5, 0.5, 1, 2), std::vector<double>{1.0, 0.0}, 1000),
                  DimensionMismatch);
}

TEST_CASE("Markov consistency on enumerable instances") {
  // generator degree d makes all d hashed values independent
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::uint64_t k = 1; k <= 3; ++k)
      for (int m = 1; m <= 2; ++m) {
        const auto x = uniform(d);
        const ChaosInstance inst(k, x);
        const double eps = 0.5;
        const SamplingParams p{1, k, eps, 100 * d + k, static_cast<std::uint64_t>(7 * m), d};
        const TailEstimate est = tail_estimate(p, x, 20000);
        const double se = std::sqrt(est.failure_rate * (1 - est.failure_rate) / est.trials);
        const double markov = static_cast<double>(exact_moment(inst, m)) / std::pow(eps, 2 * m);
        CHECK_MESSAGE(est.failure_rate <= markov + 3 * se, "d=" << d << " k=" << k << " m=" << m);
      }
}

TEST_CASE("Monte Carlo moment tracks the exact moment") {
  std::mt19937_64 rng(10);
  for (int m = 1; m <= 2; ++m)
    for (std::uint64_t k = 2; k <= 3; ++k) {
      const ChaosInstance inst(k, testing::random_unit(rng, 4));
      const MonteCarloMoment mc = monte_carlo_moment(inst, m, 40000, 5, 6, 4 * m);
      const double exact = static_cast<double>(exact_moment(inst, m));
      CHECK(mc.trials == 40000);
      CHECK_MESSAGE(std::abs(mc.mean - exact) <= 4 * mc.standard_error, mc.mean << " vs " << exact);
    }
}

TEST_CASE("moment report") {
  const MomentReport r = moment_report(ChaosInstance(2, {kR2, kR2}), 1, 2.0, 1000, 1, 4);
  CHECK(r.d == 2);
  CHECK(r.k == 2);
  CHECK(r.exact_moment == doctest::Approx(0.5));
  CHECK(r.graph_expansion_moment == doctest::Approx(0.5));
  CHECK(r.rhs_bound == doctest::Approx(1.0));
  CHECK(r.monte_carlo.trials == 1000);
  CHECK(r.exact_moment >= 0);
}
