#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace testing {

inline bool close_rel(long double a, long double b, long double rel) {
  const long double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale;
}

inline std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  s = std::sqrt(s);
  for (double& e : v) e /= s;
  return v;
}

/// Uniformly random unit vector in R^d (normalized Gaussian).
inline std::vector<double> random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<double> v(d);
  for (double& e : v) e = g(rng);
  return normalized(std::move(v));
}

/// Random unit vector with ||x||_inf <= cap, by rejection.
inline std::vector<double> random_capped_unit(std::mt19937_64& rng, std::size_t d, double cap) {
  while (true) {
    auto v = random_unit(rng, d);
    double inf = 0.0;
    for (double e : v) inf = std::max(inf, std::abs(e));
    if (inf <= cap) return v;
  }
}

inline double linf(const std::vector<double>& v) {
  double inf = 0.0;
  for (double e : v) inf = std::max(inf, std::abs(e));
  return inf;
}

}  // namespace testing
