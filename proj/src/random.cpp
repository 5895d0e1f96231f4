#include "sjlt/random.hpp"

#include <cmath>
#include <numbers>

namespace sjlt {

double gaussian_at(std::uint64_t seed, std::uint64_t counter) {
  // Two independent words per slot: slot n consumes counters 2n and 2n+1.
  std::uint64_t w1 = stream_word(seed, 2 * counter);
  std::uint64_t w2 = stream_word(seed, 2 * counter + 1);
  double u1 = 1.0 - unit_interval(w1);  // (0, 1], keeps log finite
  double u2 = unit_interval(w2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sjlt
