#pragma once

// Counter-based pseudorandom words. Every random quantity in the library is a
// pure function of (seed, counter), so results never depend on call order or
// on how work is split across threads.

#include <cstdint>

namespace sjlt {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// The splitmix64 output function (Steele, Lea, Flood).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Word `counter` of the splitmix64 stream started at `seed`
/// (counter 0 is the first value splitmix64 would emit).
constexpr std::uint64_t stream_word(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix64(seed + (counter + 1) * kGoldenGamma);
}

/// Uniform double in [0, 1) built from the top 53 bits of a word.
constexpr double unit_interval(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Standard normal variate for slot `counter` of `seed` (Box-Muller, cosine branch).
double gaussian_at(std::uint64_t seed, std::uint64_t counter);

/// Stateful convenience wrapper over `stream_word`.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next() noexcept { return stream_word(seed_, counter_++); }
  double next_unit() noexcept { return unit_interval(next()); }
  double next_gaussian() { return gaussian_at(seed_, counter_++); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace sjlt
