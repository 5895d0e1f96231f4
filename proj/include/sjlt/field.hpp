#pragma once

// Prime field arithmetic for the polynomial hash families.
//
// The production field is GF(2^61 - 1). Its Mersenne form lets a 128-bit
// product be reduced with two shift/add folds instead of a division. Any other
// prime is accepted too (the exhaustive tests run over tiny fields such as
// GF(5)); those take the generic `% p` path.

#include <cstdint>

namespace sjlt {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(u64 n);

class PrimeField {
 public:
  static constexpr u64 kMersenne61 = (u64{1} << 61) - 1;

  /// Throws std::invalid_argument if `modulus` is not prime.
  explicit PrimeField(u64 modulus);

  /// GF(2^61 - 1); the field every seeded generator uses.
  static PrimeField mersenne61() { return PrimeField(kMersenne61); }

  u64 modulus() const noexcept { return p_; }
  bool is_mersenne61() const noexcept { return mersenne_; }

  u64 reduce(u64 a) const noexcept { return mersenne_ ? fold61(a) : a % p_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;  // a, b < p < 2^63, no overflow
    return s >= p_ ? s - p_ : s;
  }

  u64 mul(u64 a, u64 b) const noexcept {
    u128 z = static_cast<u128>(a) * b;
    if (mersenne_) {
      u64 lo = static_cast<u64>(z) & kMersenne61;
      u64 hi = static_cast<u64>(z >> 61);
      return fold61(lo + hi);
    }
    return static_cast<u64>(z % p_);
  }

  bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

 private:
  static u64 fold61(u64 a) noexcept {
    u64 s = (a & kMersenne61) + (a >> 61);
    return s >= kMersenne61 ? s - kMersenne61 : s;
  }

  u64 p_;
  bool mersenne_;
};

}  // namespace sjlt
