#pragma once

// k-wise independent hash values from random polynomials over a prime field.
//
// A generator of degree r holds r coefficients a_0..a_{r-1} and evaluates
// h(x) = a_0 + a_1 x + ... + a_{r-1} x^{r-1} (mod p). With uniform coefficients
// the values at any r distinct points are jointly uniform over the field.
// Outputs are mapped to [0, range) by a plain `% range`, which leaves a
// total-variation bias of s(range - s) / (p range) with s = p mod range
// (see `reduction_bias`).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sjlt/field.hpp"

namespace sjlt {

/// Largest range the seeded generators are meant for. Over GF(2^61 - 1) the
/// modulo-reduction bias stays below 2^-23 up to this size.
inline constexpr u64 kMaxSupportedRange = u64{1} << 40;

class KWiseGenerator {
 public:
  /// Explicit coefficients, lowest order first. Throws std::invalid_argument
  /// when the list is empty, a coefficient is not reduced, or range is not in
  /// [1, modulus].
  KWiseGenerator(PrimeField field, std::vector<u64> coefficients, u64 range);

  std::size_t degree() const noexcept { return coeffs_.size(); }
  u64 range() const noexcept { return range_; }
  const PrimeField& field() const noexcept { return field_; }
  std::span<const u64> coefficients() const noexcept { return coeffs_; }

  /// Polynomial value in [0, p). Throws std::out_of_range if index >= p.
  u64 eval_field(u64 index) const {
    check_index(index);
    return horner(index);
  }

  /// Hash value in [0, range).
  u64 bucket(u64 index) const {
    check_index(index);
    return horner(index) % range_;
  }

  /// +1 when the bucket is 0, -1 when it is 1. Requires range == 2.
  int sign(u64 index) const {
    if (range_ != 2) throw std::invalid_argument("KWiseGenerator::sign: range must be 2");
    check_index(index);
    return (horner(index) & 1) == 0 ? 1 : -1;
  }

  bool operator==(const KWiseGenerator&) const = default;

 private:
  void check_index(u64 index) const {
    if (index >= field_.modulus()) throw std::out_of_range("KWiseGenerator: index outside the field");
  }

  u64 horner(u64 x) const noexcept {
    u64 h = coeffs_.back();
    for (std::size_t j = coeffs_.size() - 1; j-- > 0;) h = field_.add(field_.mul(h, x), coeffs_[j]);
    return h;
  }

  PrimeField field_;
  std::vector<u64> coeffs_;
  u64 range_;
};

/// Coefficients for (seed, degree) over `field`: word n of the splitmix64
/// stream at `seed` is accepted when it lies below the largest multiple of p
/// that fits in 64 bits, and contributes `word % p`; rejected words are
/// skipped. Each accepted word fills the next coefficient, lowest order first.
std::vector<u64> expand_seed(std::uint64_t seed, std::size_t degree, const PrimeField& field);

/// Seeded generator over GF(2^61 - 1). Throws std::invalid_argument when
/// degree == 0, range == 0, or range exceeds the modulus.
KWiseGenerator new_generator(std::uint64_t seed, std::size_t degree, u64 range);

/// Same, over an arbitrary prime field.
KWiseGenerator new_generator(std::uint64_t seed, std::size_t degree, u64 range, const PrimeField& field);

/// Total-variation distance between (uniform over [0, p)) mod range and the
/// uniform distribution on [0, range). Never exceeds range / (4p).
long double reduction_bias(u64 modulus, u64 range);

}  // namespace sjlt
