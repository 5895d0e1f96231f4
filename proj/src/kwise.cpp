#include "sjlt/kwise.hpp"

#include <limits>
#include <utility>

#include "sjlt/random.hpp"

namespace sjlt {

KWiseGenerator::KWiseGenerator(PrimeField field, std::vector<u64> coefficients, u64 range)
    : field_(field), coeffs_(std::move(coefficients)), range_(range) {
  if (coeffs_.empty()) throw std::invalid_argument("KWiseGenerator: degree must be at least 1");
  if (range_ == 0) throw std::invalid_argument("KWiseGenerator: range must be at least 1");
  if (range_ > field_.modulus()) throw std::invalid_argument("KWiseGenerator: range exceeds the field modulus");
  for (u64 a : coeffs_) {
    if (a >= field_.modulus()) throw std::invalid_argument("KWiseGenerator: coefficient not reduced mod p");
  }
}

std::vector<u64> expand_seed(std::uint64_t seed, std::size_t degree, const PrimeField& field) {
  const u64 p = field.modulus();
  // 2^64 mod p; words >= 2^64 - rem would over-represent the low residues.
  const u64 rem = (std::numeric_limits<u64>::max() % p + 1) % p;
  const u64 last_ok = std::numeric_limits<u64>::max() - rem;
  std::vector<u64> out;
  out.reserve(degree);
  for (u64 counter = 0; out.size() < degree; ++counter) {
    u64 w = stream_word(seed, counter);
    if (w <= last_ok) out.push_back(w % p);
  }
  return out;
}

KWiseGenerator new_generator(std::uint64_t seed, std::size_t degree, u64 range) {
  return new_generator(seed, degree, range, PrimeField::mersenne61());
}

KWiseGenerator new_generator(std::uint64_t seed, std::size_t degree, u64 range, const PrimeField& field) {
  if (degree == 0) throw std::invalid_argument("new_generator: degree must be at least 1");
  if (range == 0 || range > field.modulus()) {
    throw std::invalid_argument("new_generator: range must lie in [1, modulus]");
  }
  return KWiseGenerator(field, expand_seed(seed, degree, field), range);
}

long double reduction_bias(u64 modulus, u64 range) {
  if (range == 0) throw std::invalid_argument("reduction_bias: range must be positive");
  // p = q*range + s: s residues get q+1 preimages, the rest get q.
  const u64 s = modulus % range;
  return static_cast<long double>(s) * static_cast<long double>(range - s) /
         (static_cast<long double>(modulus) * static_cast<long double>(range));
}

}  // namespace sjlt
