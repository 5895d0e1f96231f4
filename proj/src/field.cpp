#include "sjlt/field.hpp"

#include <stdexcept>
#include <string>

namespace sjlt {

namespace {

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  // The first twelve primes form a deterministic witness set below 3.3e24.
  constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : witnesses) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : witnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 modulus) : p_(modulus), mersenne_(modulus == kMersenne61) {
  if (modulus >= (u64{1} << 63)) {
    throw std::invalid_argument("PrimeField: modulus must be below 2^63");
  }
  if (!is_prime_u64(modulus)) {
    throw std::invalid_argument("PrimeField: modulus " + std::to_string(modulus) + " is not prime");
  }
}

}  // namespace sjlt
