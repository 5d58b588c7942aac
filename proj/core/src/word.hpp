#pragma once

#include <cstdint>

namespace pqcat::detail {

__extension__ typedef unsigned __int128 uint128;
__extension__ typedef __int128 int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m by the extended Euclidean algorithm; 0 when
/// gcd(a, m) != 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) noexcept {
  int128 t = 0, new_t = 1;
  int128 r = m, new_r = a % m;
  while (new_r != 0) {
    int128 quotient = r / new_r;
    int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

/// Carries at positions >= from_digit when adding n and r in base p, in
/// machine words.
inline unsigned carries_word(std::uint64_t n, std::uint64_t r, std::uint64_t p,
                             unsigned from_digit = 0) noexcept {
  unsigned count = 0;
  unsigned position = 0;
  std::uint64_t carry = 0;
  while (n != 0 || r != 0 || carry != 0) {
    const std::uint64_t column = n % p + r % p + carry;
    carry = column >= p ? 1 : 0;
    if (carry != 0 && position >= from_digit) ++count;
    n /= p;
    r /= p;
    ++position;
  }
  return count;
}

}  // namespace pqcat::detail
