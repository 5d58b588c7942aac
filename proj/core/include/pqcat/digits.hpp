#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pqcat {

using BigInt = mpz_class;

/// Deterministic primality test, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// A validated prime. Construction from an integer checks primality and
/// throws DomainError otherwise, so any function taking a Prime can rely
/// on it. The conversion is implicit on purpose: `sigma_p(11, 2)` reads
/// better than `sigma_p(11, Prime{2})`.
class Prime {
 public:
  Prime(std::uint64_t p);  // NOLINT(google-explicit-constructor)

  std::uint64_t value() const noexcept { return p_; }
  operator std::uint64_t() const noexcept { return p_; }  // NOLINT

 private:
  std::uint64_t p_;
};

/// A prime power p^q with q >= 1 and the modulus cached exactly.
class PrimePower {
 public:
  PrimePower(Prime p, unsigned q);

  std::uint64_t prime() const noexcept { return p_; }
  unsigned exponent() const noexcept { return q_; }
  const BigInt& modulus() const noexcept { return modulus_; }

  /// True when p^q < 2^63, so residue arithmetic runs in machine words.
  bool fits_word() const noexcept { return fits_word_; }
  /// p^q as a machine word; throws ResourceError unless fits_word().
  std::uint64_t modulus_word() const;

  std::string to_string() const;

  friend bool operator==(const PrimePower& a, const PrimePower& b) noexcept {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  std::uint64_t p_;
  unsigned q_;
  BigInt modulus_;
  bool fits_word_;
};

/// Little-endian base-p digits: digits[i] is the coefficient of p^i.
/// Canonical form has no trailing (most significant) zeros; zero is empty.
struct DigitVector {
  std::uint64_t base = 2;
  std::vector<std::uint64_t> digits;

  std::size_t size() const noexcept { return digits.size(); }
  /// Digit at position i, zero past the end (implicit padding).
  std::uint64_t operator[](std::size_t i) const noexcept {
    return i < digits.size() ? digits[i] : 0;
  }
  BigInt value() const;
  /// Most significant digit first, e.g. "101101" for 45 in base 2. Bases
  /// above 10 separate digits with '.'.
  std::string to_string() const;
};

DigitVector to_base_p(const BigInt& n, Prime p);

std::uint64_t sigma_p(const BigInt& n, Prime p);

/// v_p(n!) by Legendre's sum of floor(n / p^i). The result grows like n, so
/// it is returned as a big integer.
BigInt legendre_valuation_factorial(const BigInt& n, Prime p);

/// Carries produced at digit positions >= from_digit when adding n and r in
/// base p. With from_digit = 0 this is v_p(C(n + r, n)).
std::uint64_t kummer_carries(const BigInt& n, const BigInt& r, Prime p,
                             std::size_t from_digit = 0);

/// v_p(C(m, n)); requires n <= m.
std::uint64_t binom_valuation(const BigInt& m, const BigInt& n, Prime p);

/// Per-position carry flags for n + r in base p, little-endian; the vector
/// has one entry per digit position of n + r.
std::vector<bool> carry_flags(const DigitVector& n, const DigitVector& r);

}  // namespace pqcat
