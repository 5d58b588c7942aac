#include "pqcat/digits.hpp"

#include <algorithm>
#include <limits>

#include "pqcat/errors.hpp"
#include "word.hpp"

namespace pqcat {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  if (n < 37 * 37) return true;

  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve witnesses are sufficient for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) {
    throw DomainError("not a prime: " + std::to_string(p));
  }
}

PrimePower::PrimePower(Prime p, unsigned q) : p_(p.value()), q_(q) {
  if (q == 0) throw DomainError("prime power exponent must be >= 1");
  mpz_ui_pow_ui(modulus_.get_mpz_t(), p_, q_);
  fits_word_ = mpz_sizeinbase(modulus_.get_mpz_t(), 2) <= 63;
}

std::uint64_t PrimePower::modulus_word() const {
  if (!fits_word_) {
    throw ResourceError("modulus " + to_string() + " exceeds the 63-bit word limit");
  }
  return modulus_.get_ui();
}

std::string PrimePower::to_string() const {
  return std::to_string(p_) + "^" + std::to_string(q_);
}

BigInt DigitVector::value() const {
  BigInt v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v *= static_cast<unsigned long>(base);
    v += static_cast<unsigned long>(*it);
  }
  return v;
}

std::string DigitVector::to_string() const {
  if (digits.empty()) return "0";
  std::string out;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (base > 10 && !out.empty()) out += '.';
    out += std::to_string(*it);
  }
  return out;
}

DigitVector to_base_p(const BigInt& n, Prime p) {
  if (sgn(n) < 0) throw DomainError("to_base_p: negative input");
  DigitVector out;
  out.base = p.value();
  if (sgn(n) == 0) return out;

  // Peel off chunks of k digits at a time with one bignum division each.
  std::uint64_t chunk = p.value();
  unsigned per_chunk = 1;
  while (chunk <= std::numeric_limits<unsigned long>::max() / p.value()) {
    chunk *= p.value();
    ++per_chunk;
  }

  BigInt rest = n;
  while (sgn(rest) != 0) {
    std::uint64_t low = mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), chunk);
    for (unsigned i = 0; i < per_chunk; ++i) {
      out.digits.push_back(low % p.value());
      low /= p.value();
    }
  }
  while (!out.digits.empty() && out.digits.back() == 0) out.digits.pop_back();
  return out;
}

std::uint64_t sigma_p(const BigInt& n, Prime p) {
  const DigitVector d = to_base_p(n, p);
  std::uint64_t sum = 0;
  for (std::uint64_t digit : d.digits) sum += digit;
  return sum;
}

BigInt legendre_valuation_factorial(const BigInt& n, Prime p) {
  if (sgn(n) < 0) throw DomainError("legendre_valuation_factorial: negative input");
  BigInt total = 0;
  BigInt quotient = n;
  while (sgn(quotient) != 0) {
    mpz_tdiv_q_ui(quotient.get_mpz_t(), quotient.get_mpz_t(), p.value());
    total += quotient;
  }
  return total;
}

std::vector<bool> carry_flags(const DigitVector& n, const DigitVector& r) {
  const std::uint64_t p = n.base;
  const std::size_t len = std::max(n.size(), r.size());
  std::vector<bool> flags;
  flags.reserve(len + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    carry = (n[i] + r[i] + carry >= p) ? 1 : 0;
    flags.push_back(carry == 1);
  }
  return flags;
}

std::uint64_t kummer_carries(const BigInt& n, const BigInt& r, Prime p,
                             std::size_t from_digit) {
  if (sgn(n) < 0 || sgn(r) < 0) throw DomainError("kummer_carries: negative input");
  if (n.fits_ulong_p() && r.fits_ulong_p() &&
      n.get_ui() <= std::numeric_limits<std::uint64_t>::max() - r.get_ui()) {
    return detail::carries_word(n.get_ui(), r.get_ui(), p.value(),
                                static_cast<unsigned>(std::min<std::size_t>(from_digit, 64)));
  }
  const std::vector<bool> flags = carry_flags(to_base_p(n, p), to_base_p(r, p));
  std::uint64_t count = 0;
  for (std::size_t i = from_digit; i < flags.size(); ++i) count += flags[i] ? 1 : 0;
  return count;
}

std::uint64_t binom_valuation(const BigInt& m, const BigInt& n, Prime p) {
  if (sgn(n) < 0 || n > m) throw DomainError("binom_valuation: requires 0 <= n <= m");
  return kummer_carries(n, BigInt(m - n), p, 0);
}

}  // namespace pqcat
