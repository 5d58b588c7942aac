#include "pqcat/modular.hpp"

#include <algorithm>

#include "pqcat/errors.hpp"
#include "word.hpp"

namespace pqcat {
namespace {

// Moduli up to this size get a full k!_p table.
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

std::uint64_t partial_unit_product(std::uint64_t upto, std::uint64_t p, std::uint64_t modulus) {
  std::uint64_t acc = 1 % modulus;
  for (std::uint64_t k = 1; k <= upto; ++k) {
    if (k % p != 0) acc = detail::mul_mod(acc, k, modulus);
  }
  return acc;
}

// q-digit window starting at digit j, i.e. floor(x / p^j) mod p^q.
std::uint64_t window(const DigitVector& d, std::size_t j, unsigned q) {
  std::uint64_t value = 0;
  for (unsigned k = q; k-- > 0;) value = value * d.base + d[j + k];
  return value;
}

std::uint64_t small_binom_mod_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num = detail::mul_mod(num, a - b + i, p);
    den = detail::mul_mod(den, i, p);
  }
  return detail::mul_mod(num, detail::inverse_mod(den, p), p);
}

}  // namespace

GranvilleEngine::GranvilleEngine(PrimePower pp)
    : pp_(std::move(pp)), modulus_(pp_.modulus_word()) {
  const std::uint64_t p = pp_.prime();
  if (modulus_ <= kTableLimit) {
    table_.resize(modulus_ + 1);
    table_[0] = 1 % modulus_;
    for (std::uint64_t k = 1; k <= modulus_; ++k) {
      table_[k] = k % p == 0 ? table_[k - 1] : detail::mul_mod(table_[k - 1], k, modulus_);
    }
    block_product_ = table_[modulus_];
  } else {
    block_product_ = partial_unit_product(modulus_, p, modulus_);
  }
}

std::uint64_t GranvilleEngine::window_factorial(std::uint64_t k) const {
  if (!table_.empty()) return table_[k];
  return partial_unit_product(k, pp_.prime(), modulus_);
}

std::uint64_t GranvilleEngine::factorial_p(const BigInt& n) const {
  if (sgn(n) < 0) throw DomainError("factorial_p: negative input");
  BigInt blocks;
  const std::uint64_t rest =
      mpz_fdiv_q_ui(blocks.get_mpz_t(), n.get_mpz_t(), modulus_);
  // The block product is +-1, so only the parity of the block count matters,
  // but the power is taken generically to stay independent of that fact.
  BigInt power;
  const BigInt base = static_cast<unsigned long>(block_product_);
  const BigInt mod = static_cast<unsigned long>(modulus_);
  mpz_powm(power.get_mpz_t(), base.get_mpz_t(), blocks.get_mpz_t(), mod.get_mpz_t());
  return detail::mul_mod(power.get_ui(), window_factorial(rest), modulus_);
}

GranvilleResult GranvilleEngine::binom(const BigInt& m, const BigInt& n) const {
  if (sgn(n) < 0 || n > m) throw DomainError("granville: requires 0 <= n <= m");
  const std::uint64_t p = pp_.prime();
  const unsigned q = pp_.exponent();

  const DigitVector dm = to_base_p(m, p);
  const DigitVector dn = to_base_p(n, p);
  const DigitVector dr = to_base_p(BigInt(m - n), p);
  const std::vector<bool> carries = carry_flags(dn, dr);

  std::uint64_t e0 = 0;
  std::uint64_t tail = 0;  // e_{q-1}
  for (std::size_t i = 0; i < carries.size(); ++i) {
    if (!carries[i]) continue;
    ++e0;
    if (i + 1 >= q) ++tail;
  }

  std::uint64_t numerator = 1 % modulus_;
  std::uint64_t denominator = 1 % modulus_;
  for (std::size_t j = 0; j < dm.size(); ++j) {
    numerator = detail::mul_mod(numerator, window_factorial(window(dm, j, q)), modulus_);
    denominator = detail::mul_mod(denominator, window_factorial(window(dn, j, q)), modulus_);
    denominator = detail::mul_mod(denominator, window_factorial(window(dr, j, q)), modulus_);
  }

  std::uint64_t unit =
      detail::mul_mod(numerator, detail::inverse_mod(denominator, modulus_), modulus_);
  const bool positive_sign = p == 2 && q >= 3;
  if (!positive_sign && (tail & 1) != 0) unit = (modulus_ - unit) % modulus_;
  return {e0, unit};
}

std::uint64_t factorial_p_mod(const BigInt& n, const PrimePower& pp) {
  if (sgn(n) < 0) throw DomainError("factorial_p_mod: negative input");
  const std::uint64_t modulus = pp.modulus_word();
  // Small n never needs the tabulating engine.
  if (n < static_cast<unsigned long>(modulus)) {
    return partial_unit_product(n.get_ui(), pp.prime(), modulus);
  }
  return GranvilleEngine(pp).factorial_p(n);
}

std::uint64_t lucas_binom_mod_p(const BigInt& m, const BigInt& n, Prime p) {
  if (sgn(m) < 0 || sgn(n) < 0) throw DomainError("lucas: negative input");
  if (n > m) return 0;
  const DigitVector dm = to_base_p(m, p);
  const DigitVector dn = to_base_p(n, p);
  std::uint64_t acc = 1 % p.value();
  for (std::size_t i = 0; i < dm.size() && acc != 0; ++i) {
    acc = detail::mul_mod(acc, small_binom_mod_p(dm[i], dn[i], p.value()), p.value());
  }
  return acc;
}

GranvilleResult granville_binom_mod_pq(const BigInt& m, const BigInt& n, const PrimePower& pp) {
  return GranvilleEngine(pp).binom(m, n);
}

std::uint64_t inverse_mod_pq(const BigInt& a, const PrimePower& pp) {
  const std::uint64_t modulus = pp.modulus_word();
  const std::uint64_t reduced = mpz_fdiv_ui(a.get_mpz_t(), modulus);
  if (reduced % pp.prime() == 0) {
    throw DomainError("inverse_mod_pq: argument is divisible by " + std::to_string(pp.prime()));
  }
  return detail::inverse_mod(reduced, modulus);
}

}  // namespace pqcat
