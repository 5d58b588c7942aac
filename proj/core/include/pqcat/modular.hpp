#pragma once

#include <cstdint>
#include <vector>

#include "pqcat/digits.hpp"

namespace pqcat {

/// C(m, n) = p^e0 * u with p not dividing u; unit_residue is u mod p^q.
struct GranvilleResult {
  std::uint64_t e0 = 0;
  std::uint64_t unit_residue = 1;

  friend bool operator==(const GranvilleResult&, const GranvilleResult&) = default;
};

/// Residues of binomial coefficients modulo a fixed prime power p^q.
///
/// C(m, n) / p^e0 is congruent to
///
///     s^{e_{q-1}} * prod_j  M_j!_p / (N_j!_p * R_j!_p)   (mod p^q)
///
/// where r = m - n, N_j = floor(n / p^j) mod p^q (the q-digit window of n
/// starting at digit j) and likewise M_j, R_j; e_j counts the carries at
/// digit positions >= j when adding n and r in base p; and s = -1, except
/// s = +1 when p = 2 and q >= 3. k!_p is the product of the integers
/// <= k that are prime to p.
///
/// The engine tabulates k!_p for k < p^q once, so repeated queries cost
/// O(digits of m) each. The modulus must fit a machine word.
class GranvilleEngine {
 public:
  explicit GranvilleEngine(PrimePower pp);

  const PrimePower& prime_power() const noexcept { return pp_; }

  /// Requires 0 <= n <= m; throws DomainError otherwise.
  GranvilleResult binom(const BigInt& m, const BigInt& n) const;

  /// n!_p mod p^q for any n >= 0.
  std::uint64_t factorial_p(const BigInt& n) const;

  /// Product of all units in [1, p^q], reduced mod p^q.
  std::uint64_t unit_block_product() const noexcept { return block_product_; }

 private:
  std::uint64_t window_factorial(std::uint64_t k) const;

  PrimePower pp_;
  std::uint64_t modulus_;
  std::uint64_t block_product_;
  std::vector<std::uint64_t> table_;
};

/// n!_p mod p^q, using the periodicity of the unit product over blocks of
/// length p^q.
std::uint64_t factorial_p_mod(const BigInt& n, const PrimePower& pp);

/// C(m, n) mod p as the digit-wise product of C(m_i, n_i). n > m gives 0.
std::uint64_t lucas_binom_mod_p(const BigInt& m, const BigInt& n, Prime p);

GranvilleResult granville_binom_mod_pq(const BigInt& m, const BigInt& n, const PrimePower& pp);

/// a^{-1} mod p^q for a prime to p (a may be negative or huge).
std::uint64_t inverse_mod_pq(const BigInt& a, const PrimePower& pp);

}  // namespace pqcat
