#include "pqcat/catalan.hpp"

#include "pqcat/errors.hpp"
#include "word.hpp"

namespace pqcat {

BigInt catalan_exact(std::uint64_t s, const BigInt& n, const ExactLimits& limits) {
  if (s < 2) throw DomainError("catalan_exact: s must be >= 2");
  if (sgn(n) < 0) throw DomainError("catalan_exact: n must be >= 0");
  const BigInt sn = BigInt(static_cast<unsigned long>(s)) * n;
  if (sn > static_cast<unsigned long>(limits.max_sn)) {
    throw ResourceError("catalan_exact: s*n = " + sn.get_str() + " exceeds the exact limit " +
                        std::to_string(limits.max_sn));
  }
  const unsigned long count = n.get_ui();
  BigInt binom;
  mpz_bin_uiui(binom.get_mpz_t(), sn.get_ui(), count);
  const BigInt denominator = BigInt(static_cast<unsigned long>(s - 1)) * n + 1;
  BigInt result;
  mpz_divexact(result.get_mpz_t(), binom.get_mpz_t(), denominator.get_mpz_t());
  return result;
}

std::uint64_t catalan_valuation(const PrimePower& pp, const BigInt& n) {
  if (sgn(n) < 0) throw DomainError("catalan_valuation: n must be >= 0");
  const BigInt shifted = (pp.modulus() - 1) * n + 1;
  return (sigma_p(shifted, pp.prime()) - 1) / (pp.prime() - 1);
}

bool divides(const PrimePower& pp, const BigInt& n) {
  return catalan_valuation(pp, n) >= pp.exponent();
}

std::uint64_t catalan_residue_mod_pq(const GranvilleEngine& engine, const BigInt& n) {
  if (sgn(n) < 0) throw DomainError("catalan_residue_mod_pq: n must be >= 0");
  const PrimePower& pp = engine.prime_power();
  const std::uint64_t modulus = pp.modulus_word();
  const BigInt top = pp.modulus() * n + 1;
  const GranvilleResult g = engine.binom(top, n);
  if (g.e0 >= pp.exponent()) return 0;
  const std::uint64_t scale = detail::pow_mod(pp.prime(), g.e0, modulus);
  const std::uint64_t unit = detail::mul_mod(g.unit_residue, inverse_mod_pq(top, pp), modulus);
  return detail::mul_mod(unit, scale, modulus);
}

std::uint64_t catalan_residue_mod_pq(const PrimePower& pp, const BigInt& n) {
  return catalan_residue_mod_pq(GranvilleEngine(pp), n);
}

}  // namespace pqcat
