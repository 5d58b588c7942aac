#pragma once

#include <cstdint>

#include "pqcat/digits.hpp"
#include "pqcat/modular.hpp"

namespace pqcat {

/// Caps on exact (big-integer) evaluation. Runtime values so callers can
/// scale a run to the machine at hand.
struct ExactLimits {
  std::uint64_t max_sn = 1'000'000;
};

/// F(s, n) = C(sn, n) / ((s - 1)n + 1), exactly. F(s, 0) = 1.
/// Throws DomainError for s < 2 or n < 0 and ResourceError when s*n
/// exceeds limits.max_sn.
BigInt catalan_exact(std::uint64_t s, const BigInt& n, const ExactLimits& limits = {});

/// v_p(F(p^q, n)) = (sigma_p((p^q - 1)n + 1) - 1) / (p - 1). Only digit sums
/// are involved, so n can be astronomically large.
std::uint64_t catalan_valuation(const PrimePower& pp, const BigInt& n);

/// p^q | F(p^q, n).
bool divides(const PrimePower& pp, const BigInt& n);

/// F(p^q, n) mod p^q through F = C(p^q n + 1, n) / (p^q n + 1), where the
/// division is multiplication by a unit.
std::uint64_t catalan_residue_mod_pq(const GranvilleEngine& engine, const BigInt& n);
std::uint64_t catalan_residue_mod_pq(const PrimePower& pp, const BigInt& n);

}  // namespace pqcat
