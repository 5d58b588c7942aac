#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pqcat/digits.hpp"

namespace pqcat {

// An exception for p^q is an n >= 1 with p^q not dividing F(p^q, n). Every
// exception satisfies (p^q - 1)n + 1 = sum of p^{alpha_i} with few terms;
// the shapes below record which structural family produced a value.

/// n = (p^{tq} - 1) / (p^q - 1), t >= 1.
struct PurePower {
  unsigned t = 1;
  friend bool operator==(const PurePower&, const PurePower&) = default;
};

/// q = 2 only: n = (sum_k c_k p^{2 i_k + 1} - 1) / (p^2 - 1) with
/// i_1 < ... < i_s, 1 <= c_k < p and sum c_k = p (hence s >= 2).
struct OddPowerSum {
  struct Part {
    unsigned coefficient;
    unsigned index;
    friend bool operator==(const Part&, const Part&) = default;
  };
  std::vector<Part> parts;
  friend bool operator==(const OddPowerSum&, const OddPowerSum&) = default;
};

/// q >= 3: n = (sum_i p^{alpha_i} - 1) / (p^q - 1) with l = m(p-1)+1 terms,
/// 1 <= m <= q-1, and sum_i p^{alpha_i mod q} = 1 (mod p^q - 1).
/// exponents is sorted ascending.
struct GeneralSum {
  std::vector<unsigned> exponents;
  friend bool operator==(const GeneralSum&, const GeneralSum&) = default;
};

using ExceptionShape = std::variant<PurePower, OddPowerSum, GeneralSum>;

/// One exceptional value together with every shape that produces it.
/// Shapes can collide on a value; all of them are kept, first-found first.
struct ExceptionForm {
  BigInt value;
  PrimePower pp;
  std::vector<ExceptionShape> shapes;
};

/// Reconstructs n from a shape. Throws DomainError when the shape does not
/// yield an integer.
BigInt shape_value(const ExceptionShape& shape, const PrimePower& pp);

std::string describe(const ExceptionShape& shape);

/// Exceptions n <= bound for q = 1, ascending.
std::vector<ExceptionForm> enumerate_q1(Prime p, const BigInt& bound);

/// Exceptions n <= bound for q = 2, ascending, tagged PurePower or
/// OddPowerSum.
std::vector<ExceptionForm> enumerate_q2(Prime p, const BigInt& bound);

/// Exceptions n <= bound for odd p and q >= 3. Residue-class multisets
/// (j_1..j_l) satisfying the congruence are found first; exponent lifts
/// alpha_i = q t_i + j_i are then enumerated under the bound.
std::vector<ExceptionForm> enumerate_qgeq3(const PrimePower& pp, const BigInt& bound);

/// Limit on the direct scan used when no structural enumerator applies.
struct BruteForceLimits {
  std::uint64_t max_bound = 10'000'000;
};

/// Dispatches on q (and p = 2 with q >= 3, which has no structural
/// enumerator and is scanned directly with catalan_valuation).
std::vector<ExceptionForm> enumerate_exceptions(const PrimePower& pp, const BigInt& bound,
                                                const BruteForceLimits& limits = {});

/// F(p^2, n) mod p^2 for a q = 2 exception: 1 for PurePower, the
/// multinomial p! / (c_1! ... c_s!) mod p^2 for OddPowerSum.
std::uint64_t residue_of_exception(const ExceptionForm& form);
std::uint64_t residue_of_shape(const ExceptionShape& shape, const PrimePower& pp);

/// Number of distinct q = 2 exceptions whose odd exponents come from the
/// first K slots (exponent 2i+1 with i < K), counted combinatorially.
///
/// Such an n is a size-p multiset of slots: multiplicities below p give
/// OddPowerSum values, multiplicity p gives the PurePower value with
/// t = i + 1, and distinct multisets give distinct n. Their number is
/// C(K + p - 1, p); `choices` is K + p - 1, so the result is C(choices, p).
/// For p = 2 and n < 2^1518 the slots are i <= 759, i.e. 761 choices.
BigInt count_exceptions_q2(Prime p, std::uint64_t choices);

}  // namespace pqcat
