#pragma once

#include <cstdint>
#include <string>

#include "pqcat/digits.hpp"

namespace pqcat {

// Explicit squarefreeness threshold for C(p^q n + 1, n), p^q <= 99999.
// C(p^q n + 1, n) cannot be squarefree once
//
//   (1 - a) sqrt(p^q n + 1) - (1 + a) sqrt((p^q - 1) n + 1)
//     > 21.683 p^{23q/48} n^{23/48} L(256((p^q - 1) n + 1))^{11/4}
//       + (11/8)(3 L(n) + 2q L(p)),         a = 1 / (4 * 10^5),
//
// where L is a logarithm (see LogBase). The specialized form replaces the
// right side for (2,2) and (3,2) by
//
//   c n^{23/48} L(k n + 1)^{11/4} + (33/8) L(n) + c_tail
//
// with the published constants (c, k, c_tail) = (42.1311, 768, 1.65566)
// and (26.04, 2048, 2.62417).

enum class LogBase { natural, decimal };
enum class InequalityForm { general, specialized };

/// Parameters of one evaluation. Default working precision is 256 bits;
/// an indeterminate comparison doubles it up to max_precision.
struct InequalityInstance {
  PrimePower pp;
  InequalityForm form = InequalityForm::general;
  LogBase log_base = LogBase::decimal;
  unsigned precision = 256;
  unsigned max_precision = 4096;
};

/// Throws DomainError unless p^q <= 99999, precision >= 64 and (for the
/// specialized form) (p, q) is (2, 2) or (3, 2).
void validate(const InequalityInstance& instance);

enum class Verdict { lhs_greater, lhs_less };

struct SideBounds {
  std::string lower;   // decimal, rounded down
  std::string upper;   // decimal, rounded up
  double log2 = 0.0;   // log2 of the midpoint, for display
};

struct InequalityEvaluation {
  Verdict verdict = Verdict::lhs_less;
  unsigned precision_used = 0;
  SideBounds lhs;
  SideBounds rhs;
};

/// Both sides at n >= 1, each enclosed in a rigorously rounded interval.
/// The verdict is only returned once the intervals separate; otherwise
/// PrecisionError after max_precision.
InequalityEvaluation inequality_sides(const InequalityInstance& instance, const BigInt& n);

struct Tau0Search {
  unsigned exponent_cap = 8192;
  /// After the crossover is found, the verdict is rechecked at every
  /// exponent in [e, e + verify_span].
  unsigned verify_span = 256;
};

struct Tau0Bracket {
  /// Smallest exponent e with lhs > rhs at n = 2^e; lhs < rhs at 2^{e-1}.
  unsigned exponent = 0;
  unsigned verified_through = 0;
  unsigned evaluations = 0;
  unsigned max_precision_used = 0;
};

/// Coarse doubling on the exponent, then bisection on the bracket. The
/// result is a witness, not a proof that the inequality holds for all
/// larger n. Throws ResourceError when no crossover appears below the cap,
/// and DomainError if the verification grid finds a failure above e.
Tau0Bracket find_tau0(const InequalityInstance& instance, const Tau0Search& search = {});

/// max(ceil((e^60 - 1) / (p^q - 1)), 5^10 p^{5q}, tau0).
BigInt tau1(const PrimePower& pp, const BigInt& tau0, unsigned precision = 256);

struct SpecializedConstants {
  std::string c_main;
  std::string c_tail;
  std::uint64_t log_scale = 0;
};

/// Published constants for (2, 2) and (3, 2); DomainError otherwise.
SpecializedConstants specialized_constants(const PrimePower& pp);

/// Constants the general form predicts for a specialization:
/// c_main = 21.683 p^{23q/48} and c_tail = (11/8) 2q L(p).
struct DerivedConstants {
  double c_main = 0.0;
  double c_tail = 0.0;
};
DerivedConstants derive_specialization(const PrimePower& pp, LogBase base);

/// |a - b| <= half a unit in the figures-th significant digit of b.
bool agrees_to_significant_figures(double a, double b, int figures);

/// The crude lower bound
///   ((1-a)^2/(1+a) - p^q/100000.25) sqrt(n) / (2 sqrt(p^q))
/// for the left side, compared against the left side itself.
struct CrudeComparison {
  SideBounds crude;
  SideBounds lhs;
  bool crude_below_lhs = false;
  unsigned precision_used = 0;
};
CrudeComparison crude_lower_bound(const PrimePower& pp, const BigInt& n, unsigned precision = 256,
                                  unsigned max_precision = 4096);

std::string to_string(LogBase base);
std::string to_string(InequalityForm form);
std::string to_string(Verdict verdict);

}  // namespace pqcat
