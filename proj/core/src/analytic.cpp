#include "pqcat/analytic.hpp"

#include <cmath>
#include <optional>

#include "interval.hpp"
#include "pqcat/errors.hpp"

namespace pqcat {
namespace {

using detail::Interval;

constexpr unsigned long kMaxModulus = 99999;

Interval logarithm(const Interval& x, LogBase base) {
  return base == LogBase::natural ? detail::log(x) : detail::log10(x);
}

SideBounds bounds_of(const Interval& x) {
  return SideBounds{x.lower_string(), x.upper_string(), x.log2_midpoint()};
}

struct Sides {
  Interval lhs;
  Interval rhs;
};

Sides evaluate(const InequalityInstance& inst, const BigInt& n, mpfr_prec_t prec) {
  const BigInt& modulus = inst.pp.modulus();
  const Interval n_iv = Interval::from_integer(n, prec);
  const Interval upper_arg = Interval::from_integer(modulus * n + 1, prec);
  const Interval lower_arg = Interval::from_integer((modulus - 1) * n + 1, prec);

  const Interval shrink = Interval::from_ratio(399999, 400000, prec);  // 1 - a
  const Interval grow = Interval::from_ratio(400001, 400000, prec);    // 1 + a
  Interval lhs = shrink * detail::sqrt(upper_arg) - grow * detail::sqrt(lower_arg);

  const Interval n_power = detail::pow_ratio(n_iv, 23, 48);
  const Interval log_n = logarithm(n_iv, inst.log_base);

  if (inst.form == InequalityForm::general) {
    const Interval c_main = Interval::from_decimal("21.683", prec);
    const Interval mod_power = detail::pow_ratio(Interval::from_integer(modulus, prec), 23, 48);  // p^{23q/48}
    const Interval log_term = detail::pow_ratio(
        logarithm(Interval::from_integer(BigInt(256) * ((modulus - 1) * n + 1), prec), inst.log_base), 11, 4);
    const Interval tail =
        Interval::from_ratio(11, 8, prec) *
        (Interval::from_integer(3, prec) * log_n +
         Interval::from_integer(2 * inst.pp.exponent(), prec) *
             logarithm(Interval::from_integer(inst.pp.prime(), prec), inst.log_base));
    return {std::move(lhs), c_main * mod_power * n_power * log_term + tail};
  }

  const SpecializedConstants constants = specialized_constants(inst.pp);
  const Interval log_term = detail::pow_ratio(
      logarithm(Interval::from_integer(BigInt(static_cast<unsigned long>(constants.log_scale)) * n + 1, prec),
                inst.log_base),
      11, 4);
  Interval rhs = Interval::from_decimal(constants.c_main, prec) * n_power * log_term +
                 Interval::from_ratio(33, 8, prec) * log_n +
                 Interval::from_decimal(constants.c_tail, prec);
  return {std::move(lhs), std::move(rhs)};
}

std::optional<Verdict> separate(const Interval& lhs, const Interval& rhs) {
  if (mpfr_greater_p(lhs.lo.get(), rhs.hi.get())) return Verdict::lhs_greater;
  if (mpfr_less_p(lhs.hi.get(), rhs.lo.get())) return Verdict::lhs_less;
  return std::nullopt;
}

bool holds_at_exponent(const InequalityInstance& inst, unsigned e, Tau0Bracket& stats) {
  BigInt n = 1;
  n <<= e;
  const InequalityEvaluation eval = inequality_sides(inst, n);
  ++stats.evaluations;
  stats.max_precision_used = std::max(stats.max_precision_used, eval.precision_used);
  return eval.verdict == Verdict::lhs_greater;
}

}  // namespace

void validate(const InequalityInstance& inst) {
  if (inst.pp.modulus() > kMaxModulus) {
    throw DomainError("the explicit inequality needs p^q <= 99999, got " + inst.pp.to_string());
  }
  if (inst.precision < 64) throw DomainError("working precision must be at least 64 bits");
  if (inst.max_precision < inst.precision) {
    throw DomainError("precision cap is below the working precision");
  }
  if (inst.form == InequalityForm::specialized) (void)specialized_constants(inst.pp);
}

InequalityEvaluation inequality_sides(const InequalityInstance& inst, const BigInt& n) {
  validate(inst);
  if (n < 1) throw DomainError("inequality_sides needs n >= 1");
  for (unsigned prec = inst.precision;; prec *= 2) {
    const Sides sides = evaluate(inst, n, prec);
    if (auto verdict = separate(sides.lhs, sides.rhs)) {
      return InequalityEvaluation{*verdict, prec, bounds_of(sides.lhs), bounds_of(sides.rhs)};
    }
    if (prec * 2 > inst.max_precision) {
      throw PrecisionError("inequality sides at n = " + n.get_str() +
                           " do not separate at " + std::to_string(prec) + " bits");
    }
  }
}

Tau0Bracket find_tau0(const InequalityInstance& inst, const Tau0Search& search) {
  validate(inst);
  Tau0Bracket result;
  unsigned failing = 0;  // 2^0 = 1 is only used as the lower bracket end
  unsigned holding = 1;
  while (!holds_at_exponent(inst, holding, result)) {
    failing = holding;
    if (holding >= search.exponent_cap) {
      throw ResourceError("no crossover found up to exponent " + std::to_string(search.exponent_cap));
    }
    holding = std::min(holding * 2, search.exponent_cap);
  }
  while (holding - failing > 1) {
    const unsigned mid = failing + (holding - failing) / 2;
    if (holds_at_exponent(inst, mid, result)) {
      holding = mid;
    } else {
      failing = mid;
    }
  }
  result.exponent = holding;
  for (unsigned e = holding + 1; e <= holding + search.verify_span; ++e) {
    if (!holds_at_exponent(inst, e, result)) {
      throw DomainError("inequality fails again at n = 2^" + std::to_string(e) +
                        " above the crossover 2^" + std::to_string(holding));
    }
  }
  result.verified_through = holding + search.verify_span;
  return result;
}

BigInt tau1(const PrimePower& pp, const BigInt& tau0, unsigned precision) {
  if (pp.modulus() > kMaxModulus) {
    throw DomainError("tau1 needs p^q <= 99999, got " + pp.to_string());
  }
  BigInt first;
  for (unsigned prec = std::max(precision, 64u);; prec *= 2) {
    const Interval e60 = detail::exp(Interval::from_integer(60, prec));
    const Interval ratio =
        (e60 - Interval::from_integer(1, prec)) / Interval::from_integer(pp.modulus() - 1, prec);
    BigInt lo_ceil, hi_ceil;
    mpfr_get_z(lo_ceil.get_mpz_t(), ratio.lo.get(), MPFR_RNDU);
    mpfr_get_z(hi_ceil.get_mpz_t(), ratio.hi.get(), MPFR_RNDU);
    if (lo_ceil == hi_ceil) {
      first = lo_ceil;
      break;
    }
    if (prec > 4096) throw PrecisionError("cannot pin ceil((e^60 - 1)/(p^q - 1))");
  }
  BigInt second;
  mpz_pow_ui(second.get_mpz_t(), pp.modulus().get_mpz_t(), 5);
  second *= 9765625;  // 5^10
  BigInt out = first;
  if (second > out) out = second;
  if (tau0 > out) out = tau0;
  return out;
}

SpecializedConstants specialized_constants(const PrimePower& pp) {
  if (pp.prime() == 2 && pp.exponent() == 2) return {"42.1311", "1.65566", 768};
  if (pp.prime() == 3 && pp.exponent() == 2) return {"26.04", "2.62417", 2048};
  throw DomainError("specialized constants exist for 2^2 and 3^2 only, not " + pp.to_string());
}

DerivedConstants derive_specialization(const PrimePower& pp, LogBase base) {
  const double p = static_cast<double>(pp.prime());
  const double q = static_cast<double>(pp.exponent());
  const double log_p = base == LogBase::natural ? std::log(p) : std::log10(p);
  return {21.683 * std::pow(p, 23.0 * q / 48.0), 11.0 / 8.0 * 2.0 * q * log_p};
}

bool agrees_to_significant_figures(double a, double b, int figures) {
  if (b == 0.0) return a == 0.0;
  const double magnitude = std::floor(std::log10(std::fabs(b)));
  const double half_unit = 0.5 * std::pow(10.0, magnitude - figures + 1);
  return std::fabs(a - b) <= half_unit;
}

CrudeComparison crude_lower_bound(const PrimePower& pp, const BigInt& n, unsigned precision,
                                  unsigned max_precision) {
  if (n < 1) throw DomainError("crude_lower_bound needs n >= 1");
  const InequalityInstance inst{pp, InequalityForm::general, LogBase::decimal, precision, max_precision};
  validate(inst);
  for (unsigned prec = precision;; prec *= 2) {
    const Interval shrink = Interval::from_ratio(399999, 400000, prec);
    const Interval grow = Interval::from_ratio(400001, 400000, prec);
    const Interval modulus = Interval::from_integer(pp.modulus(), prec);
    const Interval factor = shrink * shrink / grow -
                            modulus / Interval::from_decimal("100000.25", prec);
    const Interval crude = factor * detail::sqrt(Interval::from_integer(n, prec)) /
                           (Interval::from_integer(2, prec) * detail::sqrt(modulus));
    const Interval lhs = evaluate(inst, n, prec).lhs;
    if (mpfr_lessequal_p(crude.hi.get(), lhs.lo.get())) {
      return {bounds_of(crude), bounds_of(lhs), true, prec};
    }
    if (mpfr_greater_p(crude.lo.get(), lhs.hi.get())) {
      return {bounds_of(crude), bounds_of(lhs), false, prec};
    }
    if (prec * 2 > max_precision) {
      throw PrecisionError("crude bound and left side do not separate at n = " + n.get_str());
    }
  }
}

std::string to_string(LogBase base) { return base == LogBase::natural ? "natural" : "decimal"; }

std::string to_string(InequalityForm form) {
  return form == InequalityForm::general ? "general" : "specialized";
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::lhs_greater ? "lhs_greater" : "lhs_less";
}

}  // namespace pqcat
