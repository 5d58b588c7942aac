#include "pqcat/exceptions.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pqcat/catalan.hpp"
#include "pqcat/errors.hpp"
#include "word.hpp"

namespace pqcat {
namespace {

using ValueMap = std::map<BigInt, std::vector<ExceptionShape>>;

BigInt power(std::uint64_t p, unsigned e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

// (p^q - 1) * bound + 1: the largest admissible sum of prime powers.
BigInt sum_limit(const PrimePower& pp, const BigInt& bound) {
  return (pp.modulus() - 1) * bound + 1;
}

// Largest e with p^e <= limit (limit >= 1).
unsigned max_exponent(std::uint64_t p, const BigInt& limit) {
  unsigned e = 0;
  BigInt pw = p;
  while (pw <= limit) {
    pw *= static_cast<unsigned long>(p);
    ++e;
  }
  return e;
}

void record(ValueMap& found, const PrimePower& pp, const BigInt& sum, const BigInt& bound,
            ExceptionShape shape) {
  const BigInt denominator = pp.modulus() - 1;
  BigInt n = sum - 1;
  if (!mpz_divisible_p(n.get_mpz_t(), denominator.get_mpz_t())) return;
  mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), denominator.get_mpz_t());
  if (sgn(n) <= 0 || n > bound) return;
  auto& shapes = found[n];
  if (std::find(shapes.begin(), shapes.end(), shape) == shapes.end()) {
    shapes.push_back(std::move(shape));
  }
}

void add_pure_powers(ValueMap& found, const PrimePower& pp, const BigInt& bound) {
  const BigInt limit = sum_limit(pp, bound);
  for (unsigned t = 1;; ++t) {
    const BigInt sum = power(pp.prime(), t * pp.exponent());
    if (sum > limit) break;
    record(found, pp, sum, bound, PurePower{t});
  }
}

std::vector<ExceptionForm> collect(ValueMap&& found, const PrimePower& pp) {
  std::vector<ExceptionForm> out;
  out.reserve(found.size());
  for (auto& [value, shapes] : found) {
    out.push_back(ExceptionForm{value, pp, std::move(shapes)});
  }
  return out;
}

void require_bound(const BigInt& bound) {
  if (sgn(bound) < 0) throw DomainError("enumeration bound must be >= 0");
}

}  // namespace

BigInt shape_value(const ExceptionShape& shape, const PrimePower& pp) {
  const std::uint64_t p = pp.prime();
  BigInt sum = 0;
  if (const auto* pure = std::get_if<PurePower>(&shape)) {
    sum = power(p, pure->t * pp.exponent());
  } else if (const auto* odd = std::get_if<OddPowerSum>(&shape)) {
    if (pp.exponent() != 2) throw DomainError("OddPowerSum shapes require q = 2");
    for (const auto& part : odd->parts) {
      sum += power(p, 2 * part.index + 1) * static_cast<unsigned long>(part.coefficient);
    }
  } else {
    for (unsigned alpha : std::get<GeneralSum>(shape).exponents) sum += power(p, alpha);
  }
  const BigInt denominator = pp.modulus() - 1;
  BigInt n = sum - 1;
  if (!mpz_divisible_p(n.get_mpz_t(), denominator.get_mpz_t())) {
    throw DomainError("shape does not produce an integer: " + describe(shape));
  }
  mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), denominator.get_mpz_t());
  return n;
}

std::string describe(const ExceptionShape& shape) {
  if (const auto* pure = std::get_if<PurePower>(&shape)) {
    return "pure_power(t=" + std::to_string(pure->t) + ")";
  }
  std::string out;
  if (const auto* odd = std::get_if<OddPowerSum>(&shape)) {
    out = "odd_power_sum(";
    for (std::size_t k = 0; k < odd->parts.size(); ++k) {
      if (k != 0) out += ",";
      out += std::to_string(odd->parts[k].coefficient) + "*p^" +
             std::to_string(2 * odd->parts[k].index + 1);
    }
  } else {
    out = "general_sum(";
    const auto& exps = std::get<GeneralSum>(shape).exponents;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (k != 0) out += ",";
      out += "p^" + std::to_string(exps[k]);
    }
  }
  return out + ")";
}

std::vector<ExceptionForm> enumerate_q1(Prime p, const BigInt& bound) {
  require_bound(bound);
  const PrimePower pp(p, 1);
  ValueMap found;
  add_pure_powers(found, pp, bound);
  return collect(std::move(found), pp);
}

std::vector<ExceptionForm> enumerate_q2(Prime p, const BigInt& bound) {
  require_bound(bound);
  const PrimePower pp(p, 2);
  ValueMap found;
  add_pure_powers(found, pp, bound);

  const BigInt limit = sum_limit(pp, bound);
  const std::uint64_t pv = p.value();
  std::vector<BigInt> odd_powers;  // odd_powers[i] = p^{2i+1}
  for (BigInt pw = pv; pw <= limit; pw *= static_cast<unsigned long>(pv * pv)) {
    odd_powers.push_back(pw);
  }

  OddPowerSum current;
  // Walk the slots left to right, spending the coefficient budget p; each
  // slot takes 0 or a coefficient in [1, p-1].
  std::function<void(std::size_t, std::uint64_t, const BigInt&)> place =
      [&](std::size_t slot, std::uint64_t remaining, const BigInt& partial) {
        if (remaining == 0) {
          if (current.parts.size() >= 2) record(found, pp, partial, bound, current);
          return;
        }
        if (slot >= odd_powers.size()) return;
        if (partial + odd_powers[slot] * static_cast<unsigned long>(remaining) > limit) return;
        const std::uint64_t top = std::min<std::uint64_t>(remaining, pv - 1);
        for (std::uint64_t c = 1; c <= top; ++c) {
          current.parts.push_back({static_cast<unsigned>(c), static_cast<unsigned>(slot)});
          place(slot + 1, remaining - c, partial + odd_powers[slot] * static_cast<unsigned long>(c));
          current.parts.pop_back();
        }
        place(slot + 1, remaining, partial);
      };
  place(0, pv, BigInt(0));
  return collect(std::move(found), pp);
}

std::vector<ExceptionForm> enumerate_qgeq3(const PrimePower& pp, const BigInt& bound) {
  require_bound(bound);
  const std::uint64_t p = pp.prime();
  const unsigned q = pp.exponent();
  if (p == 2 || q < 3) {
    throw DomainError("enumerate_qgeq3 requires an odd prime and q >= 3, got " + pp.to_string());
  }
  const std::uint64_t cycle = pp.modulus_word() - 1;  // p^q - 1

  ValueMap found;
  add_pure_powers(found, pp, bound);

  const BigInt limit = sum_limit(pp, bound);
  const unsigned alpha_max = max_exponent(p, limit);
  std::vector<BigInt> powers(alpha_max + 1);
  for (unsigned e = 0; e <= alpha_max; ++e) powers[e] = power(p, e);

  std::vector<std::uint64_t> class_weight(q);  // p^j mod (p^q - 1)
  for (unsigned j = 0; j < q; ++j) class_weight[j] = detail::pow_mod(p, j, cycle);

  std::vector<unsigned> counts(q, 0);
  std::vector<unsigned> exponents;

  // Stage (b): lift each residue class j to exponents q*t + j with t
  // nondecreasing inside the class, pruning on the running sum.
  std::function<void(unsigned, unsigned, unsigned, const BigInt&)> lift =
      [&](unsigned j, unsigned left_in_class, unsigned min_t, const BigInt& partial) {
        if (j == q) {
          GeneralSum shape{exponents};
          std::sort(shape.exponents.begin(), shape.exponents.end());
          record(found, pp, partial, bound, std::move(shape));
          return;
        }
        if (left_in_class == 0) {
          lift(j + 1, j + 1 < q ? counts[j + 1] : 0, 0, partial);
          return;
        }
        BigInt floor_rest = 0;  // every later term at its smallest exponent
        for (unsigned k = j + 1; k < q; ++k) floor_rest += powers[k] * counts[k];
        for (unsigned t = min_t;; ++t) {
          const unsigned alpha = q * t + j;
          if (alpha > alpha_max) break;
          if (partial + powers[alpha] * left_in_class + floor_rest > limit) break;
          exponents.push_back(alpha);
          lift(j, left_in_class - 1, t, partial + powers[alpha]);
          exponents.pop_back();
        }
      };

  // Stage (a): distribute l terms over the q residue classes and keep the
  // distributions whose weighted sum is 1 modulo p^q - 1.
  std::function<void(unsigned, unsigned, std::uint64_t)> distribute =
      [&](unsigned j, unsigned left, std::uint64_t weight) {
        if (j + 1 == q) {
          counts[j] = left;
          weight = (weight + detail::mul_mod(left, class_weight[j], cycle)) % cycle;
          if (weight == 1 % cycle) lift(0, counts[0], 0, BigInt(0));
          return;
        }
        for (unsigned c = 0; c <= left; ++c) {
          counts[j] = c;
          distribute(j + 1, left - c, (weight + detail::mul_mod(c, class_weight[j], cycle)) % cycle);
        }
      };

  for (unsigned m = 1; m + 1 <= q; ++m) {
    const unsigned terms = m * static_cast<unsigned>(p - 1) + 1;
    // Every term is at least 1, so more terms than the limit cannot fit.
    if (BigInt(terms) > limit) break;
    distribute(0, terms, 0);
  }
  return collect(std::move(found), pp);
}

std::vector<ExceptionForm> enumerate_exceptions(const PrimePower& pp, const BigInt& bound,
                                                const BruteForceLimits& limits) {
  require_bound(bound);
  switch (pp.exponent()) {
    case 1:
      return enumerate_q1(pp.prime(), bound);
    case 2:
      return enumerate_q2(pp.prime(), bound);
    default:
      break;
  }
  if (pp.prime() != 2) return enumerate_qgeq3(pp, bound);

  if (bound > static_cast<unsigned long>(limits.max_bound)) {
    throw ResourceError("no structural enumerator for " + pp.to_string() +
                        "; direct scan bound exceeds " + std::to_string(limits.max_bound));
  }
  std::vector<ExceptionForm> out;
  const std::uint64_t last = bound.get_ui();
  for (std::uint64_t n = 1; n <= last; ++n) {
    const BigInt value = static_cast<unsigned long>(n);
    if (catalan_valuation(pp, value) >= pp.exponent()) continue;
    const DigitVector digits = to_base_p((pp.modulus() - 1) * value + 1, 2);
    GeneralSum shape;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] != 0) shape.exponents.push_back(static_cast<unsigned>(i));
    }
    ExceptionShape tagged = shape;
    if (shape.exponents.size() == 1) tagged = PurePower{shape.exponents[0] / pp.exponent()};
    out.push_back(ExceptionForm{value, pp, {std::move(tagged)}});
  }
  return out;
}

std::uint64_t residue_of_shape(const ExceptionShape& shape, const PrimePower& pp) {
  if (pp.exponent() != 2) throw DomainError("residue_of_exception applies to q = 2 only");
  const std::uint64_t modulus = pp.modulus_word();
  if (std::holds_alternative<PurePower>(shape)) return 1 % modulus;
  const auto* odd = std::get_if<OddPowerSum>(&shape);
  if (odd == nullptr) throw DomainError("GeneralSum shapes have no closed-form residue");
  BigInt multinomial;
  mpz_fac_ui(multinomial.get_mpz_t(), pp.prime());
  for (const auto& part : odd->parts) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), part.coefficient);
    mpz_divexact(multinomial.get_mpz_t(), multinomial.get_mpz_t(), f.get_mpz_t());
  }
  return mpz_fdiv_ui(multinomial.get_mpz_t(), modulus);
}

std::uint64_t residue_of_exception(const ExceptionForm& form) {
  if (form.shapes.empty()) throw DomainError("exception form carries no shape");
  return residue_of_shape(form.shapes.front(), form.pp);
}

BigInt count_exceptions_q2(Prime p, std::uint64_t choices) {
  if (choices < 1) throw DomainError("count_exceptions_q2: choices must be >= 1");
  BigInt count;
  mpz_bin_uiui(count.get_mpz_t(), choices, p.value());
  return count;
}

}  // namespace pqcat
