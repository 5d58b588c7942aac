#include "interval.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <vector>

#include "pqcat/errors.hpp"

namespace pqcat::detail {
namespace {

mpfr_prec_t common_precision(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

std::string render(mpfr_srcptr value, int digits, mpfr_rnd_t mode) {
  std::vector<char> buffer(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*R*g", digits, mode, value);
  return buffer.data();
}

void require_nonnegative(const Interval& a, const char* op) {
  if (mpfr_sgn(a.lo.get()) < 0) {
    throw DomainError(std::string("interval ") + op + " of a possibly negative argument");
  }
}

}  // namespace

Interval Interval::from_integer(const mpz_class& value, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_z(out.lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_decimal(const std::string& text, mpfr_prec_t precision) {
  Interval out(precision);
  if (mpfr_set_str(out.lo.get(), text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(out.hi.get(), text.c_str(), 10, MPFR_RNDU) != 0) {
    throw DomainError("not a decimal constant: " + text);
  }
  return out;
}

Interval Interval::from_ratio(long numerator, long denominator, mpfr_prec_t precision) {
  return from_integer(numerator, precision) / from_integer(denominator, precision);
}

std::string Interval::lower_string(int digits) const { return render(lo.get(), digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return render(hi.get(), digits, MPFR_RNDU); }

double Interval::log2_midpoint() const {
  Real mid(precision());
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_abs(mid.get(), mid.get(), MPFR_RNDN);
  mpfr_log2(mid.get(), mid.get(), MPFR_RNDN);
  return mpfr_get_d(mid.get(), MPFR_RNDN);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(common_precision(a, b));
  mpfr_add(out.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(out.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(common_precision(a, b));
  mpfr_sub(out.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(out.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t precision = common_precision(a, b);
  Interval out(precision);
  Real candidate(precision);
  bool first = true;
  for (mpfr_srcptr x : {a.lo.get(), a.hi.get()}) {
    for (mpfr_srcptr y : {b.lo.get(), b.hi.get()}) {
      mpfr_mul(candidate.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(candidate.get(), out.lo.get())) mpfr_set(out.lo.get(), candidate.get(), MPFR_RNDD);
      mpfr_mul(candidate.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(candidate.get(), out.hi.get())) mpfr_set(out.hi.get(), candidate.get(), MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo.get()) <= 0 && mpfr_sgn(b.hi.get()) >= 0) {
    throw DomainError("interval division by an interval containing zero");
  }
  const mpfr_prec_t precision = common_precision(a, b);
  Interval out(precision);
  Real candidate(precision);
  bool first = true;
  for (mpfr_srcptr x : {a.lo.get(), a.hi.get()}) {
    for (mpfr_srcptr y : {b.lo.get(), b.hi.get()}) {
      mpfr_div(candidate.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(candidate.get(), out.lo.get())) mpfr_set(out.lo.get(), candidate.get(), MPFR_RNDD);
      mpfr_div(candidate.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(candidate.get(), out.hi.get())) mpfr_set(out.hi.get(), candidate.get(), MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

Interval sqrt(const Interval& a) {
  require_nonnegative(a, "sqrt");
  Interval out(a.precision());
  mpfr_sqrt(out.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_sqrt(out.hi.get(), a.hi.get(), MPFR_RNDU);
  return out;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo.get()) <= 0) throw DomainError("interval log of a non-positive argument");
  Interval out(a.precision());
  mpfr_log(out.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_log(out.hi.get(), a.hi.get(), MPFR_RNDU);
  return out;
}

Interval log10(const Interval& a) {
  if (mpfr_sgn(a.lo.get()) <= 0) throw DomainError("interval log10 of a non-positive argument");
  Interval out(a.precision());
  mpfr_log10(out.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_log10(out.hi.get(), a.hi.get(), MPFR_RNDU);
  return out;
}

Interval exp(const Interval& a) {
  Interval out(a.precision());
  mpfr_exp(out.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_exp(out.hi.get(), a.hi.get(), MPFR_RNDU);
  return out;
}

Interval rootn(const Interval& a, unsigned long n) {
  require_nonnegative(a, "root");
  Interval out(a.precision());
  mpfr_rootn_ui(out.lo.get(), a.lo.get(), n, MPFR_RNDD);
  mpfr_rootn_ui(out.hi.get(), a.hi.get(), n, MPFR_RNDU);
  return out;
}

Interval pow(const Interval& a, unsigned long n) {
  require_nonnegative(a, "power");
  Interval out(a.precision());
  mpfr_pow_ui(out.lo.get(), a.lo.get(), n, MPFR_RNDD);
  mpfr_pow_ui(out.hi.get(), a.hi.get(), n, MPFR_RNDU);
  return out;
}

Interval pow_ratio(const Interval& a, unsigned long num, unsigned long den) {
  return pow(rootn(a, den), num);
}

}  // namespace pqcat::detail
