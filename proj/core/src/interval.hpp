#pragma once

// Closed intervals of MPFR reals with outward rounding. Internal to the
// analytic module; every operation returns an interval guaranteed to
// contain the exact result.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace pqcat::detail {

class Real {
 public:
  explicit Real(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(value_); }

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

struct Interval {
  Real lo;
  Real hi;

  explicit Interval(mpfr_prec_t precision) : lo(precision), hi(precision) {}

  mpfr_prec_t precision() const noexcept { return lo.precision(); }

  static Interval from_integer(const mpz_class& value, mpfr_prec_t precision);
  static Interval from_decimal(const std::string& text, mpfr_prec_t precision);
  static Interval from_ratio(long numerator, long denominator, mpfr_prec_t precision);

  /// Decimal rendering of the bounds with `digits` significant digits.
  std::string lower_string(int digits = 20) const;
  std::string upper_string(int digits = 20) const;
  double log2_midpoint() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// b must not contain zero.
Interval operator/(const Interval& a, const Interval& b);

// The following require a.lo >= 0 (log: a.lo > 0).
Interval sqrt(const Interval& a);
Interval log(const Interval& a);
Interval log10(const Interval& a);
Interval exp(const Interval& a);
Interval rootn(const Interval& a, unsigned long n);
Interval pow(const Interval& a, unsigned long n);

/// a^(num/den) for a >= 0, as (a^(1/den))^num.
Interval pow_ratio(const Interval& a, unsigned long num, unsigned long den);

}  // namespace pqcat::detail
