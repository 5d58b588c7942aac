#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pqcat/analytic.hpp"
#include "pqcat/errors.hpp"

using namespace pqcat;

namespace {

InequalityInstance instance(unsigned long p, unsigned q, InequalityForm form = InequalityForm::general,
                            LogBase base = LogBase::decimal, unsigned precision = 256) {
  InequalityInstance inst{PrimePower(p, q)};
  inst.form = form;
  inst.log_base = base;
  inst.precision = precision;
  return inst;
}

Verdict verdict_at(const InequalityInstance& inst, const mpz_class& n) {
  return inequality_sides(inst, n).verdict;
}

const mpz_class two_1518 = oracle::ipow(2, 1518);
const mpz_class three_956 = oracle::ipow(3, 956);

}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(instance(2, 2)));
  CHECK_NOTHROW(validate(instance(99991, 1)));
  CHECK_THROWS_AS(validate(instance(317, 2)), DomainError);  // 100489
  CHECK_THROWS_AS(validate(instance(2, 2, InequalityForm::general, LogBase::decimal, 32)), DomainError);
  CHECK_THROWS_AS(validate(instance(5, 2, InequalityForm::specialized)), DomainError);
  CHECK_NOTHROW(validate(instance(3, 2, InequalityForm::specialized)));
  CHECK_THROWS_AS(inequality_sides(instance(2, 2), 0), DomainError);
}

TEST_CASE("threshold witnesses") {
  const auto g22 = instance(2, 2);
  const auto s32 = instance(3, 2, InequalityForm::specialized);
  CHECK(verdict_at(g22, two_1518) == Verdict::lhs_greater);
  CHECK(verdict_at(instance(2, 2, InequalityForm::specialized), two_1518) == Verdict::lhs_greater);
  CHECK(verdict_at(s32, three_956) == Verdict::lhs_greater);
  CHECK(verdict_at(g22, oracle::ipow(2, 100)) == Verdict::lhs_less);
  CHECK(verdict_at(instance(3, 2), oracle::ipow(2, 100)) == Verdict::lhs_less);
  CHECK(verdict_at(s32, oracle::ipow(2, 100)) == Verdict::lhs_less);
  CHECK(verdict_at(g22, 1000000) == Verdict::lhs_less);
}

TEST_CASE("general (3,2) form and natural logarithms do not reach the witnesses") {
  CHECK(verdict_at(instance(3, 2), three_956) == Verdict::lhs_less);
  CHECK(verdict_at(instance(2, 2, InequalityForm::general, LogBase::natural), two_1518) == Verdict::lhs_less);
  CHECK(verdict_at(instance(3, 2, InequalityForm::specialized, LogBase::natural), three_956) == Verdict::lhs_less);
}

TEST_CASE("verdicts are stable under precision doubling") {
  for (auto inst : {instance(2, 2), instance(3, 2), instance(3, 2, InequalityForm::specialized),
                    instance(2, 2, InequalityForm::specialized, LogBase::natural)}) {
    for (const mpz_class& n : {two_1518, three_956, oracle::ipow(2, 100), mpz_class(12345)}) {
      const Verdict base = verdict_at(inst, n);
      for (unsigned prec : {64u, 128u, 512u, 1024u}) {
        inst.precision = prec;
        CHECK(verdict_at(inst, n) == base);
      }
      inst.precision = 256;
    }
  }
}

TEST_CASE("side bounds are ordered decimal strings") {
  const auto e = inequality_sides(instance(2, 2), two_1518);
  CHECK(e.precision_used >= 256);
  CHECK(std::stod(e.lhs.lower) <= std::stod(e.lhs.upper));
  CHECK(std::stod(e.rhs.lower) <= std::stod(e.rhs.upper));
  CHECK(std::stod(e.lhs.lower) > std::stod(e.rhs.upper));
  CHECK(e.lhs.log2 == doctest::Approx(758.2).epsilon(0.01));
}

TEST_CASE("find_tau0 brackets") {
  Tau0Search quick;
  quick.verify_span = 64;
  const auto g22 = find_tau0(instance(2, 2), quick);
  CHECK(g22.exponent == 1518);
  CHECK(g22.verified_through == 1518 + 64);
  CHECK(find_tau0(instance(2, 2, InequalityForm::specialized), quick).exponent == 1518);
  CHECK(find_tau0(instance(3, 2, InequalityForm::specialized), quick).exponent == 1516);
  CHECK(find_tau0(instance(3, 2), quick).exponent == 1584);
  CHECK(find_tau0(instance(2, 2, InequalityForm::general, LogBase::natural), quick).exponent == 1698);
  CHECK(find_tau0(instance(3, 2, InequalityForm::general, LogBase::natural), quick).exponent == 1763);
  CHECK(find_tau0(instance(2, 2, InequalityForm::specialized, LogBase::natural), quick).exponent == 1698);
  CHECK(find_tau0(instance(3, 2, InequalityForm::specialized, LogBase::natural), quick).exponent == 1696);
  // 3^956 lies between 2^1515 and 2^1516.
  CHECK(oracle::ipow(2, 1515) < three_956);
  CHECK(three_956 < oracle::ipow(2, 1516));

  const auto low = find_tau0(instance(2, 2, InequalityForm::general, LogBase::decimal, 64), quick);
  CHECK(low.exponent == g22.exponent);

  Tau0Search capped;
  capped.exponent_cap = 1000;
  CHECK_THROWS_AS(find_tau0(instance(2, 2), capped), ResourceError);
}

TEST_CASE("tau1") {
  const mpz_class first22("38066912993856142788765240");
  const mpz_class first32("14275092372696053545786965");
  CHECK(tau1(PrimePower(2, 2), 0) == first22);
  CHECK(tau1(PrimePower(3, 2), 0) == first32);
  CHECK(tau1(PrimePower(2, 2), two_1518) == two_1518);
  CHECK(oracle::ipow(5, 10) * oracle::ipow(2, 10) == mpz_class("10000000000"));
  CHECK(oracle::ipow(5, 10) * oracle::ipow(3, 10) == oracle::ipow(15, 10));
  // p^q large enough that the middle term wins.
  const PrimePower big(99991, 1);
  const mpz_class middle = oracle::ipow(5, 10) * oracle::ipow(99991, 5);
  CHECK(tau1(big, 0) == middle);
  CHECK(tau1(big, 5) == middle);
}

TEST_CASE("specialized constants against the general form") {
  const auto s22 = specialized_constants(PrimePower(2, 2));
  const auto s32 = specialized_constants(PrimePower(3, 2));
  CHECK(s22.c_main == "42.1311");
  CHECK(s22.c_tail == "1.65566");
  CHECK(s22.log_scale == 768);
  CHECK(s32.c_main == "26.04");
  CHECK(s32.c_tail == "2.62417");
  CHECK(s32.log_scale == 2048);
  CHECK_THROWS_AS(specialized_constants(PrimePower(5, 2)), DomainError);

  const auto d22 = derive_specialization(PrimePower(2, 2), LogBase::decimal);
  const auto d32 = derive_specialization(PrimePower(3, 2), LogBase::decimal);
  CHECK(agrees_to_significant_figures(d22.c_main, 42.1311, 4));
  CHECK_FALSE(agrees_to_significant_figures(d32.c_main, 26.04, 4));
  CHECK(d32.c_main == doctest::Approx(62.138).epsilon(1e-4));
  CHECK(agrees_to_significant_figures(d22.c_tail, 1.65566, 6));
  CHECK(agrees_to_significant_figures(d32.c_tail, 2.62417, 6));
  const auto n22 = derive_specialization(PrimePower(2, 2), LogBase::natural);
  CHECK_FALSE(agrees_to_significant_figures(n22.c_tail, 1.65566, 2));
  CHECK(n22.c_tail == doctest::Approx(3.8123).epsilon(1e-4));
  CHECK(n22.c_main == d22.c_main);
}

TEST_CASE("agrees_to_significant_figures") {
  CHECK(agrees_to_significant_figures(42.13152, 42.1311, 4));
  CHECK_FALSE(agrees_to_significant_figures(42.13152, 42.1311, 6));
  CHECK(agrees_to_significant_figures(-1.0, -1.0, 3));
  CHECK(agrees_to_significant_figures(0.0, 0.0, 3));
}

TEST_CASE("crude lower bound sits below the left side") {
  for (auto [p, q] : {std::pair{2ul, 2u}, {3ul, 2u}, {7ul, 3u}, {99991ul, 1u}}) {
    for (unsigned e : {1u, 10u, 100u, 1000u, 1518u, 3000u}) {
      const auto c = crude_lower_bound(PrimePower(p, q), oracle::ipow(2, e));
      INFO("p=" << p << " q=" << q << " e=" << e);
      CHECK(c.crude_below_lhs);
    }
  }
}

TEST_CASE("enum names") {
  CHECK(to_string(LogBase::natural) == "natural");
  CHECK(to_string(LogBase::decimal) == "decimal");
  CHECK(to_string(InequalityForm::specialized) == "specialized");
  CHECK(to_string(Verdict::lhs_greater) == "lhs_greater");
}
