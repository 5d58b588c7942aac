#include <doctest.h>

#include "oracles.hpp"
#include "pqcat/errors.hpp"
#include "pqcat/modular.hpp"

using namespace pqcat;

namespace {

std::uint64_t direct_factorial_p(unsigned long n, unsigned long p, unsigned long modulus) {
  std::uint64_t acc = 1 % modulus;
  for (unsigned long k = 1; k <= n; ++k) {
    if (k % p != 0) acc = acc * (k % modulus) % modulus;
  }
  return acc;
}

}  // namespace

TEST_CASE("factorial_p_mod examples") {
  CHECK(factorial_p_mod(5, PrimePower(5, 2)) == 24);
  CHECK(factorial_p_mod(0, PrimePower(3, 2)) == 1);
  CHECK(factorial_p_mod(10, PrimePower(3, 1)) == 2);
  CHECK(22400 % 3 == 2);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul}) {
    const PrimePower pp(p, 2);
    CHECK(factorial_p_mod(p, pp) == oracle::mod(oracle::factorial(p - 1), p * p));
  }
}

TEST_CASE("factorial_p_mod matches the direct product for n <= 10^5") {
  for (auto [p, q] : {std::pair{2ul, 1u}, {2ul, 3u}, {3ul, 2u}, {5ul, 2u}, {7ul, 1u}, {3ul, 5u}}) {
    const PrimePower pp(p, q);
    const GranvilleEngine engine(pp);
    const unsigned long modulus = pp.modulus_word();
    std::uint64_t acc = 1 % modulus;
    for (unsigned long n = 0; n <= 100'000; ++n) {
      if (n > 0 && n % p != 0) acc = acc * (n % modulus) % modulus;
      if (engine.factorial_p(n) != acc) FAIL("n=" << n << " pp=" << pp.to_string());
    }
    CHECK(factorial_p_mod(99'999, pp) == direct_factorial_p(99'999, p, modulus));
  }
}

TEST_CASE("unit block product is -1 except for 2^q with q >= 3") {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (unsigned q = 1; q <= 5; ++q) {
      const PrimePower pp(p, q);
      const std::uint64_t modulus = pp.modulus_word();
      const std::uint64_t expected = (p == 2 && q >= 3) ? 1 : modulus - 1;
      CHECK(GranvilleEngine(pp).unit_block_product() == expected % modulus);
    }
  }
}

TEST_CASE("lucas examples") {
  CHECK(lucas_binom_mod_p(10, 4, 3) == 0);
  CHECK(oracle::binom(10, 4) == 210);
  CHECK(lucas_binom_mod_p(77, 0, 5) == 1);
  CHECK(lucas_binom_mod_p(13, 4, 3) == 1);
  CHECK(oracle::binom(13, 4) == 715);
  CHECK(lucas_binom_mod_p(4, 10, 3) == 0);
}

TEST_CASE("lucas agrees with exact binomials for m <= 600") {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul}) {
    for (unsigned long m = 0; m <= 600; ++m) {
      mpz_class c = 1;
      for (unsigned long n = 0; n <= m; ++n) {
        if (n > 0) {
          c *= m - n + 1;
          mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), n);
        }
        if (lucas_binom_mod_p(m, n, p) != oracle::mod(c, p)) FAIL("m=" << m << " n=" << n << " p=" << p);
      }
    }
  }
}

TEST_CASE("granville examples") {
  // C(10,4) = 210 = 3 * 70 and 70 = 7 (mod 9).
  CHECK(granville_binom_mod_pq(10, 4, PrimePower(3, 2)) == GranvilleResult{1, 7});
  for (auto [p, q] : {std::pair{2ul, 2u}, {3ul, 3u}, {7ul, 1u}}) {
    CHECK(granville_binom_mod_pq(123, 123, PrimePower(p, q)) == GranvilleResult{0, 1});
  }
  for (unsigned k = 2; k <= 80; ++k) {
    CHECK(granville_binom_mod_pq(oracle::ipow(2, k), 1, PrimePower(2, 2)) == GranvilleResult{k, 1});
  }
  CHECK_THROWS_AS(granville_binom_mod_pq(3, 4, PrimePower(2, 2)), DomainError);
}

TEST_CASE("granville sign rule on both sides of the p = 2, q >= 3 exception") {
  // C(8,4) = 70 = 2 * 35. Adding 4 + 4 in base 2 carries only at digit 2,
  // so e_0 = e_1 = e_2 = 1 and the sign factor is in play for q = 2 and q = 3.
  CHECK(granville_binom_mod_pq(8, 4, PrimePower(2, 2)) == GranvilleResult{1, 35 % 4});
  CHECK(granville_binom_mod_pq(8, 4, PrimePower(2, 3)) == GranvilleResult{1, 35 % 8});
  // 35 = 3 (mod 8): a sign of -1 would have given 5.
  CHECK(35 % 8 == 3);

  // Sweep for every (m, n) whose tail carry count is odd and where the two
  // signs give different residues.
  for (auto [p, q] : {std::pair{2ul, 2u}, {2ul, 3u}, {2ul, 4u}, {3ul, 2u}, {5ul, 3u}}) {
    const PrimePower pp(p, q);
    const GranvilleEngine engine(pp);
    const unsigned long modulus = pp.modulus_word();
    int sensitive = 0;
    for (unsigned long m = 0; m <= 200; ++m) {
      for (unsigned long n = 0; n <= m; ++n) {
        if (kummer_carries(n, m - n, p, q - 1) % 2 == 0) continue;
        const std::uint64_t unit = oracle::mod(oracle::strip(oracle::binom(m, n), p), modulus);
        if (unit == (modulus - unit) % modulus) continue;
        ++sensitive;
        CHECK(engine.binom(m, n).unit_residue == unit);
      }
    }
    CHECK(sensitive > 0);
  }
}

TEST_CASE("granville agrees with exact arithmetic for m <= 400") {
  for (auto [p, q] : {std::pair{2ul, 2u}, {2ul, 3u}, {2ul, 4u}, {3ul, 2u}, {3ul, 3u}, {5ul, 2u}, {7ul, 2u}}) {
    const PrimePower pp(p, q);
    const GranvilleEngine engine(pp);
    const unsigned long modulus = pp.modulus_word();
    for (unsigned long m = 0; m <= 400; ++m) {
      mpz_class c = 1;
      for (unsigned long n = 0; n <= m; ++n) {
        if (n > 0) {
          c *= m - n + 1;
          mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), n);
        }
        const GranvilleResult got = engine.binom(m, n);
        const GranvilleResult want{oracle::valuation(c, p), oracle::mod(oracle::strip(c, p), modulus)};
        if (!(got == want)) FAIL("m=" << m << " n=" << n << " pp=" << pp.to_string());
      }
    }
  }
}

TEST_CASE("granville with q = 1 degenerates to lucas") {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul}) {
    const GranvilleEngine engine(PrimePower(p, 1));
    for (unsigned long m = 0; m <= 300; ++m) {
      for (unsigned long n = 0; n <= m; ++n) {
        const GranvilleResult g = engine.binom(m, n);
        const std::uint64_t lucas = lucas_binom_mod_p(m, n, p);
        CHECK((g.e0 == 0 ? g.unit_residue : 0) == lucas);
      }
    }
  }
}

TEST_CASE("granville on large arguments matches exact arithmetic") {
  const PrimePower pp(3, 2);
  const GranvilleEngine engine(pp);
  for (unsigned long n : {1000ul, 4321ul, 9999ul}) {
    const unsigned long m = 9 * n + 1;
    const mpz_class c = oracle::binom(m, n);
    CHECK(engine.binom(m, n) == GranvilleResult{oracle::valuation(c, 3), oracle::mod(oracle::strip(c, 3), 9)});
  }
}

TEST_CASE("inverse_mod_pq") {
  CHECK(inverse_mod_pq(1, PrimePower(5, 3)) == 1);
  CHECK(inverse_mod_pq(2, PrimePower(3, 2)) == 5);
  CHECK(inverse_mod_pq(7, PrimePower(2, 4)) == 7);
  CHECK(inverse_mod_pq(-1, PrimePower(3, 2)) == 8);
  const mpz_class big = oracle::ipow(2, 300) * 4 + 1;
  const std::uint64_t inv = inverse_mod_pq(big, PrimePower(2, 2));
  CHECK(oracle::mod(big * inv, 4) == 1);
  CHECK_THROWS_AS(inverse_mod_pq(6, PrimePower(3, 2)), DomainError);
  CHECK_THROWS_AS(inverse_mod_pq(0, PrimePower(2, 2)), DomainError);
}
