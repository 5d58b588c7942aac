#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "pqcat/errors.hpp"
#include "pqcat/exceptions.hpp"
#include "pqcat/sieve.hpp"
#include "pqcat/squarefree.hpp"

using namespace pqcat;
namespace fs = std::filesystem;

namespace {

std::vector<unsigned long> hits_of(const ScanReport& r) {
  std::vector<unsigned long> out;
  for (const auto& h : r.squarefree_hits) out.push_back(h.get_ui());
  return out;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pqcat-tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  fs::remove(path);
  return path;
}

using V = std::vector<unsigned long>;

}  // namespace

TEST_CASE("PrimeTable matches trial division") {
  const auto expected = oracle::primes_upto(200000);
  for (std::size_t segment : {std::size_t{7}, std::size_t{64}, std::size_t{1000}, PrimeTable::kDefaultSegment}) {
    const PrimeTable table(200000, segment);
    REQUIRE(table.primes().size() == expected.size());
    CHECK(std::equal(expected.begin(), expected.end(), table.primes().begin()));
  }
  CHECK(PrimeTable(1).primes().empty());
  CHECK(PrimeTable(2).primes().size() == 1);
  CHECK(PrimeTable(3).primes().size() == 2);
}

TEST_CASE("is_squarefree_binom examples") {
  CHECK(is_squarefree_binom(5, 1));
  CHECK(is_squarefree_binom(13, 3));
  CHECK(oracle::binom(13, 3) == 286);
  CHECK(is_squarefree_binom(181, 45));
  CHECK_FALSE(is_squarefree_binom(9, 4));
  CHECK(is_squarefree_binom(0, 0));
  CHECK_THROWS_AS(is_squarefree_binom(4, 5), DomainError);
  const SquarefreeTester tester(1000);
  CHECK(tester.square_witness(9, 4) == 3);
  CHECK(tester.square_witness(13, 3) == 0);
  CHECK_THROWS_AS(tester.is_squarefree_binom(1001, 3), ResourceError);
}

TEST_CASE("is_squarefree_binom agrees with exact factorisation for m <= 200") {
  const auto primes = oracle::primes_upto(200);
  const SquarefreeTester tester(200);
  for (unsigned long m = 0; m <= 200; ++m) {
    for (unsigned long n = 0; n <= m; ++n) {
      if (tester.is_squarefree_binom(m, n) != oracle::squarefree_by_division(oracle::binom(m, n), primes)) {
        FAIL("m=" << m << " n=" << n);
      }
    }
  }
}

TEST_CASE("is_squarefree_binom agrees with row factorisation for m <= 2000") {
  const SquarefreeTester tester(2000);
  std::size_t squarefree = 0;
  for (unsigned long m = 0; m <= 2000; ++m) {
    const auto row = oracle::squarefree_row(m);
    for (unsigned long n = 0; n <= m; ++n) {
      if (tester.is_squarefree_binom(m, n) != row[n]) FAIL("m=" << m << " n=" << n);
      squarefree += row[n] ? 1 : 0;
    }
  }
  CHECK(squarefree > 2001);  // the edges alone contribute 2 per row
}

TEST_CASE("sieve guard") {
  SquarefreeConfig tight;
  tight.max_sieve = 100;
  CHECK_NOTHROW(SquarefreeTester(10000, tight));
  CHECK_THROWS_AS(SquarefreeTester(10201 + 500, tight), ResourceError);
  CHECK_THROWS_AS(is_squarefree_binom(mpz_class("1000000000000000000000000000000000"), 1), ResourceError);
}

TEST_CASE("scan_candidates examples") {
  const ScanReport two = scan_candidates(PrimePower(2, 2), 100);
  CHECK(hits_of(two) == V{1, 3, 45});
  CHECK(two.candidates_tested == 10);
  CHECK(two.pure_power_candidates == 4);
  CHECK(two.checkpoint == 85);  // last candidate tested
  CHECK_FALSE(two.exhaustive);

  CHECK(hits_of(scan_candidates(PrimePower(3, 2), 100)) == V{1, 4, 10});

  const ScanReport empty = scan_candidates(PrimePower(2, 2), 0);
  CHECK(empty.squarefree_hits.empty());
  CHECK(empty.candidates_tested == 0);

  CHECK_THROWS_AS(scan_candidates(PrimePower(2, 1), 10), DomainError);
  ScanOptions all;
  all.exhaustive = true;
  CHECK(hits_of(scan_candidates(PrimePower(2, 1), 20, all)) == hits_of(scan_candidates(PrimePower(2, 1), 20, all)));
}

TEST_CASE("filtered and exhaustive scans agree up to 10^4") {
  ScanOptions exhaustive;
  exhaustive.exhaustive = true;
  for (auto [p, q] : {std::pair{2ul, 2u}, {3ul, 2u}}) {
    const PrimePower pp(p, q);
    const auto filtered = scan_candidates(pp, 10000);
    const auto full = scan_candidates(pp, 10000, exhaustive);
    CHECK(full.exhaustive);
    CHECK(full.candidates_tested == 10000);
    CHECK(hits_of(filtered) == hits_of(full));
    CHECK(filtered.candidates_tested == enumerate_exceptions(pp, 10000).size());
  }
  CHECK(hits_of(scan_candidates(PrimePower(2, 2), 10000)) == V{1, 3, 45});
  CHECK(hits_of(scan_candidates(PrimePower(3, 2), 10000)) == V{1, 4, 10});
}

TEST_CASE("scans are deterministic and independent of jobs and batch size") {
  const PrimePower pp(2, 2);
  ScanOptions base;
  base.exhaustive = true;
  const ScanReport reference = scan_candidates(pp, 3000, base);
  for (unsigned jobs : {1u, 2u, 4u}) {
    for (std::size_t batch : {std::size_t{1}, std::size_t{97}, std::size_t{4096}}) {
      ScanOptions o = base;
      o.jobs = jobs;
      o.batch = batch;
      const ScanReport r = scan_candidates(pp, 3000, o);
      CHECK(r.squarefree_hits == reference.squarefree_hits);
      CHECK(r.candidates_tested == reference.candidates_tested);
      CHECK(r.checkpoint == reference.checkpoint);
    }
  }
}

TEST_CASE("checkpoint format round trip") {
  Checkpoint c{2, 2, mpz_class("123456789012345678901234567890"), 77, {1, 3, 45}};
  const std::string line = format_checkpoint(c);
  CHECK(line == R"({"bound":"123456789012345678901234567890","hits":["1","3","45"],"last_n":"77","p":2,"q":2})");
  CHECK(parse_checkpoint(line) == c);
  CHECK_THROWS_AS(parse_checkpoint("{"), DomainError);
  CHECK_THROWS_AS(parse_checkpoint(R"({"p":2})"), DomainError);
  CHECK_THROWS_AS(parse_checkpoint(R"({"bound":"x","hits":[],"last_n":"1","p":2,"q":2})"), DomainError);

  const fs::path path = temp_file("roundtrip.json");
  CHECK_FALSE(read_checkpoint(path).has_value());
  write_checkpoint(path, c);
  CHECK(read_checkpoint(path) == c);
  fs::remove(path);
}

TEST_CASE("scan writes a checkpoint and resumes from it") {
  const PrimePower pp(3, 2);
  const fs::path path = temp_file("scan.json");
  ScanOptions opts;
  opts.exhaustive = true;
  opts.batch = 50;
  opts.checkpoint_path = path;

  const ScanReport first = scan_candidates(pp, 400, opts);
  CHECK(first.checkpoint_path == path);
  const auto saved = read_checkpoint(path);
  REQUIRE(saved.has_value());
  CHECK(saved->last_n == 400);
  CHECK(saved->hits == first.squarefree_hits);

  // A partial run up to 120, then a resumed run to 400.
  fs::remove(path);
  scan_candidates(pp, 120, opts);
  Checkpoint partial = *read_checkpoint(path);
  CHECK(partial.last_n == 120);
  partial.bound = 400;
  write_checkpoint(path, partial);
  ScanOptions resume = opts;
  resume.resume = true;
  const ScanReport second = scan_candidates(pp, 400, resume);
  CHECK(second.resumed);
  CHECK(second.squarefree_hits == first.squarefree_hits);
  CHECK(second.candidates_tested == 400 - 120);

  write_checkpoint(path, Checkpoint{2, 2, 400, 10, {}});
  CHECK_THROWS_AS(scan_candidates(pp, 400, resume), DomainError);
  fs::remove(path);
}

TEST_CASE("verify_divisibility_filter") {
  CHECK(verify_divisibility_filter(PrimePower(2, 2), 500));
  CHECK(verify_divisibility_filter(PrimePower(3, 2), 300));
  CHECK(verify_divisibility_filter(PrimePower(3, 2), 500));
  CHECK(verify_divisibility_filter(PrimePower(2, 2), 1));
  CHECK(verify_divisibility_filter(PrimePower(2, 3), 300));
  CHECK_THROWS_AS(verify_divisibility_filter(PrimePower(2, 1), 10), DomainError);
}
