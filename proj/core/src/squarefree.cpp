#include "pqcat/squarefree.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <thread>

#include "pqcat/catalan.hpp"
#include "pqcat/errors.hpp"
#include "pqcat/exceptions.hpp"
#include "word.hpp"

namespace pqcat {
namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t sieve_limit_for(std::uint64_t max_m, const SquarefreeConfig& config) {
  const std::uint64_t root = isqrt(max_m);
  if (root > config.max_sieve) {
    throw ResourceError("squarefree test for m <= " + std::to_string(max_m) +
                        " needs primes up to " + std::to_string(root) +
                        ", above the sieve guard " + std::to_string(config.max_sieve));
  }
  return root;
}

// True when adding n and r in base p carries at least twice.
bool two_carries(std::uint64_t n, std::uint64_t r, std::uint64_t p) noexcept {
  unsigned count = 0;
  std::uint64_t carry = 0;
  while (n != 0 || r != 0) {
    carry = (n % p + r % p + carry) >= p ? 1 : 0;
    if (carry != 0 && ++count == 2) return true;
    n /= p;
    r /= p;
  }
  return false;
}

// p^q * n + 1 as a machine word, or nullopt on overflow.
std::optional<std::uint64_t> top_of(const PrimePower& pp, std::uint64_t n) {
  if (!pp.fits_word()) return std::nullopt;
  const detail::uint128 m = static_cast<detail::uint128>(pp.modulus_word()) * n + 1;
  if (m > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(m);
}

std::uint64_t word_bound(const BigInt& bound, const PrimePower& pp) {
  if (sgn(bound) < 0) throw DomainError("scan bound must be >= 0");
  if (!bound.fits_ulong_p() || !top_of(pp, bound.get_ui())) {
    throw ResourceError("p^q * bound + 1 does not fit a 64-bit word for " + pp.to_string());
  }
  return bound.get_ui();
}

std::set<std::uint64_t> pure_power_values(const PrimePower& pp, std::uint64_t bound) {
  std::set<std::uint64_t> out;
  BigInt sum = pp.modulus();
  const BigInt denominator = pp.modulus() - 1;
  while (true) {
    BigInt n = (sum - 1) / denominator;
    if (n > static_cast<unsigned long>(bound)) break;
    out.insert(n.get_ui());
    sum *= pp.modulus();
  }
  return out;
}

}  // namespace

SquarefreeTester::SquarefreeTester(std::uint64_t max_m, const SquarefreeConfig& config)
    : max_m_(max_m), table_(sieve_limit_for(max_m, config), config.segment) {}

std::uint64_t SquarefreeTester::square_witness(std::uint64_t m, std::uint64_t n) const {
  if (n > m) throw DomainError("squarefree test requires n <= m");
  if (m > max_m_) {
    throw ResourceError("m = " + std::to_string(m) + " exceeds the prepared range " +
                        std::to_string(max_m_));
  }
  const std::uint64_t r = m - n;
  for (std::uint32_t prime : table_.primes()) {
    if (static_cast<std::uint64_t>(prime) * prime > m) break;
    if (two_carries(n, r, prime)) return prime;
  }
  return 0;
}

bool SquarefreeTester::is_squarefree_binom(std::uint64_t m, std::uint64_t n) const {
  return square_witness(m, n) == 0;
}

bool is_squarefree_binom(const BigInt& m, const BigInt& n, const SquarefreeConfig& config) {
  if (sgn(n) < 0 || n > m) throw DomainError("squarefree test requires 0 <= n <= m");
  if (!m.fits_ulong_p()) throw ResourceError("squarefree test requires m < 2^64");
  return SquarefreeTester(m.get_ui(), config).is_squarefree_binom(m.get_ui(), n.get_ui());
}

ScanReport scan_candidates(const PrimePower& pp, const BigInt& bound, const ScanOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t last = word_bound(bound, pp);
  if (!options.exhaustive && pp.exponent() < 2) {
    throw DomainError("candidate filtering needs q >= 2; use exhaustive mode for q = 1");
  }

  ScanReport report(pp, bound);
  report.exhaustive = options.exhaustive;
  report.checkpoint_path = options.checkpoint_path;

  std::vector<std::uint64_t> candidates;
  if (options.exhaustive) {
    candidates.reserve(last);
    for (std::uint64_t n = 1; n <= last; ++n) candidates.push_back(n);
  } else {
    for (const auto& form : enumerate_exceptions(pp, bound)) candidates.push_back(form.value.get_ui());
  }

  if (options.resume && options.checkpoint_path) {
    if (auto saved = read_checkpoint(*options.checkpoint_path)) {
      if (saved->p != pp.prime() || saved->q != pp.exponent()) {
        throw DomainError("checkpoint was written for " + std::to_string(saved->p) + "^" +
                          std::to_string(saved->q) + ", not " + pp.to_string());
      }
      report.resumed = true;
      report.checkpoint = saved->last_n;
      for (const auto& hit : saved->hits) {
        if (hit <= bound) report.squarefree_hits.push_back(hit);
      }
      const std::uint64_t done = saved->last_n.fits_ulong_p() ? saved->last_n.get_ui() : last;
      std::erase_if(candidates, [done](std::uint64_t n) { return n <= done; });
    }
  }

  const std::set<std::uint64_t> pure = pure_power_values(pp, last);
  for (std::uint64_t n : candidates) report.pure_power_candidates += pure.count(n);

  if (candidates.empty()) {
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
  }

  const SquarefreeTester tester(*top_of(pp, candidates.back()), options.config);
  const unsigned jobs = std::max(1u, options.jobs);
  const std::size_t batch = std::max<std::size_t>(1, options.batch);
  std::vector<char> squarefree(candidates.size(), 0);

  for (std::size_t begin = 0; begin < candidates.size(); begin += batch) {
    const std::size_t end = std::min(candidates.size(), begin + batch);
    std::atomic<std::size_t> cursor{begin};
    auto work = [&] {
      for (std::size_t i = cursor++; i < end; i = cursor++) {
        const std::uint64_t n = candidates[i];
        squarefree[i] = tester.is_squarefree_binom(*top_of(pp, n), n) ? 1 : 0;
      }
    };
    if (jobs == 1) {
      work();
    } else {
      std::vector<std::jthread> workers;
      for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(work);
    }

    for (std::size_t i = begin; i < end; ++i) {
      if (squarefree[i]) report.squarefree_hits.emplace_back(static_cast<unsigned long>(candidates[i]));
    }
    report.candidates_tested += end - begin;
    report.checkpoint = static_cast<unsigned long>(candidates[end - 1]);
    if (options.checkpoint_path) {
      write_checkpoint(*options.checkpoint_path,
                       Checkpoint{pp.prime(), pp.exponent(), bound, report.checkpoint,
                                  report.squarefree_hits});
    }
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

bool verify_divisibility_filter(const PrimePower& pp, const BigInt& bound,
                                const SquarefreeConfig& config) {
  if (pp.exponent() < 2) throw DomainError("the divisibility filter needs q >= 2");
  const std::uint64_t last = word_bound(bound, pp);
  if (last == 0) return true;
  std::set<std::uint64_t> exceptional;
  for (const auto& form : enumerate_exceptions(pp, bound)) exceptional.insert(form.value.get_ui());

  const SquarefreeTester tester(*top_of(pp, last), config);
  for (std::uint64_t n = 1; n <= last; ++n) {
    if (exceptional.count(n) != 0) continue;
    if (tester.is_squarefree_binom(*top_of(pp, n), n)) return false;
  }
  return true;
}

}  // namespace pqcat
