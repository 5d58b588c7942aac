#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqcat/digits.hpp"
#include "pqcat/sieve.hpp"

namespace pqcat {

struct SquarefreeConfig {
  /// Largest prime the sieve may be asked for. Only primes up to sqrt(m)
  /// are needed, so this admits m up to max_sieve^2.
  std::uint64_t max_sieve = 100'000'000;
  std::size_t segment = PrimeTable::kDefaultSegment;
};

/// Decides whether C(m, n) is squarefree without forming it: a prime r
/// divides C(m, n) to the power of the number of base-r carries in
/// n + (m - n). For r^2 > m that count is at most 1, so only primes up to
/// sqrt(m) are tested.
class SquarefreeTester {
 public:
  /// Prepares primes for every m <= max_m. Throws ResourceError when that
  /// needs primes beyond config.max_sieve.
  explicit SquarefreeTester(std::uint64_t max_m, const SquarefreeConfig& config = {});

  std::uint64_t max_m() const noexcept { return max_m_; }

  /// Requires n <= m <= max_m().
  bool is_squarefree_binom(std::uint64_t m, std::uint64_t n) const;

  /// Smallest prime whose square divides C(m, n), or 0 if squarefree.
  std::uint64_t square_witness(std::uint64_t m, std::uint64_t n) const;

 private:
  std::uint64_t max_m_;
  PrimeTable table_;
};

/// One-shot form of SquarefreeTester. m must fit a machine word.
bool is_squarefree_binom(const BigInt& m, const BigInt& n, const SquarefreeConfig& config = {});

/// Record of a squarefreeness scan of C(p^q n + 1, n) over 1 <= n <= bound.
struct ScanReport {
  ScanReport(PrimePower pp_in, BigInt bound_in) : pp(std::move(pp_in)), bound(std::move(bound_in)) {}

  PrimePower pp;
  BigInt bound;
  bool exhaustive = false;
  std::uint64_t candidates_tested = 0;
  /// Candidates from the PurePower family (p^{tq}-1)/(p^q-1). These are
  /// counted separately because the published exception counts leave the
  /// family out.
  std::uint64_t pure_power_candidates = 0;
  std::vector<BigInt> squarefree_hits;  // ascending
  double elapsed_seconds = 0.0;
  /// Last n processed; every candidate <= checkpoint has been tested.
  BigInt checkpoint = 0;
  std::optional<std::filesystem::path> checkpoint_path;
  bool resumed = false;
};

struct ScanOptions {
  /// Test every n <= bound instead of only exception-form candidates.
  bool exhaustive = false;
  unsigned jobs = 1;
  /// When set, progress is written here after every batch.
  std::optional<std::filesystem::path> checkpoint_path;
  /// Continue from checkpoint_path if it exists.
  bool resume = false;
  std::size_t batch = 4096;
  SquarefreeConfig config;
};

/// Tests C(p^q n + 1, n) for squarefreeness. In the default mode only the
/// n with p^q not dividing F(p^q, n) are tested: for every other n (and
/// q >= 2) p^q divides C(p^q n + 1, n), which is then not squarefree.
ScanReport scan_candidates(const PrimePower& pp, const BigInt& bound, const ScanOptions& options = {});

/// Checks the filter behind scan_candidates: for every 1 <= n <= bound
/// outside the exception list, C(p^q n + 1, n) is not squarefree.
/// Requires q >= 2.
bool verify_divisibility_filter(const PrimePower& pp, const BigInt& bound,
                                const SquarefreeConfig& config = {});

/// Single-line JSON checkpoint:
///   {"bound":"...","hits":["..."],"last_n":"...","p":P,"q":Q}
struct Checkpoint {
  std::uint64_t p = 0;
  unsigned q = 0;
  BigInt bound;
  BigInt last_n;
  std::vector<BigInt> hits;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string format_checkpoint(const Checkpoint& checkpoint);
Checkpoint parse_checkpoint(const std::string& line);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path);

}  // namespace pqcat
