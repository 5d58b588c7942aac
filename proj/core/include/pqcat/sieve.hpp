#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pqcat {

/// Primes up to a limit, produced by a segmented sieve of Eratosthenes
/// over odd numbers. Immutable after construction, so one table can be
/// shared read-only between threads.
class PrimeTable {
 public:
  static constexpr std::size_t kDefaultSegment = std::size_t{1} << 20;

  /// limit must be below 2^32; segment is the number of odd flags sieved
  /// per pass.
  explicit PrimeTable(std::uint64_t limit, std::size_t segment = kDefaultSegment);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace pqcat
