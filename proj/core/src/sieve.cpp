#include "pqcat/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "pqcat/errors.hpp"

namespace pqcat {
namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::size_t segment) : limit_(limit) {
  if (limit >= (std::uint64_t{1} << 32)) {
    throw ResourceError("prime table limit must be below 2^32");
  }
  if (segment == 0) throw DomainError("sieve segment size must be positive");
  if (limit < 2) return;
  primes_.push_back(2);
  if (limit < 3) return;

  // Odd base primes up to sqrt(limit) with a plain sieve.
  const std::uint64_t root = isqrt(limit);
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }

  // Flag k of a segment stands for the odd number low + 2k.
  std::vector<char> flags(segment);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t b = 0; b < base.size(); ++b) next[b] = base[b] * base[b];

  for (std::uint64_t low = 3; low <= limit; low += 2 * segment) {
    const std::uint64_t high = std::min<std::uint64_t>(low + 2 * (segment - 1), limit);
    const std::size_t count = static_cast<std::size_t>((high - low) / 2 + 1);
    std::fill(flags.begin(), flags.begin() + count, 1);
    for (std::size_t b = 0; b < base.size(); ++b) {
      std::uint64_t j = next[b];
      for (; j <= high; j += 2 * base[b]) flags[(j - low) / 2] = 0;
      next[b] = j;
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (flags[k]) primes_.push_back(static_cast<std::uint32_t>(low + 2 * k));
    }
  }
}

}  // namespace pqcat
