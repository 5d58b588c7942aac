#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pqcat/digits.hpp"

namespace pqcat {

/// A partition of a positive integer: weakly decreasing positive parts.
struct Partition {
  std::vector<unsigned> parts;

  unsigned total() const noexcept;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// All partitions of n in reverse lexicographic order, {n} first and
/// {1,...,1} last.
std::vector<Partition> partitions_of(unsigned n);

/// Number of partitions of n (not the prime-counting function).
BigInt partition_count(unsigned n);

/// total! / prod(parts[k]!), exactly.
BigInt multinomial(std::span<const unsigned> parts);

/// Least residues of F(p^2, n) mod p^2 over all n: 0, 1 and the multinomial
/// C(p; partition) mod p^2 for each partition of p, sorted and deduplicated.
std::vector<std::uint64_t> residue_set_p2(Prime p);

struct ResidueCount {
  unsigned s = 0;
  /// Empty when s is not prime; the construction only covers s = p.
  std::optional<std::size_t> count;
};

/// |residue_set_p2(s)| for s = 1..s_max.
std::vector<ResidueCount> residue_count_sequence(unsigned s_max);

}  // namespace pqcat
