#include "pqcat/residues.hpp"

#include <algorithm>
#include <numeric>

#include "pqcat/errors.hpp"

namespace pqcat {

unsigned Partition::total() const noexcept {
  return std::accumulate(parts.begin(), parts.end(), 0u);
}

std::vector<Partition> partitions_of(unsigned n) {
  if (n == 0) throw DomainError("partitions_of: n must be >= 1");
  std::vector<Partition> out;
  Partition current{{n}};
  // Standard successor in reverse lexicographic order: find the rightmost
  // part > 1, decrement it and refill the tail greedily.
  while (true) {
    out.push_back(current);
    auto& parts = current.parts;
    unsigned ones = 0;
    while (!parts.empty() && parts.back() == 1) {
      parts.pop_back();
      ++ones;
    }
    if (parts.empty()) break;
    const unsigned head = --parts.back();
    unsigned rest = ones + 1;
    while (rest > head) {
      parts.push_back(head);
      rest -= head;
    }
    if (rest > 0) parts.push_back(rest);
  }
  return out;
}

BigInt partition_count(unsigned n) {
  // Euler's pentagonal recurrence.
  std::vector<BigInt> table(n + 1);
  table[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    BigInt sum = 0;
    for (long k = 1;; ++k) {
      const long first = k * (3 * k - 1) / 2;
      if (first > static_cast<long>(m)) break;
      const long second = k * (3 * k + 1) / 2;
      const bool plus = (k % 2) == 1;
      BigInt term = table[m - first];
      if (second <= static_cast<long>(m)) term += table[m - second];
      if (plus) sum += term; else sum -= term;
    }
    table[m] = sum;
  }
  return table[n];
}

BigInt multinomial(std::span<const unsigned> parts) {
  const unsigned total = std::accumulate(parts.begin(), parts.end(), 0u);
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), total);
  for (unsigned part : parts) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), part);
    mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), f.get_mpz_t());
  }
  return result;
}

std::vector<std::uint64_t> residue_set_p2(Prime p) {
  const PrimePower pp(p, 2);
  const std::uint64_t modulus = pp.modulus_word();
  std::vector<std::uint64_t> residues{0, 1};
  for (const Partition& partition : partitions_of(static_cast<unsigned>(p.value()))) {
    residues.push_back(mpz_fdiv_ui(multinomial(partition.parts).get_mpz_t(), modulus));
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  return residues;
}

std::vector<ResidueCount> residue_count_sequence(unsigned s_max) {
  if (s_max == 0) throw DomainError("residue_count_sequence: s_max must be >= 1");
  std::vector<ResidueCount> out;
  out.reserve(s_max);
  for (unsigned s = 1; s <= s_max; ++s) {
    ResidueCount entry{s, std::nullopt};
    if (is_prime(s)) entry.count = residue_set_p2(s).size();
    out.push_back(entry);
  }
  return out;
}

}  // namespace pqcat
