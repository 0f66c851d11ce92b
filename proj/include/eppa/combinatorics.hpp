#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace eppa {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

/// n choose k, saturating at kSaturated.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Table of binomials C(i, j) for i <= n, j <= k, saturating.
class BinomialTable {
 public:
  BinomialTable(std::size_t n, std::size_t k);
  std::uint64_t operator()(std::size_t i, std::size_t j) const {
    return j > k_ || i < j ? 0 : table_[i * (k_ + 1) + j];
  }

 private:
  std::size_t k_;
  std::vector<std::uint64_t> table_;
};

/// Colexicographic rank of a strictly increasing combination.
std::uint64_t colex_rank(std::span<const std::uint32_t> combination, const BinomialTable& binom);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::uint32_t>> k_subsets(std::uint32_t n, std::uint32_t k);

}  // namespace eppa
