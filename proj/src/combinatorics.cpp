#include "eppa/combinatorics.hpp"

#include <numeric>

namespace eppa {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

BinomialTable::BinomialTable(std::size_t n, std::size_t k) : k_(k), table_((n + 1) * (k + 1), 0) {
  for (std::size_t i = 0; i <= n; ++i) {
    table_[i * (k + 1)] = 1;
    for (std::size_t j = 1; j <= k && j <= i; ++j) {
      std::uint64_t a = table_[(i - 1) * (k + 1) + j - 1];
      std::uint64_t b = j <= i - 1 ? table_[(i - 1) * (k + 1) + j] : 0;
      table_[i * (k + 1) + j] = (a > kSaturated - b) ? kSaturated : a + b;
    }
  }
}

std::uint64_t colex_rank(std::span<const std::uint32_t> combination, const BinomialTable& binom) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < combination.size(); ++i) rank += binom(combination[i], i + 1);
  return rank;
}

std::vector<std::vector<std::uint32_t>> k_subsets(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  if (k > n) return out;
  std::vector<std::uint32_t> c(k);
  std::iota(c.begin(), c.end(), 0u);
  while (true) {
    out.push_back(c);
    // rightmost position that can still advance
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace eppa
