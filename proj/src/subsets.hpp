#pragma once

#include <cstdint>
#include <vector>

namespace secidx::detail {

/// All size-`pick` subsets of `pool` in lexicographic order, as bitmasks
/// over the pooled positions.
inline std::vector<std::uint64_t> lexicographic_subsets(const std::vector<std::uint32_t>& pool,
                                                        std::size_t pick) {
  std::vector<std::uint64_t> out;
  if (pick > pool.size()) return out;
  std::vector<std::size_t> idx(pick);
  for (std::size_t k = 0; k < pick; ++k) idx[k] = k;
  while (true) {
    std::uint64_t mask = 0;
    for (auto k : idx) mask |= std::uint64_t{1} << pool[k];
    out.push_back(mask);
    std::size_t k = pick;
    while (k > 0 && idx[k - 1] == pool.size() - pick + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Subsets of {0..n-1} that contain `pos`, grouped by size 1..n, each group
/// in lexicographic order.
inline std::vector<std::uint64_t> subsets_containing(std::size_t n, std::size_t pos,
                                                     std::size_t size) {
  std::vector<std::uint32_t> others;
  for (std::uint32_t k = 0; k < n; ++k) {
    if (k != pos) others.push_back(k);
  }
  auto out = lexicographic_subsets(others, size - 1);
  for (auto& mask : out) mask |= std::uint64_t{1} << pos;
  return out;
}

constexpr std::size_t kMaxAttackSet = 63;

}  // namespace secidx::detail
