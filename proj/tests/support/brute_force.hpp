#pragma once

// Definition-level reference computations used as test oracles. They share
// no code with the flow-based implementation.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "secidx/digraph.hpp"
#include "secidx/index.hpp"
#include "secidx/model.hpp"

namespace secidx::testing {

using Path = std::vector<std::uint32_t>;

/// Every simple path that starts in `sources` and ends in `targets`.
inline std::vector<Path> enumerate_paths(const Digraph& g, const std::vector<std::uint32_t>& sources,
                                         const std::vector<std::uint32_t>& targets) {
  std::vector<bool> is_target(g.size(), false);
  for (auto t : targets) is_target[t] = true;
  std::vector<Path> out;
  Path current;
  std::vector<bool> on_path(g.size(), false);
  auto extend = [&](auto&& self, std::uint32_t v) -> void {
    current.push_back(v);
    on_path[v] = true;
    if (is_target[v]) out.push_back(current);
    for (auto w : g.successors(v)) {
      if (!on_path[w]) self(self, w);
    }
    on_path[v] = false;
    current.pop_back();
  };
  auto unique_sources = sources;
  std::sort(unique_sources.begin(), unique_sources.end());
  unique_sources.erase(std::unique(unique_sources.begin(), unique_sources.end()),
                       unique_sources.end());
  for (auto s : unique_sources) extend(extend, s);
  return out;
}

/// Largest number of pairwise vertex-disjoint source-to-target paths, by
/// exhaustive search. Paths through `forbidden` are discarded.
inline std::size_t exhaustive_linking_size(const Digraph& g,
                                           const std::vector<std::uint32_t>& sources,
                                           const std::vector<std::uint32_t>& targets,
                                           std::optional<std::uint32_t> forbidden = std::nullopt) {
  auto paths = enumerate_paths(g, sources, targets);
  std::vector<std::uint64_t> masks;
  std::vector<std::uint32_t> starts;
  for (const auto& p : paths) {
    std::uint64_t m = 0;
    for (auto v : p) m |= std::uint64_t{1} << v;
    if (forbidden && (m >> *forbidden & 1U)) continue;
    masks.push_back(m);
    starts.push_back(p.front());
  }
  std::vector<std::uint32_t> start_list = starts;
  std::sort(start_list.begin(), start_list.end());
  start_list.erase(std::unique(start_list.begin(), start_list.end()), start_list.end());

  std::size_t best = 0;
  // Distinct paths of a linking have distinct start vertices.
  auto search = [&](auto&& self, std::size_t k, std::uint64_t used, std::size_t size) -> void {
    best = std::max(best, size);
    if (k == start_list.size() || size + (start_list.size() - k) <= best) return;
    for (std::size_t p = 0; p < masks.size(); ++p) {
      if (starts[p] == start_list[k] && (masks[p] & used) == 0) {
        self(self, k + 1, used | masks[p], size + 1);
      }
    }
    self(self, k + 1, used, size);
  };
  search(search, 0, 0, 0);
  return best;
}

/// Definition-level structural index: smallest |S| over attack subsets S
/// containing the component such that some maximum linking from S to the
/// sensors avoids the component. Also returns the lexicographically first
/// such S.
struct BruteForceIndex {
  IndexValue index = IndexValue::infinite();
  std::vector<VertexId> witness;
};

inline BruteForceIndex brute_force_index(const AttackGraph& graph, VertexId component) {
  const auto& attack = graph.attack_set();
  const auto n = attack.size();
  const auto pos = static_cast<std::size_t>(
      std::find(attack.begin(), attack.end(), component) - attack.begin());
  std::vector<std::uint32_t> targets;
  for (auto y : graph.targets()) targets.push_back(graph.dense(y));

  std::optional<std::vector<std::size_t>> best;
  std::size_t best_size = n + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask >> pos & 1U)) continue;
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > best_size) continue;
    std::vector<std::uint32_t> sources;
    std::vector<std::size_t> positions;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1U) {
        sources.push_back(graph.dense(attack[k]));
        positions.push_back(k);
      }
    }
    const auto all = exhaustive_linking_size(graph.digraph(), sources, targets);
    const auto avoiding =
        exhaustive_linking_size(graph.digraph(), sources, targets, graph.dense(component));
    if (avoiding != all) continue;
    if (size < best_size || positions < *best) {
      best_size = size;
      best = positions;
    }
  }
  BruteForceIndex out;
  if (best) {
    out.index = IndexValue::finite(best_size);
    for (auto k : *best) out.witness.push_back(attack[k]);
  }
  return out;
}

}  // namespace secidx::testing
