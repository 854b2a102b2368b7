#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "secidx/digraph.hpp"
#include "secidx/model.hpp"

namespace secidx {

/// A set of pairwise vertex-disjoint simple paths, each running from the
/// source set to the target set. A source that is also a target forms a
/// single-vertex path.
struct Linking {
  std::vector<std::vector<VertexId>> paths;

  std::size_t size() const noexcept { return paths.size(); }
  bool operator==(const Linking&) const = default;
};

// Dense-index variants over a plain digraph. Sources and targets are
// treated as sets; duplicates are ignored.
std::size_t max_linking_size(const Digraph& graph,
                             std::span<const std::uint32_t> sources,
                             std::span<const std::uint32_t> targets);
std::vector<std::vector<std::uint32_t>> find_max_linking(
    const Digraph& graph, std::span<const std::uint32_t> sources,
    std::span<const std::uint32_t> targets);

/// Size of a maximum linking from `sources` to `targets`, via unit
/// vertex-capacity max-flow. Throws Error(kUnknownVertex) for vertices
/// outside the graph.
std::size_t max_linking_size(const AttackGraph& graph,
                             std::span<const VertexId> sources,
                             std::span<const VertexId> targets);

/// One maximum linking, extracted from an integral max-flow. Deterministic
/// for a given graph.
Linking find_max_linking(const AttackGraph& graph,
                         std::span<const VertexId> sources,
                         std::span<const VertexId> targets);

/// True iff every maximum linking from `attack_subset` to the sensor set
/// uses `component`, i.e. dropping it lowers the maximum linking size by
/// one. Throws Error(kNotInSubset) if `component` is not in the subset.
bool saturated_by_all_max_linkings(const AttackGraph& graph,
                                   std::span<const VertexId> attack_subset,
                                   VertexId component);

/// Checks the Linking invariants: edges exist, paths are simple and
/// pairwise disjoint, each starts in `sources` and ends in `targets`.
bool is_valid_linking(const AttackGraph& graph, const Linking& linking,
                      std::span<const VertexId> sources,
                      std::span<const VertexId> targets);

}  // namespace secidx
