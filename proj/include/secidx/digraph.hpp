#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace secidx {

/// Plain directed graph over dense vertex indices [0, size). Successor
/// lists are sorted and free of duplicates once constructed.
class Digraph {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;

  Digraph() = default;
  Digraph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t size() const noexcept { return successors_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const std::uint32_t> successors(std::uint32_t v) const {
    return successors_[v];
  }

  bool has_edge(std::uint32_t from, std::uint32_t to) const;

  /// Vertices reachable from `start` (including `start`).
  std::vector<bool> reachable_from(std::uint32_t start) const;

  bool operator==(const Digraph&) const = default;

 private:
  std::vector<std::vector<std::uint32_t>> successors_;
  std::size_t edge_count_ = 0;
};

}  // namespace secidx
