#include "secidx/digraph.hpp"

#include <algorithm>

namespace secidx {

Digraph::Digraph(std::size_t vertex_count, std::span<const Edge> edges)
    : successors_(vertex_count) {
  for (const auto& [from, to] : edges) successors_[from].push_back(to);
  for (auto& out : successors_) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    edge_count_ += out.size();
  }
}

bool Digraph::has_edge(std::uint32_t from, std::uint32_t to) const {
  const auto& out = successors_[from];
  return std::binary_search(out.begin(), out.end(), to);
}

std::vector<bool> Digraph::reachable_from(std::uint32_t start) const {
  std::vector<bool> seen(size(), false);
  std::vector<std::uint32_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : successors_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace secidx
