#include "secidx/linking.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "secidx/error.hpp"

namespace secidx {

namespace {

// Dinic's algorithm on unit capacities. Arcs are stored in pairs so that
// arc ^ 1 is the reverse arc.
class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(std::size_t nodes) : adjacency_(nodes), level_(nodes), cursor_(nodes) {}

  void add_arc(std::uint32_t from, std::uint32_t to) {
    adjacency_[from].push_back(static_cast<std::uint32_t>(arcs_.size()));
    arcs_.push_back({to, 1});
    adjacency_[to].push_back(static_cast<std::uint32_t>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  std::size_t max_flow(std::uint32_t source, std::uint32_t sink) {
    std::size_t flow = 0;
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (augment(source, sink)) ++flow;
    }
    return flow;
  }

  /// Head of the single saturated forward arc leaving `node`, if any.
  std::optional<std::uint32_t> flow_successor(std::uint32_t node) const {
    for (auto a : adjacency_[node]) {
      if ((a & 1U) == 0 && arcs_[a].residual == 0) return arcs_[a].head;
    }
    return std::nullopt;
  }

  bool carries_flow(std::uint32_t from, std::uint32_t to) const {
    for (auto a : adjacency_[from]) {
      if ((a & 1U) == 0 && arcs_[a].head == to && arcs_[a].residual == 0) return true;
    }
    return false;
  }

 private:
  struct Arc {
    std::uint32_t head;
    std::uint8_t residual;
  };

  bool build_levels(std::uint32_t source, std::uint32_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::uint32_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop();
      for (auto a : adjacency_[v]) {
        const auto& arc = arcs_[a];
        if (arc.residual > 0 && level_[arc.head] < 0) {
          level_[arc.head] = level_[v] + 1;
          queue.push(arc.head);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // Iterative DFS along the level graph; pushes one unit.
  bool augment(std::uint32_t source, std::uint32_t sink) {
    std::vector<std::uint32_t> path_arcs;
    std::uint32_t v = source;
    while (v != sink) {
      bool advanced = false;
      auto& i = cursor_[v];
      for (; i < adjacency_[v].size(); ++i) {
        const auto a = adjacency_[v][i];
        const auto& arc = arcs_[a];
        if (arc.residual > 0 && level_[arc.head] == level_[v] + 1) {
          path_arcs.push_back(a);
          v = arc.head;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        if (v == source) return false;
        level_[v] = -1;  // dead end
        path_arcs.pop_back();
        v = path_arcs.empty() ? source : arcs_[path_arcs.back()].head;
        ++cursor_[v];
      }
    }
    for (auto a : path_arcs) {
      arcs_[a].residual -= 1;
      arcs_[a ^ 1U].residual += 1;
    }
    return true;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

// Vertex v is split into in-node 2v and out-node 2v+1.
struct SplitFlow {
  UnitFlowNetwork network;
  std::uint32_t source;
  std::uint32_t sink;
  std::vector<bool> is_target;
  std::vector<std::uint32_t> source_list;
  std::size_t value = 0;
};

constexpr std::uint32_t in_node(std::uint32_t v) { return 2 * v; }
constexpr std::uint32_t out_node(std::uint32_t v) { return 2 * v + 1; }

std::vector<std::uint32_t> as_sorted_set(const Digraph& graph,
                                         std::span<const std::uint32_t> vertices) {
  std::vector<std::uint32_t> out(vertices.begin(), vertices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= graph.size()) {
    throw Error(ErrorKind::kUnknownVertex, std::to_string(out.back()),
                "vertex index " + std::to_string(out.back()) + " is outside the graph");
  }
  return out;
}

SplitFlow solve(const Digraph& graph, std::span<const std::uint32_t> sources,
                std::span<const std::uint32_t> targets) {
  const auto n = static_cast<std::uint32_t>(graph.size());
  const auto source_set = as_sorted_set(graph, sources);
  const auto target_set = as_sorted_set(graph, targets);
  SplitFlow f{UnitFlowNetwork(2 * n + 2), 2 * n, 2 * n + 1, std::vector<bool>(n, false),
              source_set, 0};
  for (auto s : source_set) f.network.add_arc(f.source, in_node(s));
  for (std::uint32_t v = 0; v < n; ++v) {
    f.network.add_arc(in_node(v), out_node(v));
    for (auto w : graph.successors(v)) f.network.add_arc(out_node(v), in_node(w));
  }
  for (auto t : target_set) {
    f.is_target[t] = true;
    f.network.add_arc(out_node(t), f.sink);
  }
  if (!source_set.empty() && !target_set.empty()) {
    f.value = f.network.max_flow(f.source, f.sink);
  }
  return f;
}

std::vector<std::uint32_t> dense_list(const AttackGraph& graph, std::span<const VertexId> vs) {
  std::vector<std::uint32_t> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(graph.dense(v));
  return out;
}

}  // namespace

std::size_t max_linking_size(const Digraph& graph, std::span<const std::uint32_t> sources,
                             std::span<const std::uint32_t> targets) {
  return solve(graph, sources, targets).value;
}

std::vector<std::vector<std::uint32_t>> find_max_linking(
    const Digraph& graph, std::span<const std::uint32_t> sources,
    std::span<const std::uint32_t> targets) {
  auto f = solve(graph, sources, targets);
  std::vector<std::vector<std::uint32_t>> paths;
  // Each unit of flow leaves the super-source through one source; with unit
  // vertex capacities the flow out of it is a single simple path. Flow
  // cycles are never reached from a source and are dropped.
  for (auto s : f.source_list) {
    if (!f.network.carries_flow(f.source, in_node(s))) continue;
    std::vector<std::uint32_t> path{s};
    std::uint32_t v = s;
    while (!f.network.carries_flow(out_node(v), f.sink)) {
      const auto next = f.network.flow_successor(out_node(v));
      v = *next / 2;
      path.push_back(v);
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

std::size_t max_linking_size(const AttackGraph& graph, std::span<const VertexId> sources,
                             std::span<const VertexId> targets) {
  const auto s = dense_list(graph, sources);
  const auto t = dense_list(graph, targets);
  return max_linking_size(graph.digraph(), s, t);
}

Linking find_max_linking(const AttackGraph& graph, std::span<const VertexId> sources,
                         std::span<const VertexId> targets) {
  const auto s = dense_list(graph, sources);
  const auto t = dense_list(graph, targets);
  Linking linking;
  for (const auto& dense_path : find_max_linking(graph.digraph(), s, t)) {
    std::vector<VertexId> path;
    path.reserve(dense_path.size());
    for (auto v : dense_path) path.push_back(graph.vertex(v));
    linking.paths.push_back(std::move(path));
  }
  return linking;
}

bool saturated_by_all_max_linkings(const AttackGraph& graph,
                                   std::span<const VertexId> attack_subset,
                                   VertexId component) {
  if (std::find(attack_subset.begin(), attack_subset.end(), component) == attack_subset.end()) {
    throw Error(ErrorKind::kNotInSubset,
                graph.contains(component) ? graph.name(component) : std::string("?"),
                "component is not a member of the attack subset");
  }
  std::vector<VertexId> rest;
  rest.reserve(attack_subset.size());
  for (const auto& v : attack_subset) {
    if (v != component) rest.push_back(v);
  }
  const auto with = max_linking_size(graph, attack_subset, graph.targets());
  const auto without = max_linking_size(graph, rest, graph.targets());
  return with == without + 1;
}

bool is_valid_linking(const AttackGraph& graph, const Linking& linking,
                      std::span<const VertexId> sources, std::span<const VertexId> targets) {
  const std::set<VertexId> source_set(sources.begin(), sources.end());
  const std::set<VertexId> target_set(targets.begin(), targets.end());
  std::set<VertexId> used;
  for (const auto& path : linking.paths) {
    if (path.empty()) return false;
    if (!source_set.contains(path.front()) || !target_set.contains(path.back())) return false;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (!graph.contains(path[k])) return false;
      if (!used.insert(path[k]).second) return false;
      if (k + 1 < path.size() &&
          !graph.digraph().has_edge(graph.dense(path[k]), graph.dense(path[k + 1]))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace secidx
