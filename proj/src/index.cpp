#include "secidx/index.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "secidx/error.hpp"
#include "secidx/linking.hpp"
#include "subsets.hpp"

namespace secidx {

namespace {

class SaturationChecker {
 public:
  explicit SaturationChecker(const AttackGraph& graph) : graph_(graph) {
    for (auto v : graph.attack_set()) attack_dense_.push_back(graph.dense(v));
    for (auto y : graph.targets()) target_dense_.push_back(graph.dense(y));
  }

  std::size_t linking_size(std::uint64_t mask) const {
    std::vector<std::uint32_t> sources;
    for (std::size_t k = 0; k < attack_dense_.size(); ++k) {
      if (mask >> k & 1U) sources.push_back(attack_dense_[k]);
    }
    return max_linking_size(graph_.digraph(), sources, target_dense_);
  }

  // Every maximum linking from `mask` uses position `pos`.
  bool saturated(std::uint64_t mask, std::size_t pos) const {
    const auto without = mask & ~(std::uint64_t{1} << pos);
    return linking_size(mask) == linking_size(without) + 1;
  }

 private:
  const AttackGraph& graph_;
  std::vector<std::uint32_t> attack_dense_;
  std::vector<std::uint32_t> target_dense_;
};

// Position in `subsets` of the first unsaturated subset, or subsets.size().
std::size_t first_unsaturated(const SaturationChecker& checker,
                              const std::vector<std::uint64_t>& subsets, std::size_t pos,
                              unsigned threads) {
  if (threads <= 1 || subsets.size() < 2 * threads) {
    for (std::size_t k = 0; k < subsets.size(); ++k) {
      if (!checker.saturated(subsets[k], pos)) return k;
    }
    return subsets.size();
  }
  // Strided scan; the minimum over workers equals the sequential answer.
  std::atomic<std::size_t> best{subsets.size()};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t k = t; k < subsets.size(); k += threads) {
        if (k >= best.load(std::memory_order_relaxed)) return;
        if (!checker.saturated(subsets[k], pos)) {
          auto current = best.load();
          while (k < current && !best.compare_exchange_weak(current, k)) {
          }
          return;
        }
      }
    });
  }
  workers.clear();
  return best.load();
}

}  // namespace

SecurityIndexResult security_index(const AttackGraph& graph, VertexId component,
                                   const IndexOptions& options) {
  const auto position = graph.attack_position(component);
  if (!position) {
    throw Error(ErrorKind::kNotInSubset,
                graph.contains(component) ? graph.name(component) : std::string("?"),
                "component is not in the attack set");
  }
  const auto& attack_set = graph.attack_set();
  if (attack_set.size() > options.enumeration_cap || attack_set.size() > detail::kMaxAttackSet) {
    throw Error(ErrorKind::kCapExceeded, std::to_string(attack_set.size()),
                "attack set has " + std::to_string(attack_set.size()) +
                    " components, above the enumeration cap of " +
                    std::to_string(std::min(options.enumeration_cap, detail::kMaxAttackSet)) +
                    "; raise the cap (--cap) to compute it anyway, cost grows as 2^n");
  }

  const auto pos = *position;

  SaturationChecker checker(graph);
  SecurityIndexResult result{component, IndexValue::infinite(), {}, 0};
  for (std::size_t p = 1; p <= attack_set.size(); ++p) {
    const auto subsets = detail::subsets_containing(attack_set.size(), pos, p);
    const auto hit = first_unsaturated(checker, subsets, pos, options.threads);
    if (hit < subsets.size()) {
      result.subsets_examined += hit + 1;
      result.index = IndexValue::finite(p);
      for (std::size_t k = 0; k < attack_set.size(); ++k) {
        if (subsets[hit] >> k & 1U) result.witness.push_back(attack_set[k]);
      }
      return result;
    }
    result.subsets_examined += subsets.size();
  }
  return result;
}

GraphSummary summarize(const AttackGraph& graph) {
  return {graph.state_count(), graph.actuator_count(), graph.sensor_count(),
          graph.sensor_attack_count(), graph.edge_count()};
}

IndexReport indices_for(const AttackGraph& graph, const std::vector<VertexId>& components,
                        const IndexOptions& options) {
  IndexReport report;
  report.graph_summary = summarize(graph);
  report.assumption_violations = validate_assumptions(graph);
  report.entries.reserve(components.size());
  for (const auto& c : components) {
    ReportEntry entry{c, std::nullopt, {}};
    try {
      entry.result = security_index(graph, c, options);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

IndexReport all_indices(const AttackGraph& graph, const IndexOptions& options) {
  return indices_for(graph, graph.attack_set(), options);
}

bool is_generically_left_invertible(const AttackGraph& graph) {
  return max_linking_size(graph, graph.attack_set(), graph.targets()) ==
         graph.attack_set().size();
}

}  // namespace secidx
