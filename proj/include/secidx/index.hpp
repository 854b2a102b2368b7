#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "secidx/model.hpp"

namespace secidx {

/// A security index: a positive count of compromised components, or
/// infinite when no undetectable attack through the component exists.
/// Finite values order below infinity.
class IndexValue {
 public:
  static IndexValue finite(std::size_t p) { return IndexValue(p); }
  static IndexValue infinite() { return IndexValue(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws std::bad_optional_access when infinite.
  std::size_t value() const { return value_.value(); }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

  bool operator==(const IndexValue&) const = default;
  std::strong_ordering operator<=>(const IndexValue& other) const {
    if (is_infinite() || other.is_infinite()) {
      return static_cast<int>(is_infinite()) <=> static_cast<int>(other.is_infinite());
    }
    return *value_ <=> *other.value_;
  }

 private:
  IndexValue() = default;
  explicit IndexValue(std::size_t p) : value_(p) {}

  std::optional<std::size_t> value_;
};

struct SecurityIndexResult {
  VertexId component;
  IndexValue index = IndexValue::infinite();
  /// Lexicographically first minimum-cardinality attack set containing the
  /// component for which some maximum linking misses it. Empty iff the
  /// index is infinite.
  std::vector<VertexId> witness;
  std::size_t subsets_examined = 0;
};

struct IndexOptions {
  /// Largest attack set the brute-force search accepts.
  std::size_t enumeration_cap = 20;
  /// Worker threads used to check subsets of one size; 0 or 1 runs inline.
  unsigned threads = 1;
};

/// Smallest p such that some size-p attack set containing `component` has a
/// maximum linking to the sensors that avoids it. Subsets are examined in
/// lexicographic order of attack-set positions. Throws Error(kNotInSubset)
/// if `component` is not attackable and Error(kCapExceeded) when the attack
/// set is larger than the cap.
SecurityIndexResult security_index(const AttackGraph& graph, VertexId component,
                                   const IndexOptions& options = {});

struct GraphSummary {
  std::size_t states = 0;
  std::size_t actuators = 0;
  std::size_t sensors = 0;
  std::size_t sensor_attacks = 0;
  std::size_t edges = 0;
};

GraphSummary summarize(const AttackGraph& graph);

struct ReportEntry {
  VertexId component;
  std::optional<SecurityIndexResult> result;
  /// Set instead of `result` when the computation failed for this component.
  std::string error;
};

struct IndexReport {
  std::vector<ReportEntry> entries;
  GraphSummary graph_summary;
  std::vector<AssumptionViolation> assumption_violations;
};

/// One entry per attack-set member, in attack-set order. Per-component
/// failures are recorded in the entry rather than thrown.
IndexReport all_indices(const AttackGraph& graph, const IndexOptions& options = {});

/// Same as all_indices, restricted to the given components.
IndexReport indices_for(const AttackGraph& graph, const std::vector<VertexId>& components,
                        const IndexOptions& options = {});

/// Full-size linking from the whole attack set to the sensors.
bool is_generically_left_invertible(const AttackGraph& graph);

}  // namespace secidx
