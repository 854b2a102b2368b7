#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secidx/digraph.hpp"

namespace secidx {

enum class VertexKind : std::uint8_t { kState, kActuator, kSensor, kSensorAttack };

std::string_view to_string(VertexKind kind);

/// Internal vertex identity. Ordering is canonical: by kind, then ordinal.
struct VertexId {
  VertexKind kind = VertexKind::kState;
  std::uint32_t ordinal = 0;

  auto operator<=>(const VertexId&) const = default;
};

constexpr VertexId state(std::uint32_t i) { return {VertexKind::kState, i}; }
constexpr VertexId actuator(std::uint32_t i) { return {VertexKind::kActuator, i}; }
constexpr VertexId sensor(std::uint32_t i) { return {VertexKind::kSensor, i}; }
constexpr VertexId sensor_attack(std::uint32_t i) {
  return {VertexKind::kSensorAttack, i};
}

struct SensorDecl {
  std::string name;
  bool is_protected = false;

  bool operator==(const SensorDecl&) const = default;
};

struct NamedEdge {
  std::string from;
  std::string to;

  bool operator==(const NamedEdge&) const = default;
};

/// Sparsity pattern of (W, B, C). Each edge is one free parameter:
/// w_edges x_j -> x_i is [W]_ij, b_edges u_j -> x_i is [B]_ij and
/// c_edges x_j -> y_i is [C]_ij. Validated on construction and immutable
/// afterwards.
class StructuredSystem {
 public:
  struct IndexEdge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;

    bool operator==(const IndexEdge&) const = default;
  };

  /// Throws Error (kDuplicateName, kDanglingEndpoint, kDuplicateEdge,
  /// kEmptyVertexClass) naming the offending entity.
  StructuredSystem(std::vector<std::string> states,
                   std::vector<std::string> actuators,
                   std::vector<SensorDecl> sensors,
                   std::vector<NamedEdge> w_edges,
                   std::vector<NamedEdge> b_edges,
                   std::vector<NamedEdge> c_edges);

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& actuators() const noexcept { return actuators_; }
  const std::vector<SensorDecl>& sensors() const noexcept { return sensors_; }
  const std::vector<NamedEdge>& w_edges() const noexcept { return w_edges_; }
  const std::vector<NamedEdge>& b_edges() const noexcept { return b_edges_; }
  const std::vector<NamedEdge>& c_edges() const noexcept { return c_edges_; }

  // Edges resolved to ordinals within their vertex classes, in declaration
  // order.
  const std::vector<IndexEdge>& state_edges() const noexcept { return w_index_; }
  const std::vector<IndexEdge>& actuator_edges() const noexcept { return b_index_; }
  const std::vector<IndexEdge>& sensor_edges() const noexcept { return c_index_; }

  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t actuator_count() const noexcept { return actuators_.size(); }
  std::size_t sensor_count() const noexcept { return sensors_.size(); }
  std::size_t unprotected_count() const noexcept;

  /// The same structure with `sensor_name` marked protected.
  StructuredSystem with_protected(std::string_view sensor_name) const;

  bool operator==(const StructuredSystem&) const = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actuators_;
  std::vector<SensorDecl> sensors_;
  std::vector<NamedEdge> w_edges_;
  std::vector<NamedEdge> b_edges_;
  std::vector<NamedEdge> c_edges_;
  std::vector<IndexEdge> w_index_;
  std::vector<IndexEdge> b_index_;
  std::vector<IndexEdge> c_index_;
};

/// Name given to the dedicated attack vertex of an unprotected sensor.
std::string attack_vertex_name(std::string_view sensor_name);

/// The attacked-system graph: states, actuators, sensors and one dedicated
/// attack vertex per unprotected sensor. Dense indices follow the canonical
/// (kind, ordinal) order.
class AttackGraph {
 public:
  std::size_t state_count() const noexcept { return counts_[0]; }
  std::size_t actuator_count() const noexcept { return counts_[1]; }
  std::size_t sensor_count() const noexcept { return counts_[2]; }
  std::size_t sensor_attack_count() const noexcept { return counts_[3]; }
  std::size_t vertex_count() const noexcept { return graph_.size(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  bool contains(VertexId v) const noexcept;
  /// Throws Error(kUnknownVertex) for ids outside the graph.
  std::uint32_t dense(VertexId v) const;
  VertexId vertex(std::uint32_t dense_index) const;

  const std::string& name(VertexId v) const { return names_[dense(v)]; }
  std::optional<VertexId> find(std::string_view name) const;

  /// Sensor ordinal targeted by the given sensor-attack ordinal.
  std::uint32_t attacked_sensor(std::uint32_t attack_ordinal) const {
    return attacked_sensor_[attack_ordinal];
  }

  const Digraph& digraph() const noexcept { return graph_; }
  std::vector<VertexId> vertices() const;
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  /// Actuators in declaration order, then sensor attacks in sensor order.
  const std::vector<VertexId>& attack_set() const noexcept { return attack_set_; }
  /// Every sensor, protected or not.
  const std::vector<VertexId>& targets() const noexcept { return targets_; }

  /// Position of `v` within attack_set(), if it is attackable.
  std::optional<std::size_t> attack_position(VertexId v) const;

 private:
  friend AttackGraph build_attack_graph(const StructuredSystem& system);

  std::size_t counts_[4] = {0, 0, 0, 0};
  std::vector<std::string> names_;
  std::vector<std::uint32_t> attacked_sensor_;
  Digraph graph_;
  std::vector<VertexId> attack_set_;
  std::vector<VertexId> targets_;
};

AttackGraph build_attack_graph(const StructuredSystem& system);

enum class ViolationKind { kActuatorDangling, kStateUnobserved };

std::string_view to_string(ViolationKind kind);

struct AssumptionViolation {
  VertexId vertex;
  ViolationKind kind;

  bool operator==(const AssumptionViolation&) const = default;
};

/// Checks that every actuator drives some state and every state reaches a
/// sensor. Violations are reported, never thrown.
std::vector<AssumptionViolation> validate_assumptions(const AttackGraph& graph);

}  // namespace secidx
