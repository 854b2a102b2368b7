#include "secidx/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "secidx/error.hpp"

namespace secidx {

namespace {

using NameIndex = std::unordered_map<std::string, std::uint32_t>;

NameIndex index_names(const std::vector<std::string>& names,
                      std::set<std::string>& all_names) {
  NameIndex index;
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) {
      throw Error(ErrorKind::kInvalidArgument, names[i], "vertex names must be non-empty");
    }
    if (!all_names.insert(names[i]).second) {
      throw Error(ErrorKind::kDuplicateName, names[i],
                  "duplicate vertex name '" + names[i] + "'");
    }
    index.emplace(names[i], i);
  }
  return index;
}

std::uint32_t resolve(const NameIndex& index, const std::string& name,
                      std::string_view role, std::string_view block) {
  auto it = index.find(name);
  if (it == index.end()) {
    throw Error(ErrorKind::kDanglingEndpoint, name,
                std::string(block) + " edge references undeclared " +
                    std::string(role) + " '" + name + "'");
  }
  return it->second;
}

std::vector<StructuredSystem::IndexEdge> resolve_edges(
    const std::vector<NamedEdge>& edges, const NameIndex& from_index,
    std::string_view from_role, const NameIndex& to_index,
    std::string_view to_role, std::string_view block) {
  std::vector<StructuredSystem::IndexEdge> out;
  out.reserve(edges.size());
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : edges) {
    StructuredSystem::IndexEdge ie{resolve(from_index, e.from, from_role, block),
                                   resolve(to_index, e.to, to_role, block)};
    if (!seen.emplace(ie.from, ie.to).second) {
      throw Error(ErrorKind::kDuplicateEdge, e.from + "->" + e.to,
                  "duplicate " + std::string(block) + " edge " + e.from + " -> " + e.to);
    }
    out.push_back(ie);
  }
  return out;
}

}  // namespace

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::kState: return "state";
    case VertexKind::kActuator: return "actuator";
    case VertexKind::kSensor: return "sensor";
    case VertexKind::kSensorAttack: return "sensor-attack";
  }
  return "unknown";
}

std::string attack_vertex_name(std::string_view sensor_name) {
  return "a_" + std::string(sensor_name);
}

StructuredSystem::StructuredSystem(std::vector<std::string> states,
                                   std::vector<std::string> actuators,
                                   std::vector<SensorDecl> sensors,
                                   std::vector<NamedEdge> w_edges,
                                   std::vector<NamedEdge> b_edges,
                                   std::vector<NamedEdge> c_edges)
    : states_(std::move(states)),
      actuators_(std::move(actuators)),
      sensors_(std::move(sensors)),
      w_edges_(std::move(w_edges)),
      b_edges_(std::move(b_edges)),
      c_edges_(std::move(c_edges)) {
  if (states_.empty()) {
    throw Error(ErrorKind::kEmptyVertexClass, "states", "a system needs at least one state");
  }
  if (sensors_.empty()) {
    throw Error(ErrorKind::kEmptyVertexClass, "sensors", "a system needs at least one sensor");
  }

  std::set<std::string> all_names;
  const auto state_index = index_names(states_, all_names);
  const auto actuator_index = index_names(actuators_, all_names);
  std::vector<std::string> sensor_names;
  for (const auto& s : sensors_) sensor_names.push_back(s.name);
  const auto sensor_index = index_names(sensor_names, all_names);
  // Attack vertices are named after their sensor and share the namespace.
  for (const auto& s : sensors_) {
    if (s.is_protected) continue;
    const auto attack_name = attack_vertex_name(s.name);
    if (!all_names.insert(attack_name).second) {
      throw Error(ErrorKind::kDuplicateName, attack_name,
                  "name '" + attack_name + "' collides with the attack vertex of sensor '" +
                      s.name + "'");
    }
  }

  w_index_ = resolve_edges(w_edges_, state_index, "state", state_index, "state", "W");
  b_index_ = resolve_edges(b_edges_, actuator_index, "actuator", state_index, "state", "B");
  c_index_ = resolve_edges(c_edges_, state_index, "state", sensor_index, "sensor", "C");
}

std::size_t StructuredSystem::unprotected_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      sensors_.begin(), sensors_.end(), [](const SensorDecl& s) { return !s.is_protected; }));
}

StructuredSystem StructuredSystem::with_protected(std::string_view sensor_name) const {
  auto sensors = sensors_;
  auto it = std::find_if(sensors.begin(), sensors.end(),
                         [&](const SensorDecl& s) { return s.name == sensor_name; });
  if (it == sensors.end()) {
    throw Error(ErrorKind::kUnknownVertex, std::string(sensor_name),
                "no sensor named '" + std::string(sensor_name) + "'");
  }
  it->is_protected = true;
  return StructuredSystem(states_, actuators_, std::move(sensors), w_edges_, b_edges_, c_edges_);
}

bool AttackGraph::contains(VertexId v) const noexcept {
  return v.ordinal < counts_[static_cast<std::size_t>(v.kind)];
}

std::uint32_t AttackGraph::dense(VertexId v) const {
  if (!contains(v)) {
    throw Error(ErrorKind::kUnknownVertex,
                std::string(to_string(v.kind)) + "#" + std::to_string(v.ordinal),
                "vertex " + std::string(to_string(v.kind)) + " #" + std::to_string(v.ordinal) +
                    " is not part of the graph");
  }
  std::size_t offset = 0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(v.kind); ++k) offset += counts_[k];
  return static_cast<std::uint32_t>(offset + v.ordinal);
}

VertexId AttackGraph::vertex(std::uint32_t dense_index) const {
  std::uint32_t rest = dense_index;
  for (std::uint8_t k = 0; k < 4; ++k) {
    if (rest < counts_[k]) return {static_cast<VertexKind>(k), rest};
    rest -= static_cast<std::uint32_t>(counts_[k]);
  }
  throw Error(ErrorKind::kUnknownVertex, std::to_string(dense_index),
              "dense vertex index out of range");
}

std::optional<VertexId> AttackGraph::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return vertex(static_cast<std::uint32_t>(it - names_.begin()));
}

std::vector<VertexId> AttackGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(vertex_count());
  for (std::uint32_t v = 0; v < vertex_count(); ++v) out.push_back(vertex(v));
  return out;
}

std::vector<std::pair<VertexId, VertexId>> AttackGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count());
  for (std::uint32_t v = 0; v < vertex_count(); ++v) {
    for (auto w : graph_.successors(v)) out.emplace_back(vertex(v), vertex(w));
  }
  return out;
}

std::optional<std::size_t> AttackGraph::attack_position(VertexId v) const {
  if (!contains(v)) return std::nullopt;
  if (v.kind == VertexKind::kActuator) return v.ordinal;
  if (v.kind == VertexKind::kSensorAttack) return actuator_count() + v.ordinal;
  return std::nullopt;
}

AttackGraph build_attack_graph(const StructuredSystem& system) {
  AttackGraph g;
  g.counts_[0] = system.state_count();
  g.counts_[1] = system.actuator_count();
  g.counts_[2] = system.sensor_count();

  for (std::uint32_t j = 0; j < system.sensor_count(); ++j) {
    if (!system.sensors()[j].is_protected) g.attacked_sensor_.push_back(j);
  }
  g.counts_[3] = g.attacked_sensor_.size();

  for (const auto& n : system.states()) g.names_.push_back(n);
  for (const auto& n : system.actuators()) g.names_.push_back(n);
  for (const auto& s : system.sensors()) g.names_.push_back(s.name);
  for (auto j : g.attacked_sensor_) {
    g.names_.push_back(attack_vertex_name(system.sensors()[j].name));
  }

  std::vector<Digraph::Edge> edges;
  for (const auto& e : system.state_edges()) {
    edges.emplace_back(g.dense(state(e.from)), g.dense(state(e.to)));
  }
  for (const auto& e : system.actuator_edges()) {
    edges.emplace_back(g.dense(actuator(e.from)), g.dense(state(e.to)));
  }
  for (const auto& e : system.sensor_edges()) {
    edges.emplace_back(g.dense(state(e.from)), g.dense(sensor(e.to)));
  }
  for (std::uint32_t k = 0; k < g.attacked_sensor_.size(); ++k) {
    edges.emplace_back(g.dense(sensor_attack(k)), g.dense(sensor(g.attacked_sensor_[k])));
  }
  const auto total = g.names_.size();
  g.graph_ = Digraph(total, edges);

  for (std::uint32_t i = 0; i < g.counts_[1]; ++i) g.attack_set_.push_back(actuator(i));
  for (std::uint32_t k = 0; k < g.counts_[3]; ++k) g.attack_set_.push_back(sensor_attack(k));
  for (std::uint32_t j = 0; j < g.counts_[2]; ++j) g.targets_.push_back(sensor(j));
  return g;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kActuatorDangling: return "actuator-dangling";
    case ViolationKind::kStateUnobserved: return "state-unobserved";
  }
  return "unknown";
}

std::vector<AssumptionViolation> validate_assumptions(const AttackGraph& graph) {
  std::vector<AssumptionViolation> out;
  const auto& g = graph.digraph();
  for (std::uint32_t i = 0; i < graph.actuator_count(); ++i) {
    if (g.successors(graph.dense(actuator(i))).empty()) {
      out.push_back({actuator(i), ViolationKind::kActuatorDangling});
    }
  }

  // Reverse reachability from the sensor set.
  std::vector<std::vector<std::uint32_t>> predecessors(g.size());
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    for (auto w : g.successors(v)) predecessors[w].push_back(v);
  }
  std::vector<bool> observed(g.size(), false);
  std::vector<std::uint32_t> stack;
  for (auto y : graph.targets()) {
    const auto d = graph.dense(y);
    observed[d] = true;
    stack.push_back(d);
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto p : predecessors[v]) {
      if (!observed[p]) {
        observed[p] = true;
        stack.push_back(p);
      }
    }
  }
  for (std::uint32_t i = 0; i < graph.state_count(); ++i) {
    if (!observed[graph.dense(state(i))]) {
      out.push_back({state(i), ViolationKind::kStateUnobserved});
    }
  }
  return out;
}

}  // namespace secidx
