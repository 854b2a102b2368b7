#include "secidx/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "secidx/error.hpp"

namespace secidx {

namespace {

using Json = nlohmann::ordered_json;

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void type_error(const std::string& path, std::string_view expected) {
  throw Error(ErrorKind::kSyntax, path,
              "field '" + path + "' must be " + std::string(expected));
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) type_error(path, "a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& doc, const std::string& key, bool required) {
  std::vector<std::string> out;
  if (!doc.contains(key)) {
    if (required) {
      throw Error(ErrorKind::kMissingField, key, "missing required field '" + key + "'");
    }
    return out;
  }
  const auto& arr = doc.at(key);
  if (!arr.is_array()) type_error(key, "an array of names");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(as_string(arr[k], key + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<SensorDecl> sensor_list(const Json& doc) {
  if (!doc.contains("sensors")) {
    throw Error(ErrorKind::kMissingField, "sensors", "missing required field 'sensors'");
  }
  const auto& arr = doc.at("sensors");
  if (!arr.is_array()) type_error("sensors", "an array of sensor objects");
  std::vector<SensorDecl> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto path = "sensors[" + std::to_string(k) + "]";
    const auto& entry = arr[k];
    if (!entry.is_object()) type_error(path, "an object with 'name' and 'protected'");
    SensorDecl decl;
    for (const auto& [key, value] : entry.items()) {
      if (key == "name") {
        decl.name = as_string(value, path + ".name");
      } else if (key == "protected") {
        if (!value.is_boolean()) type_error(path + ".protected", "a boolean");
        decl.is_protected = value.get<bool>();
      } else {
        throw Error(ErrorKind::kUnknownField, path + "." + key,
                    "unknown field '" + path + "." + key + "'");
      }
    }
    if (!entry.contains("name")) {
      throw Error(ErrorKind::kMissingField, path + ".name",
                  "missing required field '" + path + ".name'");
    }
    out.push_back(std::move(decl));
  }
  return out;
}

std::vector<NamedEdge> edge_list(const Json& doc, const std::string& key) {
  std::vector<NamedEdge> out;
  if (!doc.contains(key)) return out;
  const auto& arr = doc.at(key);
  if (!arr.is_array()) type_error(key, "an array of [from, to] pairs");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto path = key + "[" + std::to_string(k) + "]";
    const auto& pair = arr[k];
    if (!pair.is_array() || pair.size() != 2) type_error(path, "a [from, to] pair");
    out.push_back({as_string(pair[0], path + "[0]"), as_string(pair[1], path + "[1]")});
  }
  return out;
}

Json names_of(const AttackGraph& graph, const std::vector<VertexId>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(graph.name(v));
  return out;
}

std::string quoted(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

StructuredSystem parse_system(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kSyntax, line_context(text, e.byte > 0 ? e.byte - 1 : 0),
                line_context(text, e.byte > 0 ? e.byte - 1 : 0) + ": malformed document (" +
                    e.what() + ")");
  }
  if (!doc.is_object()) type_error("<root>", "an object");

  static const std::set<std::string> kKnown = {"schema_version", "description", "states",
                                               "actuators",      "sensors",     "w_edges",
                                               "b_edges",        "c_edges"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKnown.contains(key)) {
      throw Error(ErrorKind::kUnknownField, key, "unknown field '" + key + "'");
    }
  }
  if (!doc.contains("schema_version")) {
    throw Error(ErrorKind::kMissingField, "schema_version",
                "missing required field 'schema_version'");
  }
  const auto version = as_string(doc.at("schema_version"), "schema_version");
  if (version != kSchemaVersion) {
    throw Error(ErrorKind::kSchemaVersion, version,
                "unsupported schema_version '" + version + "' (expected \"" +
                    std::string(kSchemaVersion) + "\")");
  }
  if (doc.contains("description")) as_string(doc.at("description"), "description");

  return StructuredSystem(string_list(doc, "states", true), string_list(doc, "actuators", false),
                          sensor_list(doc), edge_list(doc, "w_edges"), edge_list(doc, "b_edges"),
                          edge_list(doc, "c_edges"));
}

StructuredSystem load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, path, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str());
}

std::string emit_system(const StructuredSystem& system, std::string_view description) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  if (!description.empty()) doc["description"] = description;
  doc["states"] = system.states();
  doc["actuators"] = system.actuators();
  doc["sensors"] = Json::array();
  for (const auto& s : system.sensors()) {
    doc["sensors"].push_back({{"name", s.name}, {"protected", s.is_protected}});
  }
  auto edges = [](const std::vector<NamedEdge>& list) {
    Json arr = Json::array();
    for (const auto& e : list) arr.push_back(Json::array({e.from, e.to}));
    return arr;
  };
  doc["w_edges"] = edges(system.w_edges());
  doc["b_edges"] = edges(system.b_edges());
  doc["c_edges"] = edges(system.c_edges());
  return doc.dump(2) + "\n";
}

std::string emit_report(const IndexReport& report, const AttackGraph& graph) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  const auto& s = report.graph_summary;
  doc["graph"] = {{"states", s.states},
                  {"actuators", s.actuators},
                  {"sensors", s.sensors},
                  {"sensor_attacks", s.sensor_attacks},
                  {"edges", s.edges}};
  doc["assumption_violations"] = Json::array();
  for (const auto& v : report.assumption_violations) {
    doc["assumption_violations"].push_back(
        {{"vertex", graph.name(v.vertex)}, {"kind", std::string(to_string(v.kind))}});
  }
  doc["results"] = Json::array();
  for (const auto& entry : report.entries) {
    Json item;
    item["name"] = graph.name(entry.component);
    item["kind"] = std::string(to_string(entry.component.kind));
    if (!entry.result) {
      item["error"] = entry.error;
    } else {
      const auto& r = *entry.result;
      if (r.index.is_finite()) {
        item["index"] = r.index.value();
        item["witness"] = names_of(graph, r.witness);
      } else {
        item["index"] = "inf";
      }
      item["subsets_examined"] = r.subsets_examined;
    }
    doc["results"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string emit_linking(const AttackGraph& graph, const Linking& linking,
                         std::span<const VertexId> sources, std::span<const VertexId> targets) {
  Json doc;
  doc["size"] = linking.size();
  doc["sources"] = names_of(graph, {sources.begin(), sources.end()});
  doc["targets"] = names_of(graph, {targets.begin(), targets.end()});
  doc["paths"] = Json::array();
  for (const auto& path : linking.paths) doc["paths"].push_back(names_of(graph, path));
  return doc.dump(2) + "\n";
}

std::string export_dot(const AttackGraph& graph, const std::optional<Linking>& highlight) {
  std::set<std::pair<VertexId, VertexId>> marked;
  std::set<VertexId> on_path;
  if (highlight) {
    for (const auto& path : highlight->paths) {
      for (std::size_t k = 0; k < path.size(); ++k) {
        if (!graph.contains(path[k])) {
          throw Error(ErrorKind::kUnknownVertex,
                      std::string(to_string(path[k].kind)) + "#" + std::to_string(path[k].ordinal),
                      "highlighted linking references a vertex outside the graph");
        }
        on_path.insert(path[k]);
        if (k + 1 < path.size()) marked.emplace(path[k], path[k + 1]);
      }
    }
  }

  for (const auto& [from, to] : marked) {
    if (!graph.digraph().has_edge(graph.dense(from), graph.dense(to))) {
      throw Error(ErrorKind::kUnknownVertex, graph.name(from) + "->" + graph.name(to),
                  "highlighted linking uses an edge that is not in the graph");
    }
  }

  std::ostringstream out;
  out << "digraph attack_graph {\n";
  if (graph.vertex_count() > 0) {
    out << "  rankdir=LR;\n";
    out << "  node [fontname=\"Helvetica\"];\n";
  }
  std::vector<bool> attacked(graph.sensor_count(), false);
  for (std::uint32_t k = 0; k < graph.sensor_attack_count(); ++k) {
    attacked[graph.attacked_sensor(k)] = true;
  }
  for (const auto& v : graph.vertices()) {
    out << "  " << quoted(graph.name(v)) << " [";
    switch (v.kind) {
      case VertexKind::kState:
        out << "shape=circle";
        break;
      case VertexKind::kActuator:
        out << "shape=box, style=filled, fillcolor=\"#cfe2f3\"";
        break;
      case VertexKind::kSensor:
        out << "shape=doublecircle"
            << (attacked[v.ordinal] ? "" : ", style=filled, fillcolor=\"#d9ead3\"");
        break;
      case VertexKind::kSensorAttack:
        out << "shape=diamond, style=filled, fillcolor=\"#f4cccc\"";
        break;
    }
    if (on_path.contains(v)) out << ", color=red";
    out << "];\n";
  }
  for (const auto& [from, to] : graph.edges()) {
    out << "  " << quoted(graph.name(from)) << " -> " << quoted(graph.name(to));
    if (marked.contains({from, to})) out << " [color=red, penwidth=2.5]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace secidx
