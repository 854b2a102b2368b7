#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "secidx/index.hpp"
#include "secidx/linking.hpp"
#include "secidx/model.hpp"

namespace secidx {

inline constexpr std::string_view kSchemaVersion = "1";

/// Parses a system document (JSON). Errors are Error values whose kind
/// separates syntax, unknown-field, missing-field, schema-version,
/// dangling-endpoint and duplicate-name failures; messages carry the line
/// or field path.
StructuredSystem parse_system(std::string_view text);

/// Reads and parses a system document from disk. Throws Error(kIo) when the
/// file cannot be read.
StructuredSystem load_system(const std::string& path);

/// Inverse of parse_system.
std::string emit_system(const StructuredSystem& system, std::string_view description = {});

/// Machine-readable report with stable key order and trailing newline.
std::string emit_report(const IndexReport& report, const AttackGraph& graph);

/// Maximum linking listing: size, sources, targets and witness paths.
std::string emit_linking(const AttackGraph& graph, const Linking& linking,
                         std::span<const VertexId> sources, std::span<const VertexId> targets);

/// Graphviz digraph with one style per vertex class. Edges on the paths of
/// `highlight` are drawn bold and red. Throws Error(kUnknownVertex) if the
/// highlight does not belong to the graph.
std::string export_dot(const AttackGraph& graph, const std::optional<Linking>& highlight = {});

}  // namespace secidx
