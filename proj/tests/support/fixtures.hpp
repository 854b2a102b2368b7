#pragma once

#include <string>

#include "secidx/io.hpp"
#include "secidx/model.hpp"

namespace secidx::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(SECIDX_FIXTURE_DIR) + "/" + name;
}

inline StructuredSystem g1() { return load_system(fixture_path("g1.json")); }
inline StructuredSystem g2() { return load_system(fixture_path("g2.json")); }

/// u1 -> x1 -> y1 with y1 protected.
inline StructuredSystem chain() {
  return StructuredSystem({"x1"}, {"u1"}, {{"y1", true}}, {}, {{"u1", "x1"}}, {{"x1", "y1"}});
}

inline VertexId named(const AttackGraph& g, const std::string& name) {
  const auto v = g.find(name);
  if (!v) throw std::runtime_error("fixture has no vertex " + name);
  return *v;
}

}  // namespace secidx::testing
