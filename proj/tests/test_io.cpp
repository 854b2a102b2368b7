#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "secidx/error.hpp"
#include "secidx/io.hpp"
#include "support/fixtures.hpp"
#include "support/random_structures.hpp"

using namespace secidx;
using secidx::testing::named;

namespace {

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_system(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ErrorKind::kIo;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse the G1 fixture") {
  const auto sys = testing::g1();
  CHECK(sys.state_count() == 4);
  CHECK(sys.actuator_count() == 2);
  CHECK(sys.sensor_count() == 3);
  CHECK(sys.unprotected_count() == 1);
}

TEST_CASE("minimal document") {
  const auto sys = parse_system(R"({"schema_version": "1", "states": ["x1"],
                                    "sensors": [{"name": "y1", "protected": true}]})");
  CHECK(sys.state_count() == 1);
  CHECK(sys.actuator_count() == 0);
  const auto g = build_attack_graph(sys);
  CHECK(g.edge_count() == 0);
  CHECK(g.attack_set().empty());
}

TEST_CASE("parse errors have distinct kinds") {
  CHECK(parse_error_kind(R"({"schema_version": "1", "states": ["x1"],)") == ErrorKind::kSyntax);
  CHECK(parse_error_kind(R"({"schema_version": "1", "states": ["x1"], "sensors": [{"name": "y1"}],
                             "gains": []})") == ErrorKind::kUnknownField);
  CHECK(parse_error_kind(R"({"schema_version": "1", "states": ["x1"],
                             "sensors": [{"name": "y1", "weight": 2}]})") == ErrorKind::kUnknownField);
  CHECK(parse_error_kind(R"({"schema_version": "1", "states": ["x1"], "sensors": [{"name": "y1"}],
                             "w_edges": [["x1", "x9"]]})") == ErrorKind::kDanglingEndpoint);
  CHECK(parse_error_kind(R"({"schema_version": "1", "states": ["x1", "y1"],
                             "sensors": [{"name": "y1"}]})") == ErrorKind::kDuplicateName);
  CHECK(parse_error_kind(R"({"schema_version": "2", "states": ["x1"],
                             "sensors": [{"name": "y1"}]})") == ErrorKind::kSchemaVersion);
  CHECK(parse_error_kind(R"({"schema_version": "1", "sensors": [{"name": "y1"}]})") ==
        ErrorKind::kMissingField);
  CHECK(parse_error_kind(R"({"schema_version": "1", "states": [1], "sensors": [{"name": "y1"}]})") ==
        ErrorKind::kSyntax);
}

TEST_CASE("error context") {
  try {
    parse_system("{\n  \"schema_version\": \"1\",\n  \"states\": [\"x1\" \"x2\"]\n}");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_system(R"({"schema_version": "1", "states": ["x1"], "sensors": [{"name": "y1"}],
                     "c_edges": [["x1", "x9"]]})");
    FAIL("expected a dangling endpoint");
  } catch (const Error& e) {
    CHECK(e.subject() == "x9");
    CHECK(std::string(e.what()).find("x9") != std::string::npos);
  }
  try {
    parse_system(R"({"schema_version": "1", "states": ["x1"], "sensors": [{"name": 3}]})");
    FAIL("expected a type error");
  } catch (const Error& e) {
    CHECK(e.subject() == "sensors[0].name");
  }
  CHECK_THROWS_AS(load_system("/nonexistent/system.json"), Error);
}

TEST_CASE("system documents round-trip") {
  CHECK(parse_system(emit_system(testing::g1())) == testing::g1());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = testing::random_structure(rng);
    CHECK(parse_system(emit_system(sys, "random")) == sys);
    const auto g = build_attack_graph(parse_system(emit_system(sys)));
    CHECK(g.edges() == build_attack_graph(sys).edges());
  }
}

TEST_CASE("G1 report matches the golden file") {
  const auto g = build_attack_graph(testing::g1());
  const auto text = emit_report(all_indices(g), g);
  CHECK(text == read_file(testing::fixture_path("g1_report.json")));
  CHECK(text == emit_report(all_indices(g), g));

  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["results"][0]["name"] == "u1");
  CHECK(doc["results"][0]["index"] == 2);
  CHECK(doc["results"][0]["witness"] == nlohmann::json::array({"u1", "a_y1"}));
  CHECK(doc["results"][1]["index"] == "inf");
  CHECK_FALSE(doc["results"][1].contains("witness"));
  CHECK(doc["results"][2]["index"] == 2);
}

TEST_CASE("G2 report and empty report") {
  const auto g = build_attack_graph(testing::g2());
  const auto doc = nlohmann::json::parse(emit_report(all_indices(g), g));
  CHECK(doc["results"][0]["index"] == "inf");
  CHECK(doc["results"][1]["index"] == 2);
  CHECK(doc["results"][2]["index"] == 2);

  StructuredSystem quiet({"x1"}, {}, {{"y1", true}}, {}, {}, {{"x1", "y1"}});
  const auto qg = build_attack_graph(quiet);
  const auto empty = nlohmann::json::parse(emit_report(all_indices(qg), qg));
  CHECK(empty["results"].empty());
}

TEST_CASE("DOT export") {
  const auto g = build_attack_graph(testing::g1());
  const auto dot = export_dot(g);
  CHECK(dot.rfind("digraph attack_graph {", 0) == 0);
  CHECK(count(dot, "shape=") == 10);
  CHECK(count(dot, " -> ") == 9);
  CHECK(count(dot, "color=red") == 0);
  CHECK(dot == export_dot(g));

  Linking attack_path{{{named(g, "a_y1"), named(g, "y1")}}};
  const auto marked = export_dot(g, attack_path);
  CHECK(marked.find("\"a_y1\" -> \"y1\" [color=red, penwidth=2.5];") != std::string::npos);
  CHECK(count(marked, "penwidth") == 1);

  Linking foreign{{{state(40), named(g, "y1")}}};
  CHECK_THROWS_AS(export_dot(g, foreign), Error);
  Linking missing_edge{{{named(g, "u1"), named(g, "y1")}}};
  CHECK_THROWS_AS(export_dot(g, missing_edge), Error);

  CHECK(export_dot(AttackGraph{}) == "digraph attack_graph {\n}\n");
}
