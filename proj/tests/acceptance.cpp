// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances and thresholds are fixed here.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "secidx/index.hpp"
#include "secidx/io.hpp"
#include "secidx/linking.hpp"
#include "secidx/oracle.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"
#include "support/random_structures.hpp"

using namespace secidx;
using secidx::testing::named;

namespace {

constexpr double kRankTolerance = 1e-9;
constexpr std::size_t kRankRealizations = 3;
constexpr std::size_t kRankFrequencies = 3;
constexpr double kIndexAgreementThreshold = 0.98;
constexpr std::size_t kRealizationsPerStructure = 50;
constexpr std::size_t kMinFullVectorAgreements = 49;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      if (passed) detail << what;
      passed = false;
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double time_limit_seconds;
  std::function<void(Outcome&)> body;
};

std::vector<VertexId> names_to_ids(const AttackGraph& g, std::initializer_list<const char*> names) {
  std::vector<VertexId> out;
  for (auto n : names) out.push_back(named(g, n));
  return out;
}

std::vector<VertexId> members(const std::vector<VertexId>& set, std::uint64_t mask) {
  std::vector<VertexId> out;
  for (std::size_t k = 0; k < set.size(); ++k)
    if (mask >> k & 1U) out.push_back(set[k]);
  return out;
}

void running_example(Outcome& o) {
  const auto g = build_attack_graph(testing::g1());
  const auto u1 = security_index(g, named(g, "u1"));
  const auto a = security_index(g, named(g, "a_y1"));
  const auto u2 = security_index(g, named(g, "u2"));
  o.expect(u1.index == IndexValue::finite(2), "delta(u1) = " + u1.index.to_string());
  o.expect(a.index == IndexValue::finite(2), "delta(a_y1) = " + a.index.to_string());
  o.expect(u2.index.is_infinite(), "delta(u2) = " + u2.index.to_string());
  o.expect(u1.witness == names_to_ids(g, {"u1", "a_y1"}), "witness for u1 is not {u1, a_y1}");
  o.detail << "u1=" << u1.index.to_string() << " a_y1=" << a.index.to_string()
           << " u2=" << u2.index.to_string();
}

void counterexample(Outcome& o) {
  const auto g = build_attack_graph(testing::g2());
  const auto u1 = security_index(g, named(g, "u1"));
  const auto size = max_linking_size(g, names_to_ids(g, {"u1", "u2", "u3"}), g.targets());
  const bool invertible = is_generically_left_invertible(g);
  o.expect(u1.index.is_infinite(), "delta(u1) = " + u1.index.to_string());
  o.expect(size == 2, "max linking = " + std::to_string(size));
  o.expect(!invertible, "reported left-invertible");
  o.detail << "u1=" << u1.index.to_string() << " linking=" << size
           << " left_invertible=" << (invertible ? "true" : "false");
}

void linking_oracle(Outcome& o) {
  std::mt19937_64 rng(3003);
  std::size_t agree = 0;
  std::vector<std::size_t> by_size(5, 0);
  constexpr std::size_t kGraphs = 500;
  for (std::size_t k = 0; k < kGraphs; ++k) {
    const auto r = testing::random_digraph(rng, 10, 4, 1);
    const auto flow = max_linking_size(r.graph, r.sources, r.targets);
    const auto exhaustive = testing::exhaustive_linking_size(r.graph, r.sources, r.targets);
    if (flow == exhaustive) ++agree;
    ++by_size[std::min<std::size_t>(exhaustive, 4)];
  }
  o.expect(agree == kGraphs, "disagreements found");
  o.detail << agree << "/" << kGraphs << " digraphs agree; linking sizes 0..4:";
  for (auto c : by_size) o.detail << " " << c;
}

void rank_agreement(Outcome& o) {
  std::vector<StructuredSystem> systems = {testing::g1(), testing::g2()};
  std::mt19937_64 rng(4004);
  for (int k = 0; k < 100; ++k) systems.push_back(testing::random_structure(rng));

  std::size_t checks = 0, agree = 0;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const auto g = build_attack_graph(systems[s]);
    const auto probe = make_probe(derive_seed(4004, s), kRankFrequencies, kRankTolerance,
                                  kRankRealizations);
    const auto& attack = g.attack_set();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << attack.size()); ++mask) {
      const auto cols = members(attack, mask);
      const auto numeric = generic_normal_rank(systems[s], cols, probe);
      const auto linking = max_linking_size(g, cols, g.targets());
      ++checks;
      if (numeric == linking) {
        ++agree;
      } else if (o.passed) {
        o.expect(false, "structure " + std::to_string(s) + " mask " + std::to_string(mask) +
                            ": rank " + std::to_string(numeric) + " vs linking " +
                            std::to_string(linking) + "; ");
      }
    }
  }
  o.detail << agree << "/" << checks << " subsets agree";
}

void index_genericity(Outcome& o) {
  std::vector<StructuredSystem> systems = {testing::g1(), testing::g2()};
  std::mt19937_64 rng(5005);
  for (int k = 0; k < 50; ++k) systems.push_back(testing::random_structure(rng));

  std::size_t pairs = 0, agree = 0, weak_structures = 0, finite = 0;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const auto g = build_attack_graph(systems[s]);
    std::vector<IndexValue> structural;
    for (auto c : g.attack_set()) {
      structural.push_back(security_index(g, c).index);
      if (structural.back().is_finite()) ++finite;
    }
    const auto probe = make_probe(derive_seed(5005, s), kRankFrequencies, kRankTolerance, 1);
    std::size_t full = 0;
    for (std::size_t t = 0; t < kRealizationsPerStructure; ++t) {
      const auto r = sample_realization(systems[s], derive_seed(derive_seed(5005, s), t));
      const auto numeric = numeric_security_indices(r, probe);
      bool same = true;
      for (std::size_t k = 0; k < numeric.size(); ++k) {
        ++pairs;
        if (numeric[k] == structural[k]) {
          ++agree;
        } else {
          same = false;
        }
      }
      if (same) ++full;
    }
    if (full < kMinFullVectorAgreements) {
      ++weak_structures;
      o.expect(false, "structure " + std::to_string(s) + " only " + std::to_string(full) +
                          "/50 identical vectors; ");
    }
  }
  const double rate = pairs == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(pairs);
  o.expect(rate >= kIndexAgreementThreshold, "pair agreement below 98%; ");
  o.detail << agree << "/" << pairs << " pairs agree (" << std::fixed << std::setprecision(4)
           << 100.0 * rate << "%), " << weak_structures << " structures below 49/50, " << finite
           << " finite structural indices";
}

void structural_invariants(Outcome& o) {
  std::mt19937_64 rng(6006);
  std::size_t cases = 0, violations = 0;
  auto violate = [&](const std::string& what) {
    ++violations;
    o.expect(false, what + "; ");
  };
  testing::StructureShape assumed;
  assumed.satisfy_assumptions = true;

  for (int k = 0; k < 1000; ++k, ++cases) {
    const auto system = testing::random_structure(rng, k % 2 == 0 ? assumed : testing::StructureShape{});
    const auto g = build_attack_graph(system);
    const auto& attack = g.attack_set();
    const auto n = attack.size();
    const auto full_mask = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    const auto mask = n == 0 ? 0 : rng() & full_mask;
    const auto sources = members(attack, mask);

    // Bounds.
    const auto size = max_linking_size(g, sources, g.targets());
    if (size > std::min(sources.size(), g.targets().size())) violate("flow bound");

    // Removing one source drops the size by zero or one.
    for (const auto& v : sources) {
      std::vector<VertexId> rest;
      for (const auto& w : sources)
        if (w != v) rest.push_back(w);
      const auto smaller = max_linking_size(g, rest, g.targets());
      if (!(smaller == size || smaller + 1 == size)) violate("source removal");
    }

    // Growing the source set never shrinks the linking.
    const auto grown = members(attack, mask | (n == 0 ? 0 : rng() & full_mask));
    if (max_linking_size(g, grown, g.targets()) < size) violate("monotonicity");

    std::vector<IndexValue> indices;
    for (auto c : attack) indices.push_back(security_index(g, c).index);

    if (validate_assumptions(g).empty()) {
      for (const auto& idx : indices)
        if (idx < IndexValue::finite(2)) violate("index below 2 under the assumptions");
    }

    // Protecting one more sensor never lowers a remaining component's index.
    for (std::uint32_t j = 0; j < system.sensor_count(); ++j) {
      if (system.sensors()[j].is_protected) continue;
      const auto hardened_graph = build_attack_graph(system.with_protected(system.sensors()[j].name));
      for (std::size_t p = 0; p < attack.size(); ++p) {
        const auto v = attack[p];
        VertexId mapped = v;
        if (v.kind == VertexKind::kSensorAttack) {
          const auto sensor_ordinal = g.attacked_sensor(v.ordinal);
          if (sensor_ordinal == j) continue;
          const auto found = hardened_graph.find(g.name(v));
          if (!found) {
            violate("attack vertex vanished");
            continue;
          }
          mapped = *found;
        }
        if (security_index(hardened_graph, mapped).index < indices[p]) {
          violate("protection lowered an index");
        }
      }
      break;  // one extra protected sensor per case
    }
  }
  o.detail << cases << " generated cases, " << violations << " violations";
}

void determinism(Outcome& o) {
  auto run = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str();
  };

  // A wider random structure so the parallel scan splits real work.
  std::mt19937_64 rng(7007);
  testing::StructureShape wide;
  wide.max_states = 10;
  wide.max_actuators = 8;
  wide.max_sensors = 6;
  wide.max_attack_set = 12;
  const auto wide_path = (std::filesystem::temp_directory_path() / "secidx_acceptance_wide.json").string();
  {
    std::ofstream file(wide_path);
    file << emit_system(testing::random_structure(rng, wide));
  }
  const auto g1 = testing::fixture_path("g1.json");
  const auto g2 = testing::fixture_path("g2.json");

  std::size_t comparisons = 0;
  auto same = [&](const std::string& a, const std::string& b, const std::string& what) {
    ++comparisons;
    o.expect(a == b, what + " differs; ");
    o.expect(a.rfind("0\n", 0) == 0, what + " did not exit 0; ");
  };
  for (const auto& input : {g1, g2, wide_path}) {
    const auto base = run({"index", "--input", input});
    same(base, run({"index", "--input", input}), "index rerun");
    same(base, run({"index", "--input", input, "--threads", "4"}), "index with 4 threads");
    same(run({"index", "--input", input, "--threads", "3"}),
         run({"index", "--input", input, "--threads", "3"}), "threaded index rerun");
  }
  for (const auto& input : {g1, g2}) {
    const auto base = run({"verify", "--input", input, "--trials", "20", "--seed", "7"});
    same(base, run({"verify", "--input", input, "--trials", "20", "--seed", "7"}), "verify rerun");
    same(base, run({"verify", "--input", input, "--trials", "20", "--seed", "7", "--threads", "4"}),
         "verify with 4 threads");
  }
  std::filesystem::remove(wide_path);
  o.detail << comparisons << " byte comparisons";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "running-example regression (G1)", 1.0, running_example},
      {2, "counterexample regression (G2)", 1.0, counterexample},
      {3, "linking vs exhaustive enumeration, 500 digraphs", 60.0, linking_oracle},
      {4, "normal rank equals maximum linking size", 120.0, rank_agreement},
      {5, "realization index equals structural index", 600.0, index_genericity},
      {6, "structural invariants, 1000 generated cases", 600.0, structural_invariants},
      {7, "byte-identical repeated runs", 600.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(outcome);
    } catch (const std::exception& e) {
      outcome.expect(false, std::string("exception: ") + e.what() + "; ");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_seconds) {
      outcome.expect(false, "exceeded the " + std::to_string(c.time_limit_seconds) + " s budget; ");
    }
    if (!outcome.passed) ++failures;
    std::cout << (outcome.passed ? "[PASS] " : "[FAIL] ") << "criterion " << c.number << ": "
              << c.title << " (" << std::fixed << std::setprecision(2) << seconds << " s) "
              << outcome.detail.str() << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
