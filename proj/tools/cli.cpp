#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "secidx/error.hpp"
#include "secidx/index.hpp"
#include "secidx/io.hpp"
#include "secidx/linking.hpp"
#include "secidx/verify.hpp"

namespace secidx::cli {

namespace {

struct Config {
  std::string input;
  std::string component;
  std::string sources;
  std::string targets;
  std::string highlight_sources;
  std::string output;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::size_t frequencies = 3;
  std::size_t cap = 20;
  unsigned threads = 1;
  double min_rank_agreement = 1.0;
  double min_index_agreement = 0.98;
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

std::vector<VertexId> resolve_names(const AttackGraph& graph, const std::vector<std::string>& names) {
  std::vector<VertexId> out;
  for (const auto& n : names) {
    const auto v = graph.find(n);
    if (!v) throw Error(ErrorKind::kUnknownVertex, n, "unknown vertex '" + n + "'");
    if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
  }
  return out;
}

void deliver(const Config& config, const std::string& document, std::ostream& out) {
  if (config.output.empty()) {
    out << document;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file || !(file << document)) {
    throw Error(ErrorKind::kIo, config.output, "cannot write '" + config.output + "'");
  }
}

int run_index(const Config& config, std::ostream& out) {
  const auto graph = build_attack_graph(load_system(config.input));
  IndexOptions options;
  options.enumeration_cap = config.cap;
  options.threads = config.threads;

  IndexReport report;
  if (config.component.empty()) {
    report = all_indices(graph, options);
  } else {
    const auto v = graph.find(config.component);
    if (!v || !graph.attack_position(*v)) {
      throw Error(ErrorKind::kUnknownVertex, config.component,
                  "'" + config.component + "' is not an attackable component");
    }
    report = indices_for(graph, {*v}, options);
  }
  for (const auto& entry : report.entries) {
    // A cap violation is a data error for the whole run.
    if (!entry.result) throw Error(ErrorKind::kCapExceeded, graph.name(entry.component), entry.error);
  }
  deliver(config, emit_report(report, graph), out);
  return kOk;
}

int run_linking(const Config& config, std::ostream& out) {
  const auto graph = build_attack_graph(load_system(config.input));
  const auto sources = resolve_names(graph, split_names(config.sources));
  const auto targets = config.targets.empty() ? graph.targets()
                                              : resolve_names(graph, split_names(config.targets));
  const auto linking = find_max_linking(graph, sources, targets);
  deliver(config, emit_linking(graph, linking, sources, targets), out);
  return kOk;
}

int run_export(const Config& config, std::ostream& out) {
  const auto graph = build_attack_graph(load_system(config.input));
  std::optional<Linking> highlight;
  if (!config.highlight_sources.empty()) {
    const auto sources = resolve_names(graph, split_names(config.highlight_sources));
    const auto targets = config.targets.empty() ? graph.targets()
                                                : resolve_names(graph, split_names(config.targets));
    highlight = find_max_linking(graph, sources, targets);
  }
  deliver(config, export_dot(graph, highlight), out);
  return kOk;
}

int run_verify(const Config& config, std::ostream& out) {
  const auto system = load_system(config.input);
  const auto graph = build_attack_graph(system);
  VerifyOptions options;
  options.trials = config.trials;
  options.seed = config.seed;
  options.tolerance = config.tolerance;
  options.frequencies = config.frequencies;
  options.enumeration_cap = config.cap;
  options.threads = config.threads;
  const auto summary = cross_validate(system, options);

  using Json = nlohmann::ordered_json;
  auto names = [&](const std::vector<VertexId>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(graph.name(v));
    return arr;
  };
  const bool rank_ok = summary.rank_agreement_rate() >= config.min_rank_agreement;
  const bool index_ok = summary.index_agreement_rate() >= config.min_index_agreement;

  Json doc;
  doc["seed"] = config.seed;
  doc["trials"] = config.trials;
  Json rank;
  rank["checked"] = summary.rank_checks;
  rank["agreeing"] = summary.rank_agreements;
  rank["rate"] = summary.rank_agreement_rate();
  rank["threshold"] = config.min_rank_agreement;
  rank["mismatches"] = Json::array();
  for (const auto& m : summary.rank_mismatches) {
    rank["mismatches"].push_back({{"columns", names(m.columns)},
                                  {"linking_size", m.linking_size},
                                  {"numeric_rank", m.numeric_rank}});
  }
  doc["rank_agreement"] = std::move(rank);
  Json index;
  index["pairs"] = summary.index_pairs;
  index["agreeing"] = summary.index_agreements;
  index["rate"] = summary.index_agreement_rate();
  index["threshold"] = config.min_index_agreement;
  index["realizations"] = summary.realizations;
  index["full_vector_agreements"] = summary.full_vector_agreements;
  index["resolved_on_resample"] = summary.resolved_on_resample;
  index["components"] = Json::array();
  for (const auto& c : summary.components) {
    Json item;
    item["name"] = graph.name(c.component);
    if (c.structural.is_finite()) {
      item["structural"] = c.structural.value();
    } else {
      item["structural"] = "inf";
    }
    item["agreeing"] = c.agreeing;
    item["total"] = c.total;
    index["components"].push_back(std::move(item));
  }
  doc["index_agreement"] = std::move(index);
  doc["passed"] = rank_ok && index_ok;
  deliver(config, doc.dump(2) + "\n", out);
  return rank_ok && index_ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config config;
  CLI::App app{"Structural actuator security index of structured LTI systems"};
  app.name("secidx");
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "System document (JSON)")->required();
    sub->add_option("--output", config.output, "Write the result here instead of stdout");
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", config.cap, "Largest attack set to enumerate")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{63}));
    sub->add_option("--threads", config.threads, "Worker threads for subset checks")
        ->capture_default_str()
        ->check(CLI::Range(1U, 256U));
  };

  auto* index = app.add_subcommand("index", "Structural security index of attackable components");
  add_common(index);
  index->add_option("--component", config.component, "Only this component (default: all)");
  add_cap(index);

  auto* linking = app.add_subcommand("linking", "Maximum linking between vertex sets");
  add_common(linking);
  linking->add_option("--sources", config.sources, "Comma-separated source names")->required();
  linking->add_option("--targets", config.targets, "Comma-separated target names (default: all sensors)");

  auto* verify = app.add_subcommand("verify", "Cross-check against random numerical realizations");
  add_common(verify);
  verify->add_option("--trials", config.trials, "Realizations for the index comparison")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  verify->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  verify->add_option("--tol", config.tolerance, "Relative singular value cutoff")
      ->capture_default_str()
      ->check([](const std::string& text) -> std::string {
        double v = 0;
        try {
          v = std::stod(text);
        } catch (...) {
          return "not a number";
        }
        return v > 0.0 && v < 1.0 ? "" : "tolerance must lie in (0, 1)";
      });
  verify->add_option("--freqs", config.frequencies, "Sample frequencies per realization")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  verify->add_option("--min-rank-agreement", config.min_rank_agreement,
                     "Required rank/linking agreement rate")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--min-index-agreement", config.min_index_agreement,
                     "Required numeric/structural index agreement rate")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  add_cap(verify);

  auto* export_dot_cmd = app.add_subcommand("export-dot", "Render the attack graph as Graphviz DOT");
  add_common(export_dot_cmd);
  export_dot_cmd->add_option("--highlight-sources", config.highlight_sources,
                             "Highlight a maximum linking from these vertices");
  export_dot_cmd->add_option("--targets", config.targets,
                             "Targets of the highlighted linking (default: all sensors)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (index->parsed()) return run_index(config, out);
    if (linking->parsed()) return run_linking(config, out);
    if (verify->parsed()) return run_verify(config, out);
    return run_export(config, out);
  } catch (const Error& e) {
    err << "secidx: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace secidx::cli
