#include "secidx/verify.hpp"

#include <algorithm>
#include <random>

#include "secidx/linking.hpp"
#include "secidx/oracle.hpp"

namespace secidx {

namespace {

std::vector<std::uint64_t> rank_subsets(std::size_t width, const VerifyOptions& options) {
  std::vector<std::uint64_t> masks;
  if (width < 63 && (std::uint64_t{1} << width) <= options.max_rank_subsets) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << width); ++m) masks.push_back(m);
    return masks;
  }
  std::mt19937_64 rng(derive_seed(options.seed, 0x5B5E7));
  const auto keep = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  for (std::size_t k = 0; k < options.max_rank_subsets; ++k) masks.push_back(rng() & keep);
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

std::vector<VertexId> members(const std::vector<VertexId>& attack_set, std::uint64_t mask) {
  std::vector<VertexId> out;
  for (std::size_t k = 0; k < attack_set.size(); ++k) {
    if (mask >> k & 1U) out.push_back(attack_set[k]);
  }
  return out;
}

}  // namespace

VerifySummary cross_validate(const StructuredSystem& system, const VerifyOptions& options) {
  const auto graph = build_attack_graph(system);
  const auto& attack_set = graph.attack_set();
  VerifySummary summary;

  // Normal rank of the transfer matrix against maximum linking size. The
  // realizations match those generic_normal_rank draws for the same probe.
  const auto rank_probe = make_probe(options.seed, options.frequencies, options.tolerance,
                                     options.rank_trials);
  std::vector<Eigen::MatrixXcd> evaluations;
  for (std::size_t t = 0; t < rank_probe.trials; ++t) {
    const auto r = sample_realization(system, derive_seed(rank_probe.seed, t));
    for (const auto z : admissible_frequencies(r, rank_probe)) {
      evaluations.push_back(transfer_matrix(r, z));
    }
  }
  for (const auto mask : rank_subsets(attack_set.size(), options)) {
    const auto columns = members(attack_set, mask);
    std::vector<std::size_t> positions;
    for (std::size_t k = 0; k < attack_set.size(); ++k) {
      if (mask >> k & 1U) positions.push_back(k);
    }
    std::size_t numeric = 0;
    for (const auto& g : evaluations) {
      numeric = std::max(numeric, column_rank(g, positions, options.tolerance));
    }
    const auto linking = max_linking_size(graph, columns, graph.targets());
    ++summary.rank_checks;
    if (numeric == linking) {
      ++summary.rank_agreements;
    } else {
      summary.rank_mismatches.push_back({columns, linking, numeric});
    }
  }

  // Realization-level index against the structural index.
  IndexOptions index_options;
  index_options.enumeration_cap = options.enumeration_cap;
  index_options.threads = options.threads;
  std::vector<IndexValue> structural;
  for (const auto& c : attack_set) {
    structural.push_back(security_index(graph, c, index_options).index);
    summary.components.push_back({c, structural.back(), 0, 0});
  }
  const auto index_probe = make_probe(derive_seed(options.seed, 1), options.frequencies,
                                      options.tolerance, 1);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const auto r = sample_realization(system, derive_seed(options.seed, 1000 + t));
    const auto numeric = numeric_security_indices(r, index_probe, options.enumeration_cap);
    bool all_agree = true;
    for (std::size_t k = 0; k < attack_set.size(); ++k) {
      auto& c = summary.components[k];
      ++c.total;
      ++summary.index_pairs;
      if (numeric[k] == structural[k]) {
        ++c.agreeing;
        ++summary.index_agreements;
      } else {
        all_agree = false;
      }
    }
    ++summary.realizations;
    if (all_agree) {
      ++summary.full_vector_agreements;
    } else {
      const auto redraw = sample_realization(system, derive_seed(r.seed, 0xD1CE));
      if (numeric_security_indices(redraw, index_probe, options.enumeration_cap) == structural) {
        ++summary.resolved_on_resample;
      }
    }
  }
  return summary;
}

}  // namespace secidx
