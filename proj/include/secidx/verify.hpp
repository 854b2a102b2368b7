#pragma once

#include <cstdint>
#include <vector>

#include "secidx/index.hpp"
#include "secidx/model.hpp"

namespace secidx {

struct VerifyOptions {
  std::size_t trials = 50;  // realizations for the index comparison
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::size_t frequencies = 3;
  std::size_t rank_trials = 3;  // realizations per normal-rank estimate
  std::size_t enumeration_cap = 20;
  /// Attack subsets checked for rank/linking agreement; all subsets are
  /// checked when there are at most this many, otherwise a seeded sample.
  std::size_t max_rank_subsets = 4096;
  unsigned threads = 1;
};

struct RankMismatch {
  std::vector<VertexId> columns;
  std::size_t linking_size = 0;
  std::size_t numeric_rank = 0;
};

struct ComponentAgreement {
  VertexId component;
  IndexValue structural = IndexValue::infinite();
  std::size_t agreeing = 0;
  std::size_t total = 0;
};

struct VerifySummary {
  std::size_t rank_checks = 0;
  std::size_t rank_agreements = 0;
  std::vector<RankMismatch> rank_mismatches;

  std::size_t index_pairs = 0;
  std::size_t index_agreements = 0;
  std::size_t realizations = 0;
  std::size_t full_vector_agreements = 0;
  /// Disagreeing realizations whose redraw agreed with the structural index.
  std::size_t resolved_on_resample = 0;
  std::vector<ComponentAgreement> components;

  double rank_agreement_rate() const {
    return rank_checks == 0 ? 1.0 : static_cast<double>(rank_agreements) / rank_checks;
  }
  double index_agreement_rate() const {
    return index_pairs == 0 ? 1.0 : static_cast<double>(index_agreements) / index_pairs;
  }
};

/// Cross-checks the graph computations against random realizations:
/// numerical normal rank against maximum linking size for attack subsets,
/// and the realization-level index against the structural index for every
/// attackable component. Deterministic for fixed options.
VerifySummary cross_validate(const StructuredSystem& system, const VerifyOptions& options);

}  // namespace secidx
