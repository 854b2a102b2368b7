#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "secidx/index.hpp"
#include "secidx/model.hpp"

namespace secidx {

/// Numerical values for every free parameter of a structured system.
/// Columns of B_a and D_a follow `attack_set`: actuators, then dedicated
/// sensor attacks.
struct Realization {
  Eigen::MatrixXd W;    // N x N
  Eigen::MatrixXd B_a;  // N x P
  Eigen::MatrixXd C;    // M x N
  Eigen::MatrixXd D_a;  // M x P
  std::uint64_t seed = 0;
  std::vector<VertexId> attack_set;

  /// Column of B_a / D_a belonging to an attack-set member.
  std::size_t column_of(VertexId v) const;
};

/// Evaluation protocol for normal ranks: sample points, relative singular
/// value cutoff and number of realizations.
struct RankProbe {
  std::vector<std::complex<double>> frequencies;
  double tolerance = 1e-9;
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  // Annulus used when a frequency has to be redrawn.
  double inner_radius = 1.5;
  double outer_radius = 2.5;

  /// Throws Error(kInvalidArgument) on a tolerance outside (0, 1), zero
  /// trials, an empty frequency list or a degenerate annulus.
  void validate() const;
};

/// Frequencies drawn uniformly (by area) on the annulus
/// inner <= |z| <= outer.
RankProbe make_probe(std::uint64_t seed, std::size_t frequency_count = 3,
                     double tolerance = 1e-9, std::size_t trials = 3,
                     double inner_radius = 1.5, double outer_radius = 2.5);

/// Draws every free parameter uniformly from [low, high] with a random
/// sign. Dedicated attack entries are 1; all other entries are exactly 0.
Realization sample_realization(const StructuredSystem& system, std::uint64_t seed,
                               double low = 0.5, double high = 1.5);

/// C (zI - W)^{-1} B_a + D_a. Throws Error(kSingularFrequency) when zI - W
/// is numerically singular.
Eigen::MatrixXcd transfer_matrix(const Realization& r, std::complex<double> z);

/// Numerical rank of `matrix` restricted to `columns`: singular values above
/// tolerance * scale count, where scale is the largest singular value of the
/// whole matrix.
std::size_t column_rank(const Eigen::MatrixXcd& matrix, std::span<const std::size_t> columns,
                        double tolerance);

/// Rank of the transfer matrix restricted to the given attack-set columns.
std::size_t transfer_rank(const Realization& r, std::span<const VertexId> columns,
                          std::complex<double> z, double tolerance = 1e-9);

/// Rank of the pencil [W - zI, B_S; C, D_S] for attack columns S. Equals
/// N + transfer_rank at every z that is not an eigenvalue of W.
std::size_t pencil_rank(const Realization& r, std::span<const VertexId> columns,
                        std::complex<double> z, double tolerance = 1e-9);

/// The probe's frequencies, with any that sit on (or numerically near) an
/// eigenvalue of W replaced by deterministic redraws from the same annulus.
std::vector<std::complex<double>> admissible_frequencies(const Realization& r,
                                                         const RankProbe& probe);

/// Seed of the trial-th realization drawn from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Maximum transfer rank over probe.trials realizations and all probe
/// frequencies.
std::size_t generic_normal_rank(const StructuredSystem& system, std::span<const VertexId> columns,
                                const RankProbe& probe);

/// Realization-level security index: smallest p such that some size-p attack
/// set containing `component` leaves its column in the span of the others
/// at every probe frequency. Throws Error(kCapExceeded) past the cap.
IndexValue numeric_security_index(const Realization& r, VertexId component,
                                  const RankProbe& probe, std::size_t enumeration_cap = 20);

/// numeric_security_index for every attack-set member, sharing the
/// transfer-matrix evaluations.
std::vector<IndexValue> numeric_security_indices(const Realization& r, const RankProbe& probe,
                                                 std::size_t enumeration_cap = 20);

}  // namespace secidx
