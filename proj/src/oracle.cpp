#include "secidx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "secidx/error.hpp"
#include "subsets.hpp"

namespace secidx {

namespace {

using Complex = std::complex<double>;

// zI - W with reciprocal condition number below this is treated as singular.
constexpr double kSingularRcond = 1e-8;
constexpr int kMaxRedraws = 64;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex draw_frequency(std::mt19937_64& rng, double inner, double outer) {
  const double u = uniform01(rng);
  const double radius = std::sqrt(inner * inner + u * (outer * outer - inner * inner));
  const double angle = 2.0 * std::numbers::pi * uniform01(rng);
  return std::polar(radius, angle);
}

Eigen::MatrixXcd resolvent_operand(const Realization& r, Complex z) {
  Eigen::MatrixXcd a = -r.W.cast<Complex>();
  a.diagonal().array() += z;
  return a;
}

bool is_singular(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0) return false;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  const double largest = s(0);
  return largest == 0.0 || s(s.size() - 1) < kSingularRcond * largest;
}

std::size_t rank_above(const Eigen::MatrixXcd& m, double threshold) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > threshold) ++rank;
  }
  return rank;
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

Eigen::MatrixXcd select_columns(const Eigen::MatrixXcd& m, std::span<const std::size_t> columns) {
  Eigen::MatrixXcd out(m.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(columns[k]));
  }
  return out;
}

std::vector<std::size_t> column_positions(const Realization& r, std::span<const VertexId> columns) {
  std::vector<std::size_t> out;
  out.reserve(columns.size());
  for (const auto& v : columns) out.push_back(r.column_of(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> mask_columns(std::uint64_t mask, std::size_t width) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < width; ++k) {
    if (mask >> k & 1U) out.push_back(k);
  }
  return out;
}

}  // namespace

std::size_t Realization::column_of(VertexId v) const {
  auto it = std::find(attack_set.begin(), attack_set.end(), v);
  if (it == attack_set.end()) {
    throw Error(ErrorKind::kUnknownVertex,
                std::string(to_string(v.kind)) + "#" + std::to_string(v.ordinal),
                "vertex is not an attack-set column of this realization");
  }
  return static_cast<std::size_t>(it - attack_set.begin());
}

void RankProbe::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "tolerance", "rank tolerance must lie in (0, 1)");
  }
  if (trials < 1) {
    throw Error(ErrorKind::kInvalidArgument, "trials", "at least one realization is required");
  }
  if (frequencies.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "frequencies", "at least one frequency is required");
  }
  if (!(inner_radius > 0.0 && inner_radius <= outer_radius)) {
    throw Error(ErrorKind::kInvalidArgument, "radius", "annulus radii must satisfy 0 < inner <= outer");
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finaliser over the combined words.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RankProbe make_probe(std::uint64_t seed, std::size_t frequency_count, double tolerance,
                     std::size_t trials, double inner_radius, double outer_radius) {
  RankProbe probe;
  probe.tolerance = tolerance;
  probe.trials = trials;
  probe.seed = seed;
  probe.inner_radius = inner_radius;
  probe.outer_radius = outer_radius;
  std::mt19937_64 rng(derive_seed(seed, 0xF4E9));
  for (std::size_t k = 0; k < frequency_count; ++k) {
    probe.frequencies.push_back(draw_frequency(rng, inner_radius, outer_radius));
  }
  probe.validate();
  return probe;
}

Realization sample_realization(const StructuredSystem& system, std::uint64_t seed, double low,
                               double high) {
  if (!(low > 0.0 && low < high)) {
    throw Error(ErrorKind::kInvalidArgument, "range",
                "parameter range must satisfy 0 < low < high");
  }
  const auto n = static_cast<Eigen::Index>(system.state_count());
  const auto q = static_cast<Eigen::Index>(system.actuator_count());
  const auto m = static_cast<Eigen::Index>(system.sensor_count());
  const auto p = q + static_cast<Eigen::Index>(system.unprotected_count());

  Realization r;
  r.seed = seed;
  r.W = Eigen::MatrixXd::Zero(n, n);
  r.B_a = Eigen::MatrixXd::Zero(n, p);
  r.C = Eigen::MatrixXd::Zero(m, n);
  r.D_a = Eigen::MatrixXd::Zero(m, p);

  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const double magnitude = low + (high - low) * uniform01(rng);
    return (rng() & 1U) ? -magnitude : magnitude;
  };
  for (const auto& e : system.state_edges()) r.W(e.to, e.from) = draw();
  for (const auto& e : system.actuator_edges()) r.B_a(e.to, e.from) = draw();
  for (const auto& e : system.sensor_edges()) r.C(e.to, e.from) = draw();

  for (std::uint32_t i = 0; i < q; ++i) r.attack_set.push_back(actuator(i));
  std::uint32_t attack = 0;
  for (std::uint32_t j = 0; j < system.sensor_count(); ++j) {
    if (system.sensors()[j].is_protected) continue;
    r.D_a(j, q + attack) = 1.0;
    r.attack_set.push_back(sensor_attack(attack));
    ++attack;
  }
  return r;
}

Eigen::MatrixXcd transfer_matrix(const Realization& r, Complex z) {
  const auto a = resolvent_operand(r, z);
  if (is_singular(a)) {
    throw Error(ErrorKind::kSingularFrequency, "z",
                "zI - W is numerically singular at the requested frequency");
  }
  Eigen::MatrixXcd g = r.D_a.cast<Complex>();
  if (r.W.rows() > 0 && r.B_a.cols() > 0) {
    const Eigen::MatrixXcd x = a.partialPivLu().solve(r.B_a.cast<Complex>());
    g += r.C.cast<Complex>() * x;
  }
  return g;
}

std::size_t column_rank(const Eigen::MatrixXcd& matrix, std::span<const std::size_t> columns,
                        double tolerance) {
  if (columns.empty()) return 0;
  const double scale = largest_singular_value(matrix);
  if (scale == 0.0) return 0;
  return rank_above(select_columns(matrix, columns), tolerance * scale);
}

std::size_t transfer_rank(const Realization& r, std::span<const VertexId> columns, Complex z,
                          double tolerance) {
  const auto positions = column_positions(r, columns);
  if (positions.empty()) return 0;
  return column_rank(transfer_matrix(r, z), positions, tolerance);
}

std::size_t pencil_rank(const Realization& r, std::span<const VertexId> columns, Complex z,
                        double tolerance) {
  const auto positions = column_positions(r, columns);
  const auto n = r.W.rows();
  const auto m = r.C.rows();
  const auto width = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXcd pencil = Eigen::MatrixXcd::Zero(n + m, n + width);
  pencil.topLeftCorner(n, n) = r.W.cast<Complex>();
  pencil.topLeftCorner(n, n).diagonal().array() -= z;
  pencil.bottomLeftCorner(m, n) = r.C.cast<Complex>();
  for (Eigen::Index k = 0; k < width; ++k) {
    const auto col = static_cast<Eigen::Index>(positions[static_cast<std::size_t>(k)]);
    pencil.block(0, n + k, n, 1) = r.B_a.col(col).cast<Complex>();
    pencil.block(n, n + k, m, 1) = r.D_a.col(col).cast<Complex>();
  }
  return rank_above(pencil, tolerance * largest_singular_value(pencil));
}

std::vector<Complex> admissible_frequencies(const Realization& r, const RankProbe& probe) {
  probe.validate();
  std::vector<Complex> out;
  out.reserve(probe.frequencies.size());
  for (std::size_t k = 0; k < probe.frequencies.size(); ++k) {
    Complex z = probe.frequencies[k];
    std::mt19937_64 rng(derive_seed(r.seed ^ probe.seed, k));
    int redraws = 0;
    while (is_singular(resolvent_operand(r, z))) {
      if (++redraws > kMaxRedraws) {
        throw Error(ErrorKind::kSingularFrequency, "z",
                    "could not find a frequency away from the spectrum of W");
      }
      z = draw_frequency(rng, probe.inner_radius, probe.outer_radius);
    }
    out.push_back(z);
  }
  return out;
}

std::size_t generic_normal_rank(const StructuredSystem& system, std::span<const VertexId> columns,
                                const RankProbe& probe) {
  probe.validate();
  std::size_t best = 0;
  for (std::size_t t = 0; t < probe.trials; ++t) {
    const auto r = sample_realization(system, derive_seed(probe.seed, t));
    const auto positions = column_positions(r, columns);
    if (positions.empty()) return 0;
    for (const auto z : admissible_frequencies(r, probe)) {
      best = std::max(best, column_rank(transfer_matrix(r, z), positions, probe.tolerance));
    }
  }
  return best;
}

namespace {

// Column ranks of every attack subset at each admissible frequency, computed
// lazily and memoised by subset mask.
class SubsetRanks {
 public:
  SubsetRanks(const Realization& r, const RankProbe& probe) : width_(r.attack_set.size()) {
    for (const auto z : admissible_frequencies(r, probe)) {
      auto g = transfer_matrix(r, z);
      thresholds_.push_back(probe.tolerance * largest_singular_value(g));
      matrices_.push_back(std::move(g));
    }
  }

  const std::vector<std::size_t>& ranks(std::uint64_t mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    std::vector<std::size_t> out(matrices_.size(), 0);
    if (mask != 0) {
      const auto columns = mask_columns(mask, width_);
      for (std::size_t k = 0; k < matrices_.size(); ++k) {
        if (thresholds_[k] > 0.0) {
          out[k] = rank_above(select_columns(matrices_[k], columns), thresholds_[k]);
        }
      }
    }
    return cache_.emplace(mask, std::move(out)).first->second;
  }

  std::size_t width() const { return width_; }

 private:
  std::size_t width_;
  std::vector<Eigen::MatrixXcd> matrices_;
  std::vector<double> thresholds_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cache_;
};

IndexValue smallest_undetectable_set(SubsetRanks& ranks, std::size_t pos) {
  const auto n = ranks.width();
  const auto bit = std::uint64_t{1} << pos;
  for (std::size_t p = 1; p <= n; ++p) {
    for (const auto mask : detail::subsets_containing(n, pos, p)) {
      if (ranks.ranks(mask) == ranks.ranks(mask & ~bit)) return IndexValue::finite(p);
    }
  }
  return IndexValue::infinite();
}

void check_cap(std::size_t attack_count, std::size_t cap) {
  if (attack_count > cap || attack_count > detail::kMaxAttackSet) {
    throw Error(ErrorKind::kCapExceeded, std::to_string(attack_count),
                "attack set has " + std::to_string(attack_count) +
                    " components, above the enumeration cap");
  }
}

}  // namespace

IndexValue numeric_security_index(const Realization& r, VertexId component,
                                  const RankProbe& probe, std::size_t enumeration_cap) {
  const auto pos = r.column_of(component);
  check_cap(r.attack_set.size(), enumeration_cap);
  SubsetRanks ranks(r, probe);
  return smallest_undetectable_set(ranks, pos);
}

std::vector<IndexValue> numeric_security_indices(const Realization& r, const RankProbe& probe,
                                                 std::size_t enumeration_cap) {
  check_cap(r.attack_set.size(), enumeration_cap);
  SubsetRanks ranks(r, probe);
  std::vector<IndexValue> out;
  out.reserve(r.attack_set.size());
  for (std::size_t pos = 0; pos < r.attack_set.size(); ++pos) {
    out.push_back(smallest_undetectable_set(ranks, pos));
  }
  return out;
}

}  // namespace secidx
