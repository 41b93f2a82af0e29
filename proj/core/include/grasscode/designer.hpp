#pragma once

// Constellation design by geodesic mapping on Gr(2M, M).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "grasscode/diametral.hpp"
#include "grasscode/grassmann.hpp"

namespace grasscode {

enum class Criterion { DiversityProduct, UnionBound, None };
enum class DesignCase { I, II, III, IV, V, Random };

std::string_view to_string(Criterion c) noexcept;
std::string_view to_string(DesignCase c) noexcept;
Criterion parse_criterion(std::string_view s);
DesignCase parse_design_case(std::string_view s);

struct DesignConfig {
  int M = 2;
  int L = 4;
  Criterion criterion = Criterion::DiversityProduct;
  int n_for_ub = 2;
  int x_grid_size = 5000;
};

bool is_power_of_two(long long v) noexcept;
int bits_per_symbol(int L);

/// Throws InvalidSize for L outside {2, 4, …} ∩ [2, 4M²], InvalidArgument
/// for the remaining fields.
void validate_config(const DesignConfig& cfg);

/// Which branch of the design ladder handles (L, D).
DesignCase select_case(int L, int D);

inline constexpr double kSparseThreshold = 1e-12;

struct SparseRow {
  int col = -1;  // -1 marks an all-zero row
  Complex value{};

  bool zero() const noexcept { return col < 0; }
};
using SparsePoint = std::vector<SparseRow>;

SparsePoint sparse_encode(const StiefelPoint& point, double threshold = kSparseThreshold);
CMatrix sparse_decode(const SparsePoint& rows, int M);

/// Where a designed point came from. Points of one pair share `pair`; the
/// one with `complement` set receives the complemented label.
struct PointOrigin {
  SignedIndex vector;
  double t = 0.0;
  int pair = 0;
  bool complement = false;
};

struct Constellation {
  int T = 0;
  int M = 0;
  std::vector<StiefelPoint> points;
  std::vector<std::uint32_t> labels;
  std::vector<SparsePoint> sparse;  // empty unless every point is row-sparse

  DesignCase design_case = DesignCase::Random;
  Criterion criterion = Criterion::None;
  double x_star = 0.0;
  int D = 0;
  std::vector<PointOrigin> origins;  // empty when the pairing is unknown
  std::vector<DiametralSet> sets;

  int L() const noexcept { return static_cast<int>(points.size()); }
  int bits() const { return bits_per_symbol(L()); }
  bool has_sparse() const noexcept { return !sparse.empty() && sparse.size() == points.size(); }
};

/// Pair p gets label p on its first point and p XOR (L − 1) on its
/// complement.
std::vector<std::uint32_t> label_bits(std::span<const PointOrigin> origins, int L);

struct SweepSample {
  double x = 0.0;
  double d_g = 0.0;
  double d_c = 0.0;
  double dp = 0.0;
  double ub = 0.0;
};

struct MappingSweep {
  double x_star = 0.0;
  std::size_t best_index = 0;
  std::vector<SweepSample> trace;
};

/// Uniform scan of x over [0, √M·π/4) with `grid_size` points. Vectors in
/// `plus_family` are mapped at √M·π/4 + x, those in `minus_family` at
/// √M·π/4 − x. Picks the first x maximizing DP (or minimizing UB with
/// n_for_ub receive antennas).
MappingSweep optimize_mapping_x(int M, std::span<const CMatrix> plus_family,
                                std::span<const CMatrix> minus_family, Criterion criterion,
                                int n_for_ub, int grid_size);

/// Points γ_{±Δ_k}(√M·π/4) for the given basis indices, labeled pairwise.
Constellation midpoint_constellation(int M, std::span<const int> pairs,
                                     DesignCase tag = DesignCase::V);

/// Runs the design ladder. For the two mapped cases the x sweep is copied
/// into `sweep` when given; otherwise `sweep` is left empty.
Constellation design(const DesignConfig& cfg, MappingSweep* sweep = nullptr);

}  // namespace grasscode
