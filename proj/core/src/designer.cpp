#include "grasscode/designer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace grasscode {

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::DiversityProduct: return "dp";
    case Criterion::UnionBound: return "ub";
    case Criterion::None: return "none";
  }
  return "none";
}

std::string_view to_string(DesignCase c) noexcept {
  switch (c) {
    case DesignCase::I: return "i";
    case DesignCase::II: return "ii";
    case DesignCase::III: return "iii";
    case DesignCase::IV: return "iv";
    case DesignCase::V: return "v";
    case DesignCase::Random: return "random";
  }
  return "random";
}

Criterion parse_criterion(std::string_view s) {
  if (s == "dp") return Criterion::DiversityProduct;
  if (s == "ub") return Criterion::UnionBound;
  if (s == "none") return Criterion::None;
  throw Error(Errc::InvalidArgument, "unknown criterion '" + std::string(s) + "'");
}

DesignCase parse_design_case(std::string_view s) {
  for (DesignCase c : {DesignCase::I, DesignCase::II, DesignCase::III, DesignCase::IV,
                       DesignCase::V, DesignCase::Random}) {
    if (to_string(c) == s) return c;
  }
  throw Error(Errc::InvalidArgument, "unknown design case '" + std::string(s) + "'");
}

bool is_power_of_two(long long v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

int bits_per_symbol(int L) {
  if (!is_power_of_two(L)) throw Error(Errc::InvalidSize, "L must be a power of two");
  int bits = 0;
  while ((1 << bits) < L) ++bits;
  return bits;
}

void validate_config(const DesignConfig& cfg) {
  if (cfg.M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  const long long max_l = 4LL * cfg.M * cfg.M;
  if (!is_power_of_two(cfg.L) || cfg.L < 2) {
    throw Error(Errc::InvalidSize, "L=" + std::to_string(cfg.L) + " is not a power of two >= 2");
  }
  if (cfg.L > max_l) {
    throw Error(Errc::InvalidSize,
                "L=" + std::to_string(cfg.L) + " exceeds 4M^2=" + std::to_string(max_l));
  }
  if (cfg.criterion == Criterion::None) throw Error(Errc::InvalidArgument, "criterion must be dp or ub");
  if (cfg.n_for_ub < 1) throw Error(Errc::InvalidArgument, "N for UB must be >= 1");
  if (cfg.x_grid_size < 1) throw Error(Errc::InvalidArgument, "grid size must be >= 1");
}

DesignCase select_case(int L, int D) {
  if (L == 2) return DesignCase::I;
  if (L == 4 && D >= 4) return DesignCase::II;
  if (L > 2 && L <= D) return DesignCase::III;
  if (L > D && L <= 2 * D) return DesignCase::IV;
  return DesignCase::V;
}

SparsePoint sparse_encode(const StiefelPoint& point, double threshold) {
  const CMatrix& x = point.matrix();
  SparsePoint rows(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    int count = 0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (std::abs(x(r, c)) > threshold) {
        ++count;
        rows[static_cast<std::size_t>(r)] = {static_cast<int>(c), x(r, c)};
      }
    }
    if (count > 1) {
      std::ostringstream os;
      os << "row " << r << " has " << count << " nonzeros";
      throw Error(Errc::NotRowSparse, os.str());
    }
  }
  return rows;
}

CMatrix sparse_decode(const SparsePoint& rows, int M) {
  CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(rows.size()), M);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].zero()) continue;
    if (rows[r].col >= M) throw Error(Errc::DimensionMismatch, "sparse column out of range");
    x(static_cast<Eigen::Index>(r), rows[r].col) = rows[r].value;
  }
  return x;
}

std::vector<std::uint32_t> label_bits(std::span<const PointOrigin> origins, int L) {
  if (origins.size() != static_cast<std::size_t>(L) || L < 2) {
    throw Error(Errc::StructureMissing, "pairing information does not cover every point");
  }
  const std::uint32_t mask = static_cast<std::uint32_t>(L - 1);
  std::vector<int> seen(static_cast<std::size_t>(L / 2), 0);
  std::vector<std::uint32_t> labels;
  labels.reserve(origins.size());
  for (const auto& o : origins) {
    if (o.pair < 0 || o.pair >= L / 2) throw Error(Errc::StructureMissing, "pair index out of range");
    seen[static_cast<std::size_t>(o.pair)] |= o.complement ? 2 : 1;
    const auto p = static_cast<std::uint32_t>(o.pair);
    labels.push_back(o.complement ? (p ^ mask) : p);
  }
  for (int s : seen) {
    if (s != 3) throw Error(Errc::StructureMissing, "a pair is missing one of its two points");
  }
  return labels;
}

namespace {

double half_diameter(int M) { return std::sqrt(static_cast<double>(M)) * std::numbers::pi / 4.0; }

StiefelPoint map_point(int M, const CMatrix& tilde, double t) {
  return geodesic_structured(CMatrix::Identity(M, M), tilde, t);
}

std::vector<StiefelPoint> mapped_points(int M, std::span<const CMatrix> plus_family,
                                        std::span<const CMatrix> minus_family, double x) {
  const double h = half_diameter(M);
  std::vector<StiefelPoint> pts;
  pts.reserve(plus_family.size() + minus_family.size());
  for (const auto& d : plus_family) pts.push_back(map_point(M, d, h + x));
  for (const auto& d : minus_family) pts.push_back(map_point(M, d, h - x));
  return pts;
}

// Appends ±Δ_k at time t for each pair index, in pair order.
void append_pairs(Constellation& c, const std::vector<BasisVector>& basis, std::span<const int> pairs,
                  double t, int& next_pair) {
  for (int k : pairs) {
    for (bool negative : {false, true}) {
      const SignedIndex v{k, negative};
      c.points.push_back(map_point(c.M, signed_tilde(basis, v), t));
      c.origins.push_back({v, t, next_pair, negative});
    }
    ++next_pair;
  }
}

void finalize(Constellation& c) {
  c.labels = label_bits(c.origins, c.L());
  c.sparse.clear();
  c.sparse.reserve(c.points.size());
  for (const auto& p : c.points) c.sparse.push_back(sparse_encode(p));
}

Constellation empty_constellation(int M, DesignCase tag) {
  Constellation c;
  c.M = M;
  c.T = 2 * M;
  c.design_case = tag;
  c.criterion = Criterion::None;
  return c;
}

// Cases (ii) and (iv): first family at h + x, second at h − x.
Constellation two_family_design(const DesignConfig& cfg, const std::vector<BasisVector>& basis,
                                const std::vector<int>& first, const std::vector<int>& second,
                                DesignCase tag, MappingSweep* sweep_out) {
  std::vector<CMatrix> plus_family;
  std::vector<CMatrix> minus_family;
  for (int k : first) {
    plus_family.push_back(signed_tilde(basis, {k, false}));
    plus_family.push_back(signed_tilde(basis, {k, true}));
  }
  for (int k : second) {
    minus_family.push_back(signed_tilde(basis, {k, false}));
    minus_family.push_back(signed_tilde(basis, {k, true}));
  }
  MappingSweep sweep = optimize_mapping_x(cfg.M, plus_family, minus_family, cfg.criterion,
                                          cfg.n_for_ub, cfg.x_grid_size);

  Constellation c = empty_constellation(cfg.M, tag);
  c.criterion = cfg.criterion;
  c.x_star = sweep.x_star;
  const double h = half_diameter(cfg.M);
  int next_pair = 0;
  append_pairs(c, basis, first, h + sweep.x_star, next_pair);
  append_pairs(c, basis, second, h - sweep.x_star, next_pair);
  if (sweep_out) *sweep_out = std::move(sweep);
  return c;
}

}  // namespace

MappingSweep optimize_mapping_x(int M, std::span<const CMatrix> plus_family,
                                std::span<const CMatrix> minus_family, Criterion criterion,
                                int n_for_ub, int grid_size) {
  if (grid_size < 1) throw Error(Errc::InvalidArgument, "grid size must be >= 1");
  if (criterion == Criterion::None) throw Error(Errc::InvalidArgument, "criterion must be dp or ub");
  const double h = half_diameter(M);

  MappingSweep out;
  out.trace.reserve(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double x = h * static_cast<double>(i) / static_cast<double>(grid_size);
    const auto pts = mapped_points(M, plus_family, minus_family, x);
    const ConstellationMetrics m = constellation_metrics(pts, n_for_ub);
    out.trace.push_back({x, m.d_g_min, m.d_c_min, m.dp_min, m.ub});

    const SweepSample& best = out.trace[out.best_index];
    const SweepSample& cur = out.trace.back();
    const bool better = criterion == Criterion::DiversityProduct ? cur.dp > best.dp : cur.ub < best.ub;
    if (better) out.best_index = out.trace.size() - 1;
  }
  out.x_star = out.trace[out.best_index].x;
  return out;
}

Constellation midpoint_constellation(int M, std::span<const int> pairs, DesignCase tag) {
  if (pairs.empty()) throw Error(Errc::InvalidArgument, "no vector pairs given");
  const auto basis = weyl_heisenberg_basis(M);
  Constellation c = empty_constellation(M, tag);
  int next_pair = 0;
  append_pairs(c, basis, pairs, half_diameter(M), next_pair);
  finalize(c);
  return c;
}

Constellation design(const DesignConfig& cfg, MappingSweep* sweep) {
  if (sweep) *sweep = MappingSweep{};
  validate_config(cfg);
  const int M = cfg.M;
  const int L = cfg.L;
  const auto basis = weyl_heisenberg_basis(M);
  const int D = L == 2 ? 0 : max_diametral_set(M).D;
  const DesignCase which = select_case(L, D);

  Constellation c;
  switch (which) {
    case DesignCase::I: {
      c = empty_constellation(M, which);
      const double end = 2.0 * half_diameter(M);
      const CMatrix& tilde = basis.front().tilde;
      c.points.push_back(map_point(M, tilde, 0.0));
      c.points.push_back(map_point(M, tilde, end));
      c.origins.push_back({{0, false}, 0.0, 0, false});
      c.origins.push_back({{0, false}, end, 0, true});
      break;
    }
    case DesignCase::II: {
      const auto sets = find_diametral_sets(M, 4, 1, false);
      const auto pairs = sets.front().pairs();
      c = two_family_design(cfg, basis, {pairs[0]}, {pairs[1]}, which, sweep);
      c.sets = sets;
      break;
    }
    case DesignCase::III: {
      const auto sets = find_diametral_sets(M, L, 1, false);
      const auto pairs = sets.front().pairs();
      c = empty_constellation(M, which);
      int next_pair = 0;
      append_pairs(c, basis, pairs, half_diameter(M), next_pair);
      c.sets = sets;
      break;
    }
    case DesignCase::IV: {
      const auto sets = find_diametral_sets(M, L / 2, 2, true);
      c = two_family_design(cfg, basis, sets[0].pairs(), sets[1].pairs(), which, sweep);
      c.sets = sets;
      break;
    }
    case DesignCase::V:
    case DesignCase::Random: {
      std::vector<int> pairs(static_cast<std::size_t>(L / 2));
      for (int k = 0; k < L / 2; ++k) pairs[static_cast<std::size_t>(k)] = k;
      c = empty_constellation(M, DesignCase::V);
      int next_pair = 0;
      append_pairs(c, basis, pairs, half_diameter(M), next_pair);
      break;
    }
  }
  if (c.design_case == DesignCase::I || c.design_case == DesignCase::III ||
      c.design_case == DesignCase::V) {
    c.criterion = Criterion::None;
  }
  c.D = D;
  finalize(c);
  return c;
}

}  // namespace grasscode
