#pragma once

// Complex Stiefel / Grassmann primitives: representatives, tangent vectors,
// principal angles, the packing metrics and geodesics.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "grasscode/error.hpp"

namespace grasscode {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kTolOrth = 1e-10;
inline constexpr double kTolAngleZero = 1e-6;

/// ‖A^H A − I‖_F.
double orthonormality_residual(const CMatrix& data);

/// T×M complex matrix with orthonormal columns. Only constructible through
/// validation, so every instance satisfies U^H U = I to the tolerance used.
class StiefelPoint {
 public:
  static StiefelPoint validate(CMatrix data, double tol = kTolOrth);

  const CMatrix& matrix() const noexcept { return data_; }
  Eigen::Index T() const noexcept { return data_.rows(); }
  Eigen::Index M() const noexcept { return data_.cols(); }

 private:
  explicit StiefelPoint(CMatrix data) : data_(std::move(data)) {}
  CMatrix data_;
};

inline StiefelPoint validate_stiefel(CMatrix data, double tol = kTolOrth) {
  return StiefelPoint::validate(std::move(data), tol);
}

/// [I_M; 0_M] in C^{2M×M}.
StiefelPoint identity_block(int M);

/// Element of the tangent space at `base`: base^H Δ = 0.
class TangentVector {
 public:
  static TangentVector make(StiefelPoint base, CMatrix data, double tol = kTolOrth);

  const StiefelPoint& base() const noexcept { return base_; }
  const CMatrix& matrix() const noexcept { return data_; }

  double g_norm() const;
  bool is_g_unit(double tol = 1e-10) const;

 private:
  TangentVector(StiefelPoint base, CMatrix data)
      : base_(std::move(base)), data_(std::move(data)) {}
  StiefelPoint base_;
  CMatrix data_;
};

struct PrincipalAngles {
  std::vector<double> angles;  // ascending, each in [0, π/2]

  double max() const { return angles.empty() ? 0.0 : angles.back(); }
  double min() const { return angles.empty() ? 0.0 : angles.front(); }
  std::size_t count_below(double threshold) const;
};

CMatrix projector(const StiefelPoint& u);

PrincipalAngles principal_angles(const StiefelPoint& a, const StiefelPoint& b);
double geodesic_distance(const StiefelPoint& a, const StiefelPoint& b);
double chordal_distance(const StiefelPoint& a, const StiefelPoint& b);
/// (1/√2)‖P_a − P_b‖_F; same value as chordal_distance by a different route.
double chordal_distance_projector(const StiefelPoint& a, const StiefelPoint& b);
/// det(I − A^H B B^H A), clamped to [0, 1].
double diversity_product(const StiefelPoint& a, const StiefelPoint& b);

/// All pairwise quantities for one unordered pair, from a single SVD.
struct PairMetrics {
  double geodesic = 0.0;
  double chordal = 0.0;
  double diversity_product = 0.0;
};
PairMetrics pair_metrics(const StiefelPoint& a, const StiefelPoint& b);

struct ConstellationMetrics {
  double d_g_min = std::numeric_limits<double>::infinity();
  double d_c_min = std::numeric_limits<double>::infinity();
  double dp_min = std::numeric_limits<double>::infinity();
  double ub = 0.0;  // +infinity when some pair has DP == 0
  int n_for_ub = 1;
  bool degenerate = false;
  std::pair<std::size_t, std::size_t> argmin_d_g{0, 0};
  std::pair<std::size_t, std::size_t> argmin_d_c{0, 0};
  std::pair<std::size_t, std::size_t> argmin_dp{0, 0};
};

/// Minima over all unordered pairs plus the union bound
/// Σ_{i<j} DP(X_i, X_j)^{-N}.
ConstellationMetrics constellation_metrics(std::span<const StiefelPoint> points, int n_for_ub);

/// Geodesic from base(Δ) with initial velocity Δ, via the compact SVD
/// Δ = Q Σ V^H: U V cos(tΣ) V^H + Q sin(tΣ) V^H.
StiefelPoint geodesic_general(const TangentVector& delta, double t);

/// Closed form for U = [Ũ; 0], Δ = [0; Δ̃] with √M Δ̃ unitary:
/// [cos(t/√M) Ũ; √M sin(t/√M) Δ̃].
StiefelPoint geodesic_structured(const CMatrix& u_tilde, const CMatrix& delta_tilde, double t);

/// True when √M·Δ̃ is unitary to `tol` (Frobenius residual).
bool is_scaled_unitary(const CMatrix& delta_tilde, double tol = kTolOrth);

/// π / (2 σ_1), σ_1 the largest singular value of Δ.
double cut_instant(const TangentVector& delta);

/// Re tr(Δ1^H Δ2).
double g_inner(const TangentVector& a, const TangentVector& b);

}  // namespace grasscode
