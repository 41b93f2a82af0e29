#include "grasscode/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace grasscode {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotOrthonormal: return "NotOrthonormal";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TangencyViolated: return "TangencyViolated";
    case Errc::NotScaledUnitary: return "NotScaledUnitary";
    case Errc::ZeroTangent: return "ZeroTangent";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::InfeasibleRequest: return "InfeasibleRequest";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::StructureMissing: return "StructureMissing";
    case Errc::NotRowSparse: return "NotRowSparse";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

void require_same_shape(const StiefelPoint& a, const StiefelPoint& b) {
  if (a.T() != b.T() || a.M() != b.M()) {
    std::ostringstream os;
    os << a.T() << "x" << a.M() << " vs " << b.T() << "x" << b.M();
    throw Error(Errc::DimensionMismatch, os.str());
  }
}

// Singular values of A^H B, clamped to [0, 1], in descending order.
Eigen::VectorXd cosines(const StiefelPoint& a, const StiefelPoint& b) {
  require_same_shape(a, b);
  const CMatrix cross = a.matrix().adjoint() * b.matrix();
  Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(cross).singularValues();
  for (auto& v : s) v = std::clamp(v, 0.0, 1.0);
  return s;
}

}  // namespace

double orthonormality_residual(const CMatrix& data) {
  const auto m = data.cols();
  return (data.adjoint() * data - CMatrix::Identity(m, m)).norm();
}

StiefelPoint StiefelPoint::validate(CMatrix data, double tol) {
  if (data.cols() < 1 || data.rows() < data.cols()) {
    std::ostringstream os;
    os << "need 1 <= M <= T, got " << data.rows() << "x" << data.cols();
    throw Error(Errc::DimensionMismatch, os.str());
  }
  const double residual = orthonormality_residual(data);
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "residual " << residual << " > " << tol;
    throw Error(Errc::NotOrthonormal, os.str());
  }
  return StiefelPoint(std::move(data));
}

StiefelPoint identity_block(int M) {
  CMatrix u = CMatrix::Zero(2 * M, M);
  u.topRows(M).setIdentity();
  return StiefelPoint::validate(std::move(u));
}

TangentVector TangentVector::make(StiefelPoint base, CMatrix data, double tol) {
  if (data.rows() != base.T() || data.cols() != base.M()) {
    throw Error(Errc::DimensionMismatch, "tangent data shape differs from base point");
  }
  const double residual = (base.matrix().adjoint() * data).norm();
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "|U^H D|_F = " << residual;
    throw Error(Errc::TangencyViolated, os.str());
  }
  return TangentVector(std::move(base), std::move(data));
}

double TangentVector::g_norm() const { return std::sqrt(data_.squaredNorm()); }

bool TangentVector::is_g_unit(double tol) const { return std::abs(g_norm() - 1.0) <= tol; }

std::size_t PrincipalAngles::count_below(double threshold) const {
  return static_cast<std::size_t>(
      std::count_if(angles.begin(), angles.end(), [&](double a) { return a < threshold; }));
}

CMatrix projector(const StiefelPoint& u) { return u.matrix() * u.matrix().adjoint(); }

PrincipalAngles principal_angles(const StiefelPoint& a, const StiefelPoint& b) {
  const Eigen::VectorXd s = cosines(a, b);
  PrincipalAngles out;
  out.angles.reserve(static_cast<std::size_t>(s.size()));
  for (double v : s) out.angles.push_back(std::acos(v));
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

double geodesic_distance(const StiefelPoint& a, const StiefelPoint& b) {
  double sum = 0.0;
  for (double th : principal_angles(a, b).angles) sum += th * th;
  return std::sqrt(sum);
}

double chordal_distance(const StiefelPoint& a, const StiefelPoint& b) {
  double sum = 0.0;
  for (double th : principal_angles(a, b).angles) sum += std::sin(th) * std::sin(th);
  return std::sqrt(sum);
}

double chordal_distance_projector(const StiefelPoint& a, const StiefelPoint& b) {
  require_same_shape(a, b);
  return (projector(a) - projector(b)).norm() / std::numbers::sqrt2;
}

double diversity_product(const StiefelPoint& a, const StiefelPoint& b) {
  require_same_shape(a, b);
  const CMatrix cross = a.matrix().adjoint() * b.matrix();
  const auto m = cross.rows();
  const CMatrix gram = CMatrix::Identity(m, m) - cross * cross.adjoint();
  return std::clamp(gram.determinant().real(), 0.0, 1.0);
}

PairMetrics pair_metrics(const StiefelPoint& a, const StiefelPoint& b) {
  const Eigen::VectorXd s = cosines(a, b);
  PairMetrics out;
  double sq_angles = 0.0;
  double sq_sines = 0.0;
  double product = 1.0;
  for (double c : s) {
    const double th = std::acos(c);
    const double sin2 = (1.0 - c) * (1.0 + c);
    sq_angles += th * th;
    sq_sines += sin2;
    product *= sin2;
  }
  out.geodesic = std::sqrt(sq_angles);
  out.chordal = std::sqrt(sq_sines);
  out.diversity_product = std::clamp(product, 0.0, 1.0);
  return out;
}

ConstellationMetrics constellation_metrics(std::span<const StiefelPoint> points, int n_for_ub) {
  if (points.size() < 2) {
    throw Error(Errc::InvalidArgument, "constellation metrics need at least two points");
  }
  if (n_for_ub < 1) throw Error(Errc::InvalidArgument, "N must be >= 1");

  ConstellationMetrics out;
  out.n_for_ub = n_for_ub;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const PairMetrics pm = pair_metrics(points[i], points[j]);
      if (pm.geodesic < out.d_g_min) {
        out.d_g_min = pm.geodesic;
        out.argmin_d_g = {i, j};
      }
      if (pm.chordal < out.d_c_min) {
        out.d_c_min = pm.chordal;
        out.argmin_d_c = {i, j};
      }
      if (pm.diversity_product < out.dp_min) {
        out.dp_min = pm.diversity_product;
        out.argmin_dp = {i, j};
      }
      if (pm.diversity_product > 0.0) {
        out.ub += std::pow(pm.diversity_product, -n_for_ub);
      } else {
        out.degenerate = true;
      }
    }
  }
  if (out.degenerate) out.ub = std::numeric_limits<double>::infinity();
  return out;
}

StiefelPoint geodesic_general(const TangentVector& delta, double t) {
  const Eigen::JacobiSVD<CMatrix> svd(delta.matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const CMatrix& q = svd.matrixU();
  const CMatrix& v = svd.matrixV();
  const Eigen::VectorXd& sigma = svd.singularValues();

  const Eigen::VectorXcd c = (t * sigma).array().cos().cast<Complex>();
  const Eigen::VectorXcd s = (t * sigma).array().sin().cast<Complex>();
  CMatrix out = delta.base().matrix() * v * c.asDiagonal() * v.adjoint() +
                q * s.asDiagonal() * v.adjoint();
  return StiefelPoint::validate(std::move(out));
}

bool is_scaled_unitary(const CMatrix& delta_tilde, double tol) {
  if (delta_tilde.rows() != delta_tilde.cols() || delta_tilde.rows() == 0) return false;
  const auto m = delta_tilde.rows();
  const CMatrix w = std::sqrt(static_cast<double>(m)) * delta_tilde;
  return (w.adjoint() * w - CMatrix::Identity(m, m)).norm() <= tol;
}

StiefelPoint geodesic_structured(const CMatrix& u_tilde, const CMatrix& delta_tilde, double t) {
  const auto m = u_tilde.rows();
  if (u_tilde.cols() != m || delta_tilde.rows() != m || delta_tilde.cols() != m) {
    throw Error(Errc::DimensionMismatch, "structured geodesic needs square M×M blocks");
  }
  if (!(orthonormality_residual(u_tilde) <= kTolOrth)) {
    throw Error(Errc::NotOrthonormal, "U~ is not unitary");
  }
  if (!is_scaled_unitary(delta_tilde)) {
    throw Error(Errc::NotScaledUnitary, "sqrt(M)*Delta~ is not unitary");
  }
  const double root_m = std::sqrt(static_cast<double>(m));
  const double alpha = t / root_m;
  CMatrix out(2 * m, m);
  out.topRows(m) = std::cos(alpha) * u_tilde;
  out.bottomRows(m) = (root_m * std::sin(alpha)) * delta_tilde;
  return StiefelPoint::validate(std::move(out));
}

double cut_instant(const TangentVector& delta) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(delta.matrix()).singularValues();
  const double sigma1 = s.size() > 0 ? s.maxCoeff() : 0.0;
  if (!(sigma1 > 0.0)) throw Error(Errc::ZeroTangent, "cut instant of the zero vector");
  return std::numbers::pi / (2.0 * sigma1);
}

double g_inner(const TangentVector& a, const TangentVector& b) {
  if (a.base().T() != b.base().T() || a.base().M() != b.base().M() ||
      (a.base().matrix() - b.base().matrix()).norm() > kTolOrth) {
    throw Error(Errc::BaseMismatch, "tangent vectors live at different base points");
  }
  return (a.matrix().adjoint() * b.matrix()).trace().real();
}

}  // namespace grasscode
