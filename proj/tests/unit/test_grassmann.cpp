#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "grasscode/grassmann.hpp"
#include "grasscode/tangent_basis.hpp"
#include "support/oracles.hpp"

using namespace grasscode;
using std::numbers::pi;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Io;
}

StiefelPoint lower_block(int M) {
  CMatrix u = CMatrix::Zero(2 * M, M);
  u.bottomRows(M).setIdentity();
  return StiefelPoint::validate(u);
}

}  // namespace

TEST_CASE("validate_stiefel accepts orthonormal columns and rejects the rest") {
  std::mt19937_64 rng(11);
  CHECK_NOTHROW(identity_block(3));
  CHECK(code_of([] { StiefelPoint::validate(CMatrix::Zero(4, 2)); }) == Errc::NotOrthonormal);
  for (int i = 0; i < 20; ++i) {
    const CMatrix q = oracle::random_stiefel(6, 3, rng);
    CHECK((q.adjoint() * q - CMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK_NOTHROW(StiefelPoint::validate(q));
  }
  CHECK(code_of([] { StiefelPoint::validate(CMatrix::Identity(2, 3)); }) == Errc::DimensionMismatch);
  CMatrix near = identity_block(2).matrix();
  near(0, 0) += 1e-6;
  CHECK(code_of([&] { StiefelPoint::validate(near); }) == Errc::NotOrthonormal);
}

TEST_CASE("projector is basis independent and idempotent") {
  std::mt19937_64 rng(12);
  const CMatrix p0 = projector(identity_block(2));
  CMatrix expect = CMatrix::Zero(4, 4);
  expect.topLeftCorner(2, 2).setIdentity();
  CHECK((p0 - expect).norm() < 1e-15);
  for (int i = 0; i < 20; ++i) {
    const auto u = StiefelPoint::validate(oracle::random_stiefel(6, 3, rng));
    const auto v = StiefelPoint::validate(u.matrix() * oracle::random_unitary(3, rng));
    const CMatrix p = projector(u);
    CHECK((p - projector(v)).norm() < 1e-10);
    CHECK((p * p - p).norm() < 1e-10);
  }
}

TEST_CASE("principal angles and metrics agree with the eigenvalue oracle") {
  std::mt19937_64 rng(13);
  for (int M : {1, 2, 3, 4}) {
    for (int i = 0; i < 25; ++i) {
      const auto a = StiefelPoint::validate(oracle::random_stiefel(2 * M, M, rng));
      const auto b = StiefelPoint::validate(oracle::random_stiefel(2 * M, M, rng));
      const auto pa = principal_angles(a, b);
      const auto ref = oracle::principal_angles(a.matrix(), b.matrix());
      REQUIRE(pa.angles.size() == ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK(pa.angles[k] == doctest::Approx(ref[k]).epsilon(1e-7));
      CHECK(geodesic_distance(a, b) == doctest::Approx(oracle::geodesic(a.matrix(), b.matrix())).epsilon(1e-7));
      CHECK(chordal_distance(a, b) == doctest::Approx(oracle::chordal(a.matrix(), b.matrix())).epsilon(1e-9));
      CHECK(chordal_distance(a, b) == doctest::Approx(chordal_distance_projector(a, b)).epsilon(1e-9));
      CHECK(diversity_product(a, b) == doctest::Approx(oracle::diversity_product(a.matrix(), b.matrix())).epsilon(1e-9));
      const auto pm = pair_metrics(a, b);
      CHECK(pm.geodesic == doctest::Approx(geodesic_distance(a, b)).epsilon(1e-9));
      CHECK(pm.chordal == doctest::Approx(chordal_distance(a, b)).epsilon(1e-9));
      CHECK(pm.diversity_product == doctest::Approx(diversity_product(a, b)).epsilon(1e-9));
    }
  }
}

TEST_CASE("trivial pairs: identical and mutually orthogonal subspaces") {
  for (int M : {1, 2, 4}) {
    const auto u = identity_block(M);
    const auto v = lower_block(M);
    CHECK(geodesic_distance(u, u) == doctest::Approx(0.0));
    CHECK(chordal_distance(u, u) == doctest::Approx(0.0));
    CHECK(diversity_product(u, u) == doctest::Approx(0.0));
    CHECK(principal_angles(u, u).count_below(kTolAngleZero) == static_cast<std::size_t>(M));
    for (double t : principal_angles(u, v).angles) CHECK(t == doctest::Approx(pi / 2));
    CHECK(geodesic_distance(u, v) == doctest::Approx(std::sqrt(M) * pi / 2));
    CHECK(chordal_distance(u, v) == doctest::Approx(std::sqrt(M)));
    CHECK(diversity_product(u, v) == doctest::Approx(1.0));
  }
}

TEST_CASE("constellation metrics on two orthogonal points and on duplicates") {
  const std::vector<StiefelPoint> two{identity_block(2), lower_block(2)};
  const auto m = constellation_metrics(two, 2);
  CHECK(m.d_g_min == doctest::Approx(std::sqrt(2.0) * pi / 2));
  CHECK(m.d_c_min == doctest::Approx(std::sqrt(2.0)));
  CHECK(m.dp_min == doctest::Approx(1.0));
  CHECK(m.ub == doctest::Approx(1.0));
  CHECK_FALSE(m.degenerate);

  const std::vector<StiefelPoint> dup{identity_block(2), lower_block(2), identity_block(2)};
  const auto d = constellation_metrics(dup, 2);
  CHECK(d.d_g_min == doctest::Approx(0.0));
  CHECK(d.dp_min == 0.0);
  CHECK(std::isinf(d.ub));
  CHECK(d.degenerate);
  CHECK(d.argmin_dp == std::pair<std::size_t, std::size_t>{0, 2});

  CHECK(code_of([&] { constellation_metrics(std::span(two).first(1), 2); }) == Errc::InvalidArgument);
}

TEST_CASE("constellation metrics match brute-force minima and the union bound sum") {
  std::mt19937_64 rng(14);
  std::vector<StiefelPoint> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(StiefelPoint::validate(oracle::random_stiefel(4, 2, rng)));
  for (int N : {1, 2, 3}) {
    const auto m = constellation_metrics(pts, N);
    double dg = 1e9, dc = 1e9, dp = 1e9, ub = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        dg = std::min(dg, oracle::geodesic(pts[i].matrix(), pts[j].matrix()));
        dc = std::min(dc, oracle::chordal(pts[i].matrix(), pts[j].matrix()));
        const double p = oracle::diversity_product(pts[i].matrix(), pts[j].matrix());
        dp = std::min(dp, p);
        ub += std::pow(p, -N);
      }
    }
    CHECK(m.d_g_min == doctest::Approx(dg).epsilon(1e-7));
    CHECK(m.d_c_min == doctest::Approx(dc).epsilon(1e-9));
    CHECK(m.dp_min == doctest::Approx(dp).epsilon(1e-9));
    CHECK(m.ub == doctest::Approx(ub).epsilon(1e-8));
    CHECK(m.n_for_ub == N);
  }
}

TEST_CASE("tangent vectors must satisfy base^H Δ = 0") {
  const auto base = identity_block(2);
  CMatrix d = CMatrix::Zero(4, 2);
  d(2, 0) = 1.0;
  const auto t = TangentVector::make(base, d);
  CHECK(t.g_norm() == doctest::Approx(1.0));
  CHECK(t.is_g_unit());
  d(0, 0) = 0.5;
  CHECK(code_of([&] { TangentVector::make(base, d); }) == Errc::TangencyViolated);
  CHECK(code_of([&] { TangentVector::make(base, CMatrix::Zero(3, 2)); }) == Errc::DimensionMismatch);
}

TEST_CASE("structured geodesic endpoints and orthonormality") {
  const auto basis = weyl_heisenberg_basis(2);
  const CMatrix I = CMatrix::Identity(2, 2);
  const double s = std::sqrt(2.0);
  for (const auto& b : basis) {
    const auto g0 = geodesic_structured(I, b.tilde, 0.0);
    CHECK((g0.matrix() - identity_block(2).matrix()).norm() < 1e-15);
    const auto g1 = geodesic_structured(I, b.tilde, s * pi / 2);
    CHECK(g1.matrix().topRows(2).norm() < 1e-15);
    CHECK((g1.matrix().bottomRows(2) - s * b.tilde).norm() < 1e-15);
    const auto mid = geodesic_structured(I, b.tilde, s * pi / 4);
    CHECK(orthonormality_residual(mid.matrix()) < 1e-14);
  }
  CHECK(code_of([&] { geodesic_structured(I, I, 1.0); }) == Errc::NotScaledUnitary);
}

TEST_CASE("general geodesic agrees with the structured closed form") {
  std::mt19937_64 rng(15);
  for (int M : {1, 2, 3, 4}) {
    const auto basis = weyl_heisenberg_basis(M);
    std::uniform_real_distribution<double> ut(0.0, std::sqrt(M) * pi / 2);
    for (const auto& b : basis) {
      const double t = ut(rng);
      const auto g = geodesic_general(b.delta, t);
      const auto s = geodesic_structured(CMatrix::Identity(M, M), b.tilde, t);
      CHECK((projector(g) - projector(s)).norm() < 1e-10);
    }
  }
}

TEST_CASE("general geodesic: t = 0 is the base and g-unit speed is 1") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 20; ++i) {
    const int T = 6, M = 2;
    const auto u = StiefelPoint::validate(oracle::random_stiefel(T, M, rng));
    CMatrix d = oracle::gaussian(T, M, rng);
    d -= u.matrix() * (u.matrix().adjoint() * d);
    d /= d.norm();
    const auto delta = TangentVector::make(u, d);
    CHECK((projector(geodesic_general(delta, 0.0)) - projector(u)).norm() < 1e-12);
    for (double t : {0.1, 0.3}) {
      CHECK(std::abs(geodesic_distance(u, geodesic_general(delta, t)) - t) < 1e-8);
    }
  }
}

TEST_CASE("cut instant") {
  std::mt19937_64 rng(17);
  for (int M : {1, 2, 3, 5}) {
    for (const auto& b : weyl_heisenberg_basis(M)) {
      CHECK(cut_instant(b.delta) == doctest::Approx(std::sqrt(M) * pi / 2));
    }
  }
  CMatrix d = CMatrix::Zero(4, 2);
  d(2, 0) = 1.0;
  CHECK(cut_instant(TangentVector::make(identity_block(2), d)) == doctest::Approx(pi / 2));
  for (int i = 0; i < 10; ++i) {
    const CMatrix lower = oracle::gaussian(3, 3, rng);
    CMatrix full = CMatrix::Zero(6, 3);
    full.bottomRows(3) = lower;
    const double s1 = Eigen::JacobiSVD<CMatrix>(lower).singularValues()(0);
    CHECK(cut_instant(TangentVector::make(identity_block(3), full)) == doctest::Approx(pi / (2 * s1)));
  }
  CHECK(code_of([] { cut_instant(TangentVector::make(identity_block(2), CMatrix::Zero(4, 2))); }) ==
        Errc::ZeroTangent);
}

TEST_CASE("g_inner") {
  const auto basis = weyl_heisenberg_basis(2);
  const auto& d = basis[0].delta;
  CHECK(g_inner(d, d) == doctest::Approx(1.0));
  const auto id = TangentVector::make(d.base(), Complex(0, 1) * d.matrix());
  CHECK(g_inner(d, id) == doctest::Approx(0.0));
  std::mt19937_64 rng(18);
  const auto other = StiefelPoint::validate(oracle::random_stiefel(4, 2, rng));
  CMatrix od = oracle::gaussian(4, 2, rng);
  od -= other.matrix() * (other.matrix().adjoint() * od);
  CHECK(code_of([&] { g_inner(d, TangentVector::make(other, od)); }) == Errc::BaseMismatch);
}
