#include "grasscode/tangent_basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace grasscode {

std::string BasisVector::label() const {
  std::ostringstream os;
  os << "S^" << shift << " W^" << clock << (phase == Phase::I ? " *i" : "");
  return os.str();
}

Complex root_of_unity(long long k, int M) {
  const long long n = M;
  long long r = k % n;
  if (r < 0) r += n;
  // Quarter turns are returned exactly so that products of basis matrices
  // keep exact ±1/±i eigenvalues.
  if ((4 * r) % n == 0) {
    switch ((4 * r) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

CMatrix shift_matrix(int M) {
  if (M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  CMatrix s = CMatrix::Zero(M, M);
  for (int j = 0; j < M; ++j) s((j + 1) % M, j) = 1.0;
  return s;
}

CMatrix clock_matrix(int M) {
  if (M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  CMatrix w = CMatrix::Zero(M, M);
  for (int j = 0; j < M; ++j) w(j, j) = root_of_unity(j, M);
  return w;
}

std::vector<BasisVector> weyl_heisenberg_basis(int M) {
  if (M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  const StiefelPoint base = identity_block(M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));

  std::vector<BasisVector> out;
  out.reserve(static_cast<std::size_t>(2 * M * M));
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      // (S^a Ω^b)(i, j) = ω^{b j} when i = (j + a) mod M; built entrywise to
      // avoid rounding from repeated products.
      CMatrix core = CMatrix::Zero(M, M);
      for (int j = 0; j < M; ++j) {
        core((j + a) % M, j) = root_of_unity(static_cast<long long>(b) * j, M);
      }
      for (Phase phase : {Phase::One, Phase::I}) {
        const Complex p = phase == Phase::One ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
        CMatrix tilde = (p * scale) * core;
        CMatrix full = CMatrix::Zero(2 * M, M);
        full.bottomRows(M) = tilde;
        const int k = 2 * (a * M + b) + (phase == Phase::I ? 1 : 0);
        out.push_back(BasisVector{k, a, b, phase, std::move(tilde),
                                  TangentVector::make(base, std::move(full))});
      }
    }
  }
  return out;
}

}  // namespace grasscode
