#pragma once

// Weyl–Heisenberg tangent basis at [I_M; 0_M] in Gr(2M, M).

#include <string>
#include <vector>

#include "grasscode/grassmann.hpp"

namespace grasscode {

enum class Phase { One, I };

/// Identifier written into constellation files so readers know how basis
/// indices map to matrices.
inline constexpr const char* kBasisOrderingId = "wh-shift^a-clock^b-phase{1,i}-v1";

/// One g-unit basis vector Δ_k = [0; Δ̃_k], Δ̃_k = phase · S^a Ω^b / √M.
/// Index k = 2(a·M + b) + (phase == I).
struct BasisVector {
  int index = 0;
  int shift = 0;  // a
  int clock = 0;  // b
  Phase phase = Phase::One;
  CMatrix tilde;        // M×M, one nonzero per row and column
  TangentVector delta;  // 2M×M at identity_block(M)

  std::string label() const;
};

/// e^{2πi k/M}, exact for multiples of a quarter turn.
Complex root_of_unity(long long k, int M);

/// Cyclic down-shift: S(i, j) = 1 iff i = (j + 1) mod M.
CMatrix shift_matrix(int M);

/// diag(1, ω, …, ω^{M−1}), ω = e^{2πi/M}.
CMatrix clock_matrix(int M);

/// The 2M² basis vectors in index order.
std::vector<BasisVector> weyl_heisenberg_basis(int M);

}  // namespace grasscode
