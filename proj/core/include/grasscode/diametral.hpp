#pragma once

// Diametral sets over the signed Weyl–Heisenberg vectors {±Δ_k}.
//
// Closure under negation makes ±Δ_k atomic, so the search runs on a graph
// with one node per basis index k (2M² nodes). Two nodes are adjacent when
// all four signed combinations are admissible, i.e. M·Δ_k^H Δ_l has no
// eigenvalue at +1 or −1. A diametral set of size 2s is a clique of size s.

#include <cstdint>
#include <vector>

#include "grasscode/tangent_basis.hpp"

namespace grasscode {

inline constexpr double kTolEig = 1e-8;

/// Exact clique search is used up to this M; beyond it a greedy fallback.
inline constexpr int kExactSearchMaxM = 8;

struct SignedIndex {
  int index = 0;
  bool negative = false;

  friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

/// ±Δ̃_k.
CMatrix signed_tilde(const std::vector<BasisVector>& basis, SignedIndex v);

/// Eigenvalues of M·Δ̃1^H Δ̃2.
Eigen::VectorXcd relative_spectrum(const CMatrix& tilde1, const CMatrix& tilde2);

/// No eigenvalue of M·Δ̃1^H Δ̃2 within tol_eig of 1.
bool pair_admissible(const CMatrix& tilde1, const CMatrix& tilde2, double tol_eig = kTolEig);
bool pair_admissible(const std::vector<BasisVector>& basis, SignedIndex a, SignedIndex b,
                     double tol_eig = kTolEig);

struct DiametralSet {
  int M = 0;
  std::vector<SignedIndex> members;  // +k, −k for each pair, pairs ascending

  std::vector<int> pairs() const;
  std::size_t size() const { return members.size(); }
};

DiametralSet make_diametral_set(int M, const std::vector<int>& pairs);

/// Checks closure and pairwise admissibility of every member pair.
bool is_diametral(const std::vector<BasisVector>& basis, const DiametralSet& set,
                  double tol_eig = kTolEig);

/// Symmetric adjacency over basis indices (2M² nodes), bit-packed rows.
class AdmissibilityGraph {
 public:
  explicit AdmissibilityGraph(const std::vector<BasisVector>& basis, double tol_eig = kTolEig);

  int size() const noexcept { return n_; }
  bool adjacent(int i, int j) const noexcept {
    return (rows_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] >>
            (j % 64)) & 1u;
  }
  const std::uint64_t* row(int i) const noexcept {
    return rows_.data() + static_cast<std::size_t>(i) * words_;
  }
  std::size_t words() const noexcept { return words_; }

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Maximum clique, lexicographically smallest among maximum cliques.
std::vector<int> max_clique(const AdmissibilityGraph& graph);

/// Cliques of exactly `size` nodes in lexicographic order; stops after
/// `limit` results. Nodes flagged in `excluded` are skipped.
std::vector<std::vector<int>> cliques_of_size(const AdmissibilityGraph& graph, int size,
                                              std::size_t limit,
                                              const std::vector<bool>& excluded = {});

struct MaxDiametral {
  DiametralSet set;
  int D = 0;
  bool exact = true;
};

MaxDiametral max_diametral_set(int M);

/// First-found sets of `size` signed vectors. With disjoint == true and
/// count == 2 the sets share no vector.
std::vector<DiametralSet> find_diametral_sets(int M, int size, int count, bool disjoint);

}  // namespace grasscode
