#include "grasscode/diametral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

namespace grasscode {

CMatrix signed_tilde(const std::vector<BasisVector>& basis, SignedIndex v) {
  if (v.index < 0 || static_cast<std::size_t>(v.index) >= basis.size()) {
    throw Error(Errc::InvalidArgument, "basis index out of range");
  }
  const CMatrix& t = basis[static_cast<std::size_t>(v.index)].tilde;
  return v.negative ? CMatrix(-t) : t;
}

Eigen::VectorXcd relative_spectrum(const CMatrix& tilde1, const CMatrix& tilde2) {
  if (tilde1.rows() != tilde2.rows() || tilde1.cols() != tilde2.cols()) {
    throw Error(Errc::DimensionMismatch, "relative spectrum of differently sized blocks");
  }
  const double m = static_cast<double>(tilde1.rows());
  const CMatrix product = m * (tilde1.adjoint() * tilde2);
  return Eigen::ComplexEigenSolver<CMatrix>(product, false).eigenvalues();
}

bool pair_admissible(const CMatrix& tilde1, const CMatrix& tilde2, double tol_eig) {
  for (const Complex& lambda : relative_spectrum(tilde1, tilde2)) {
    if (std::abs(lambda - Complex(1.0, 0.0)) <= tol_eig) return false;
  }
  return true;
}

bool pair_admissible(const std::vector<BasisVector>& basis, SignedIndex a, SignedIndex b,
                     double tol_eig) {
  return pair_admissible(signed_tilde(basis, a), signed_tilde(basis, b), tol_eig);
}

std::vector<int> DiametralSet::pairs() const {
  std::vector<int> out;
  for (const auto& v : members) {
    if (!v.negative) out.push_back(v.index);
  }
  return out;
}

DiametralSet make_diametral_set(int M, const std::vector<int>& pairs) {
  std::vector<int> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  DiametralSet set{M, {}};
  for (int k : sorted) {
    set.members.push_back({k, false});
    set.members.push_back({k, true});
  }
  return set;
}

bool is_diametral(const std::vector<BasisVector>& basis, const DiametralSet& set,
                  double tol_eig) {
  const auto& ms = set.members;
  for (const auto& v : ms) {
    const SignedIndex opposite{v.index, !v.negative};
    if (std::find(ms.begin(), ms.end(), opposite) == ms.end()) return false;
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (ms[i] == ms[j] || !pair_admissible(basis, ms[i], ms[j], tol_eig)) return false;
    }
  }
  return true;
}

AdmissibilityGraph::AdmissibilityGraph(const std::vector<BasisVector>& basis, double tol_eig)
    : n_(static_cast<int>(basis.size())),
      words_((basis.size() + 63) / 64),
      rows_(static_cast<std::size_t>(n_) * words_, 0) {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      // (+i, +l) and (−i, −l) share a spectrum, as do (+i, −l) and (−i, +l).
      const bool ok = pair_admissible(basis, {i, false}, {j, false}, tol_eig) &&
                      pair_admissible(basis, {i, false}, {j, true}, tol_eig);
      if (!ok) continue;
      rows_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] |=
          std::uint64_t{1} << (j % 64);
      rows_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] |=
          std::uint64_t{1} << (i % 64);
    }
  }
}

namespace {

using Bits = std::vector<std::uint64_t>;

int popcount(const Bits& b) {
  int c = 0;
  for (auto w : b) c += std::popcount(w);
  return c;
}

int first_bit(const Bits& b) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    if (b[w] != 0) return static_cast<int>(w * 64) + std::countr_zero(b[w]);
  }
  return -1;
}

void clear_bit(Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] &= ~(std::uint64_t{1} << (i % 64)); }

Bits intersect(const Bits& cand, const std::uint64_t* row) {
  Bits out(cand.size());
  for (std::size_t w = 0; w < cand.size(); ++w) out[w] = cand[w] & row[w];
  return out;
}

// Candidate sets only hold nodes above the last chosen one, so the search
// visits cliques in lexicographic order and the first clique of a new record
// size is the lexicographically smallest of that size.
class MaxCliqueSearch {
 public:
  explicit MaxCliqueSearch(const AdmissibilityGraph& g) : g_(g) {}

  std::vector<int> run() {
    Bits all(g_.words(), 0);
    for (int i = 0; i < g_.size(); ++i) all[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
    expand(all);
    return best_;
  }

 private:
  void expand(Bits cand) {
    if (current_.size() > best_.size()) best_ = current_;
    while (true) {
      const int remaining = popcount(cand);
      if (remaining == 0 || current_.size() + static_cast<std::size_t>(remaining) <= best_.size()) return;
      const int v = first_bit(cand);
      clear_bit(cand, v);
      current_.push_back(v);
      expand(intersect(cand, g_.row(v)));
      current_.pop_back();
    }
  }

  const AdmissibilityGraph& g_;
  std::vector<int> current_;
  std::vector<int> best_;
};

Bits node_set(const AdmissibilityGraph& g, const std::vector<bool>& excluded) {
  Bits all(g.words(), 0);
  for (int i = 0; i < g.size(); ++i) {
    if (static_cast<std::size_t>(i) < excluded.size() && excluded[static_cast<std::size_t>(i)]) continue;
    all[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  }
  return all;
}

// Visits cliques of exactly `size` nodes drawn from `cand` in lexicographic
// order until the visitor returns true. Returns whether it was stopped.
template <class Visit>
bool walk_cliques(const AdmissibilityGraph& g, int size, Bits cand, std::vector<int>& current,
                  Visit& visit) {
  if (static_cast<int>(current.size()) == size) return visit(std::as_const(current));
  while (true) {
    const int remaining = popcount(cand);
    if (static_cast<int>(current.size()) + remaining < size) return false;
    const int v = first_bit(cand);
    clear_bit(cand, v);
    current.push_back(v);
    const bool stop = walk_cliques(g, size, intersect(cand, g.row(v)), current, visit);
    current.pop_back();
    if (stop) return true;
  }
}

template <class Visit>
bool walk_cliques(const AdmissibilityGraph& g, int size, const std::vector<bool>& excluded,
                  Visit&& visit) {
  if (size < 1) return false;
  std::vector<int> current;
  return walk_cliques(g, size, node_set(g, excluded), current, visit);
}

// Deterministic greedy: repeatedly take the lowest-index node adjacent to all
// chosen ones.
std::vector<int> greedy_clique(const AdmissibilityGraph& g) {
  std::vector<int> chosen;
  for (int v = 0; v < g.size(); ++v) {
    const bool ok = std::all_of(chosen.begin(), chosen.end(), [&](int u) { return g.adjacent(u, v); });
    if (ok) chosen.push_back(v);
  }
  return chosen;
}

}  // namespace

std::vector<int> max_clique(const AdmissibilityGraph& graph) {
  return MaxCliqueSearch(graph).run();
}

std::vector<std::vector<int>> cliques_of_size(const AdmissibilityGraph& graph, int size,
                                              std::size_t limit,
                                              const std::vector<bool>& excluded) {
  std::vector<std::vector<int>> found;
  if (limit == 0) return found;
  walk_cliques(graph, size, excluded, [&](const std::vector<int>& clique) {
    found.push_back(clique);
    return found.size() >= limit;
  });
  return found;
}

MaxDiametral max_diametral_set(int M) {
  if (M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  const auto basis = weyl_heisenberg_basis(M);
  const AdmissibilityGraph graph(basis);
  MaxDiametral out;
  out.exact = M <= kExactSearchMaxM;
  const std::vector<int> clique = out.exact ? max_clique(graph) : greedy_clique(graph);
  out.set = make_diametral_set(M, clique);
  out.D = static_cast<int>(out.set.size());
  return out;
}

std::vector<DiametralSet> find_diametral_sets(int M, int size, int count, bool disjoint) {
  if (M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  if (size < 2 || size % 2 != 0) throw Error(Errc::InvalidArgument, "set size must be even and >= 2");
  if (count != 1 && count != 2) throw Error(Errc::InvalidArgument, "count must be 1 or 2");
  const int n_signed = 4 * M * M;
  if (size > n_signed || (disjoint && count == 2 && 2 * size > n_signed)) {
    std::ostringstream os;
    os << "cannot fit " << count << " set(s) of size " << size << " in " << n_signed << " vectors";
    throw Error(Errc::InfeasibleRequest, os.str());
  }

  const auto basis = weyl_heisenberg_basis(M);
  const AdmissibilityGraph graph(basis);
  const int nodes = size / 2;

  auto infeasible = [&] {
    std::ostringstream os;
    os << "no " << (disjoint && count == 2 ? "disjoint " : "") << "diametral set(s) of size "
       << size << " for M=" << M;
    return Error(Errc::InfeasibleRequest, os.str());
  };

  if (count == 1) {
    // Leading pairs of the maximum set, so the result always extends to a
    // set of size D. The lexicographically first clique need not: at M = 2,
    // pairs {0, 1} are compatible but lie in no maximum clique.
    const std::vector<int> best = M <= kExactSearchMaxM ? max_clique(graph) : greedy_clique(graph);
    if (nodes <= static_cast<int>(best.size())) {
      return {make_diametral_set(M, std::vector<int>(best.begin(), best.begin() + nodes))};
    }
  }

  if (count == 1 || !disjoint) {
    const auto cliques = cliques_of_size(graph, nodes, static_cast<std::size_t>(count));
    if (cliques.size() < static_cast<std::size_t>(count)) throw infeasible();
    std::vector<DiametralSet> out;
    for (const auto& c : cliques) out.push_back(make_diametral_set(M, c));
    return out;
  }

  // Walk first sets lexicographically; take the first one whose complement
  // admits a second set.
  std::vector<DiametralSet> out;
  const bool done = walk_cliques(graph, nodes, {}, [&](const std::vector<int>& first) {
    std::vector<bool> excluded(static_cast<std::size_t>(graph.size()), false);
    for (int v : first) excluded[static_cast<std::size_t>(v)] = true;
    const auto second = cliques_of_size(graph, nodes, 1, excluded);
    if (second.empty()) return false;
    out = {make_diametral_set(M, first), make_diametral_set(M, second.front())};
    return true;
  });
  if (!done) throw infeasible();
  return out;
}

}  // namespace grasscode
