#pragma once

// Noncoherent ML detection: argmax_X ‖X^H Y‖_F², ties to the lowest index.

#include <cstddef>
#include <span>
#include <vector>

#include "grasscode/designer.hpp"

namespace grasscode {

/// Dense X^H Y per codeword; O(M T N) multiplies each.
class NaiveDetector {
 public:
  explicit NaiveDetector(std::span<const StiefelPoint> points);

  void scores(const CMatrix& y, std::vector<double>& out) const;
  std::size_t detect(const CMatrix& y) const;

 private:
  std::vector<CMatrix> adjoints_;
  Eigen::Index T_ = 0;
};

/// Row-sparse codewords: X^H Y is assembled by adding conj(x_r)·Y.row(r)
/// into output row col(r), T N multiplies per codeword.
class FastDetector {
 public:
  FastDetector(std::span<const SparsePoint> sparse, int M);

  /// `multiplies`, when given, is increased by the complex multiplies done.
  void scores(const CMatrix& y, std::vector<double>& out, std::size_t* multiplies = nullptr) const;
  std::size_t detect(const CMatrix& y) const;

 private:
  struct Entry {
    int row;
    int col;
    Complex conj_value;
  };
  std::vector<std::vector<Entry>> codewords_;
  int M_ = 0;
  int T_ = 0;
};

std::size_t ml_detect_naive(const CMatrix& y, std::span<const StiefelPoint> points);
std::size_t ml_detect_naive(const CMatrix& y, const Constellation& c);

/// Throws NotRowSparse when the constellation carries no sparse encoding.
std::size_t ml_detect_fast(const CMatrix& y, const Constellation& c);

}  // namespace grasscode
