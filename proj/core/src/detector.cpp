#include "grasscode/detector.hpp"

namespace grasscode {

namespace {

std::size_t argmax_first(const std::vector<double>& s) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[best]) best = i;
  }
  return best;
}

}  // namespace

NaiveDetector::NaiveDetector(std::span<const StiefelPoint> points) {
  if (points.empty()) throw Error(Errc::InvalidArgument, "empty constellation");
  T_ = points.front().T();
  adjoints_.reserve(points.size());
  for (const auto& p : points) {
    if (p.T() != T_ || p.M() != points.front().M()) {
      throw Error(Errc::DimensionMismatch, "constellation points differ in shape");
    }
    adjoints_.push_back(p.matrix().adjoint());
  }
}

void NaiveDetector::scores(const CMatrix& y, std::vector<double>& out) const {
  if (y.rows() != T_) throw Error(Errc::DimensionMismatch, "Y has the wrong number of rows");
  out.resize(adjoints_.size());
  for (std::size_t i = 0; i < adjoints_.size(); ++i) out[i] = (adjoints_[i] * y).squaredNorm();
}

std::size_t NaiveDetector::detect(const CMatrix& y) const {
  std::vector<double> s;
  scores(y, s);
  return argmax_first(s);
}

FastDetector::FastDetector(std::span<const SparsePoint> sparse, int M) : M_(M) {
  if (sparse.empty()) throw Error(Errc::NotRowSparse, "constellation has no sparse encoding");
  T_ = static_cast<int>(sparse.front().size());
  codewords_.reserve(sparse.size());
  for (const auto& rows : sparse) {
    if (static_cast<int>(rows.size()) != T_) {
      throw Error(Errc::DimensionMismatch, "sparse codewords differ in row count");
    }
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].zero()) continue;
      if (rows[r].col >= M_) throw Error(Errc::DimensionMismatch, "sparse column out of range");
      entries.push_back({static_cast<int>(r), rows[r].col, std::conj(rows[r].value)});
    }
    codewords_.push_back(std::move(entries));
  }
}

void FastDetector::scores(const CMatrix& y, std::vector<double>& out,
                          std::size_t* multiplies) const {
  if (y.rows() != T_) throw Error(Errc::DimensionMismatch, "Y has the wrong number of rows");
  const auto n = static_cast<std::size_t>(y.cols());
  out.resize(codewords_.size());
  // Row-major copy of Y split into real and imaginary parts; the products
  // are written out by hand because std::complex multiplication goes through
  // the NaN-checking library routine.
  std::vector<double> yre(static_cast<std::size_t>(T_) * n), yim(yre.size());
  for (int r = 0; r < T_; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Complex v = y(r, static_cast<Eigen::Index>(c));
      yre[static_cast<std::size_t>(r) * n + c] = v.real();
      yim[static_cast<std::size_t>(r) * n + c] = v.imag();
    }
  }
  std::vector<double> zre(static_cast<std::size_t>(M_) * n), zim(zre.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < codewords_.size(); ++i) {
    std::fill(zre.begin(), zre.end(), 0.0);
    std::fill(zim.begin(), zim.end(), 0.0);
    for (const Entry& e : codewords_[i]) {
      const double ar = e.conj_value.real();
      const double ai = e.conj_value.imag();
      const double* br = yre.data() + static_cast<std::size_t>(e.row) * n;
      const double* bi = yim.data() + static_cast<std::size_t>(e.row) * n;
      double* dr = zre.data() + static_cast<std::size_t>(e.col) * n;
      double* di = zim.data() + static_cast<std::size_t>(e.col) * n;
      for (std::size_t c = 0; c < n; ++c) {
        dr[c] += ar * br[c] - ai * bi[c];
        di[c] += ar * bi[c] + ai * br[c];
      }
      count += n;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < zre.size(); ++k) s += zre[k] * zre[k] + zim[k] * zim[k];
    out[i] = s;
  }
  if (multiplies) *multiplies += count;
}

std::size_t FastDetector::detect(const CMatrix& y) const {
  std::vector<double> s;
  scores(y, s);
  return argmax_first(s);
}

std::size_t ml_detect_naive(const CMatrix& y, std::span<const StiefelPoint> points) {
  return NaiveDetector(points).detect(y);
}

std::size_t ml_detect_naive(const CMatrix& y, const Constellation& c) {
  return ml_detect_naive(y, std::span<const StiefelPoint>(c.points));
}

std::size_t ml_detect_fast(const CMatrix& y, const Constellation& c) {
  if (!c.has_sparse()) throw Error(Errc::NotRowSparse, "constellation has no sparse encoding");
  return FastDetector(c.sparse, c.M).detect(y);
}

}  // namespace grasscode
