#include "mble/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mble {

double SparseMatrix::at(int r, int c) const {
  const auto b = cols_.begin() + offsets_[r];
  const auto e = cols_.begin() + offsets_[r + 1];
  const auto it = std::lower_bound(b, e, c);
  if (it == e || *it != c) return 0.0;
  return values_[it - cols_.begin()];
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw std::invalid_argument("spmv: dimension mismatch");
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int k = offsets_[i]; k < offsets_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

SparseMatrix SparseMatrix::transpose() const {
  SparseBuilder b(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = offsets_[i]; k < offsets_[i + 1]; ++k) b.add(cols_[k], i, values_[k]);
  return b.finalize();
}

SparseMatrix SparseMatrix::combine(double a, const SparseMatrix& A, double b, const SparseMatrix& B) {
  if (A.n_ != B.n_) throw std::invalid_argument("combine: dimension mismatch");
  SparseMatrix C;
  C.n_ = A.n_;
  C.offsets_.assign(1, 0);
  C.cols_.reserve(std::max(A.cols_.size(), B.cols_.size()));
  C.values_.reserve(C.cols_.capacity());
  for (int i = 0; i < A.n_; ++i) {
    int ka = A.offsets_[i], kb = B.offsets_[i];
    const int ea = A.offsets_[i + 1], eb = B.offsets_[i + 1];
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? A.cols_[ka] : A.n_;
      const int cb = kb < eb ? B.cols_[kb] : B.n_;
      if (ca == cb) {
        C.cols_.push_back(ca);
        C.values_.push_back(a * A.values_[ka++] + b * B.values_[kb++]);
      } else if (ca < cb) {
        C.cols_.push_back(ca);
        C.values_.push_back(a * A.values_[ka++]);
      } else {
        C.cols_.push_back(cb);
        C.values_.push_back(b * B.values_[kb++]);
      }
    }
    C.offsets_.push_back(static_cast<int>(C.cols_.size()));
  }
  return C;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseBuilder b(n);
  for (int i = 0; i < n; ++i) b.add(i, i, 1.0);
  return b.finalize();
}

SparseBuilder::SparseBuilder(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("SparseBuilder: negative dimension");
}

void SparseBuilder::add(int r, int c, double v) {
  if (r < 0 || r >= n_ || c < 0 || c >= n_) throw std::out_of_range("SparseBuilder: index out of range");
  entries_.push_back({r, c, v});
}

SparseMatrix SparseBuilder::finalize() const {
  std::vector<Entry> e = entries_;
  std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  SparseMatrix m;
  m.n_ = n_;
  m.offsets_.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < e.size();) {
    std::size_t j = k;
    double v = 0.0;
    while (j < e.size() && e[j].r == e[k].r && e[j].c == e[k].c) v += e[j++].v;
    m.cols_.push_back(e[k].c);
    m.values_.push_back(v);
    m.offsets_[e[k].r + 1]++;
    k = j;
  }
  for (int i = 0; i < n_; ++i) m.offsets_[i + 1] += m.offsets_[i];
  return m;
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x) {
  std::vector<double> y(A.size());
  A.multiply(x, y);
  return y;
}

}  // namespace mble
