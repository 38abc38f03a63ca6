#pragma once

#include <span>
#include <vector>

namespace mble {

/// Square matrix in compressed-row form with sorted column indices.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  int size() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }
  const std::vector<int>& row_offsets() const { return offsets_; }
  const std::vector<int>& columns() const { return cols_; }
  const std::vector<double>& values() const { return values_; }

  /// Stored entry, or zero when (r,c) is outside the pattern.
  double at(int r, int c) const;
  std::vector<double> diagonal() const;
  double max_abs() const;

  /// y = A x. Throws std::invalid_argument on length mismatch.
  void multiply(std::span<const double> x, std::span<double> y) const;

  SparseMatrix transpose() const;

  /// a*A + b*B over the union of both patterns.
  static SparseMatrix combine(double a, const SparseMatrix& A, double b, const SparseMatrix& B);
  static SparseMatrix identity(int n);

 private:
  friend class SparseBuilder;
  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Collects (row, col, value) triplets; duplicates are summed on finalize.
class SparseBuilder {
 public:
  explicit SparseBuilder(int n);
  void add(int r, int c, double v);
  SparseMatrix finalize() const;

 private:
  struct Entry {
    int r, c;
    double v;
  };
  int n_;
  std::vector<Entry> entries_;
};

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);

}  // namespace mble
