#pragma once

#include <array>
#include <vector>

namespace mble {

/// Orthonormal Legendre polynomial of the given degree on [0,1], or one of
/// its derivatives. Degrees 0..3, derivative orders 0..3.
double legendre(int degree, double xi, int derivative = 0);

/// Polynomial degree of a tensor basis function in each reference direction.
struct MultiIndex {
  int x = 0;
  int y = 0;
};

/// Modal Legendre basis on the reference element [0,1]^dim.
///
/// Functions are products P_a(xi) P_b(eta) with a + b <= degree, ordered by
/// increasing eta-degree and then xi-degree:
///   k=2 in 2D -> 1, P1(xi), P2(xi), P1(eta), P1(xi)P1(eta), P2(eta).
/// The first function is the constant 1, so the leading modal coefficient
/// of a cell polynomial is its cell average.
class ReferenceBasis {
 public:
  ReferenceBasis(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& index(int l) const;

  double eval(int l, double xi, double eta = 0.5) const;
  /// Reference-space gradient (d/dxi, d/deta); the eta entry is zero in 1D.
  std::array<double, 2> grad(int l, double xi, double eta = 0.5) const;
  /// Mixed reference derivative d^dx/dxi^dx d^dy/deta^dy.
  double derivative(int l, int dx, int dy, double xi, double eta = 0.5) const;

 private:
  int dim_;
  int degree_;
  std::vector<MultiIndex> indices_;
};

}  // namespace mble
