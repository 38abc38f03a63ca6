#pragma once

#include <vector>

namespace mble {

/// Gauss-Legendre rule mapped to [0,1]. Weights sum to one; exact for
/// polynomials up to degree 2n-1.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

QuadratureRule gauss_legendre(int n);

}  // namespace mble
