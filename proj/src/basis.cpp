#include "mble/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mble {

double legendre(int degree, double xi, int derivative) {
  static const double s3 = std::sqrt(3.0);
  static const double s5 = std::sqrt(5.0);
  static const double s7 = std::sqrt(7.0);
  if (derivative < 0) throw std::invalid_argument("legendre: negative derivative order");
  if (derivative > degree) return 0.0;
  switch (degree) {
    case 0:
      return 1.0;
    case 1:
      return derivative == 0 ? s3 * (2.0 * xi - 1.0) : 2.0 * s3;
    case 2:
      switch (derivative) {
        case 0: return s5 * (6.0 * xi * xi - 6.0 * xi + 1.0);
        case 1: return s5 * (12.0 * xi - 6.0);
        default: return 12.0 * s5;
      }
    case 3:
      switch (derivative) {
        case 0: return s7 * (((20.0 * xi - 30.0) * xi + 12.0) * xi - 1.0);
        case 1: return s7 * ((60.0 * xi - 60.0) * xi + 12.0);
        case 2: return s7 * (120.0 * xi - 60.0);
        default: return 120.0 * s7;
      }
    default:
      throw std::invalid_argument("legendre: degree must be in [0,3]");
  }
}

ReferenceBasis::ReferenceBasis(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("ReferenceBasis: dim must be 1 or 2");
  if (degree < 1 || degree > 3)
    throw std::invalid_argument("ReferenceBasis: degree must be one of {1,2,3}");
  if (dim == 1) {
    for (int a = 0; a <= degree; ++a) indices_.push_back({a, 0});
  } else {
    for (int b = 0; b <= degree; ++b)
      for (int a = 0; a + b <= degree; ++a) indices_.push_back({a, b});
  }
}

const MultiIndex& ReferenceBasis::index(int l) const {
  if (l < 0 || l >= size())
    throw std::out_of_range("basis index " + std::to_string(l) + " out of range [0," +
                            std::to_string(size()) + ")");
  return indices_[l];
}

double ReferenceBasis::eval(int l, double xi, double eta) const {
  const MultiIndex& m = index(l);
  if (dim_ == 1) return legendre(m.x, xi);
  return legendre(m.x, xi) * legendre(m.y, eta);
}

std::array<double, 2> ReferenceBasis::grad(int l, double xi, double eta) const {
  const MultiIndex& m = index(l);
  if (dim_ == 1) return {legendre(m.x, xi, 1), 0.0};
  return {legendre(m.x, xi, 1) * legendre(m.y, eta), legendre(m.x, xi) * legendre(m.y, eta, 1)};
}

double ReferenceBasis::derivative(int l, int dx, int dy, double xi, double eta) const {
  const MultiIndex& m = index(l);
  if (dim_ == 1) return dy == 0 ? legendre(m.x, xi, dx) : 0.0;
  return legendre(m.x, xi, dx) * legendre(m.y, eta, dy);
}

}  // namespace mble
