#include "mble/space.hpp"

namespace mble {

BasisTable::BasisTable(const ReferenceBasis& basis, std::vector<RefPoint> points)
    : nb_(basis.size()), points_(std::move(points)) {
  const std::size_t n = points_.size() * static_cast<std::size_t>(nb_);
  phi_.resize(n);
  dxi_.resize(n);
  deta_.resize(n);
  for (int q = 0; q < point_count(); ++q) {
    const RefPoint& p = points_[q];
    for (int l = 0; l < nb_; ++l) {
      phi_[q * nb_ + l] = basis.eval(l, p.xi, p.eta);
      const auto g = basis.grad(l, p.xi, p.eta);
      dxi_[q * nb_ + l] = g[0];
      deta_[q * nb_ + l] = g[1];
    }
  }
}

DGSpace::DGSpace(UniformMesh mesh, int degree)
    : mesh_(std::move(mesh)), basis_(mesh_.dim(), degree), rule_(gauss_legendre(degree + 1)) {
  volume_ = BasisTable(basis_, volume_points(degree + 1));
  for (int s = 0; s < 2 * dim(); ++s)
    faces_[s] = BasisTable(basis_, face_points(static_cast<Side>(s), degree + 1));
}

std::vector<RefPoint> DGSpace::volume_points(int n) const {
  const QuadratureRule r = gauss_legendre(n);
  std::vector<RefPoint> pts;
  if (dim() == 1) {
    for (int i = 0; i < n; ++i) pts.push_back({r.points[i], 0.5, r.weights[i]});
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        pts.push_back({r.points[i], r.points[j], r.weights[i] * r.weights[j]});
  }
  return pts;
}

std::vector<RefPoint> DGSpace::face_points(Side side, int n) const {
  const double fixed = outward_sign(side) > 0 ? 1.0 : 0.0;
  if (dim() == 1) return {RefPoint{fixed, 0.5, 1.0}};
  const QuadratureRule r = gauss_legendre(n);
  std::vector<RefPoint> pts;
  for (int i = 0; i < n; ++i) {
    if (axis_of(side) == 0)
      pts.push_back({fixed, r.points[i], r.weights[i]});
    else
      pts.push_back({r.points[i], fixed, r.weights[i]});
  }
  return pts;
}

}  // namespace mble
