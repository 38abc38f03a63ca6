#pragma once

#include <array>
#include <memory>
#include <vector>

#include "mble/basis.hpp"
#include "mble/mesh.hpp"
#include "mble/quadrature.hpp"

namespace mble {

/// Reference quadrature point; weights of a rule sum to one.
struct RefPoint {
  double xi = 0.5;
  double eta = 0.5;
  double weight = 1.0;
};

/// Basis values and reference gradients tabulated at a point set.
class BasisTable {
 public:
  BasisTable() = default;
  BasisTable(const ReferenceBasis& basis, std::vector<RefPoint> points);

  const std::vector<RefPoint>& points() const { return points_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  double phi(int q, int l) const { return phi_[q * nb_ + l]; }
  double dxi(int q, int l) const { return dxi_[q * nb_ + l]; }
  double deta(int q, int l) const { return deta_[q * nb_ + l]; }

 private:
  int nb_ = 0;
  std::vector<RefPoint> points_;
  std::vector<double> phi_, dxi_, deta_;
};

/// Broken polynomial space V_h^k on a uniform mesh: mesh, modal basis and
/// precomputed quadrature tables. Immutable once built.
///
/// Volume and face integrals use (k+1)-point Gauss rules per axis.
class DGSpace {
 public:
  DGSpace(UniformMesh mesh, int degree);

  const UniformMesh& mesh() const { return mesh_; }
  const ReferenceBasis& basis() const { return basis_; }
  int dim() const { return mesh_.dim(); }
  int degree() const { return basis_.degree(); }
  int dofs_per_cell() const { return basis_.size(); }
  int dof_count() const { return mesh_.cell_count() * basis_.size(); }

  const QuadratureRule& rule() const { return rule_; }
  const BasisTable& volume() const { return volume_; }
  const BasisTable& face(Side side) const { return faces_[static_cast<int>(side)]; }

  /// Tensor Gauss points with n points per axis (n >= 1).
  std::vector<RefPoint> volume_points(int n) const;
  /// Gauss points on one face of the reference element.
  std::vector<RefPoint> face_points(Side side, int n) const;

 private:
  UniformMesh mesh_;
  ReferenceBasis basis_;
  QuadratureRule rule_;
  BasisTable volume_;
  std::array<BasisTable, 4> faces_;
};

using SpacePtr = std::shared_ptr<const DGSpace>;

inline SpacePtr make_space(UniformMesh mesh, int degree) {
  return std::make_shared<const DGSpace>(std::move(mesh), degree);
}

}  // namespace mble
