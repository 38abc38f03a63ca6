#include "mble/solution.hpp"

#include <cmath>
#include <stdexcept>

namespace mble {

DGSolution::DGSolution(SpacePtr space, double time)
    : space_(std::move(space)), coeffs_(space_->dof_count(), 0.0), time_(time) {}

std::span<double> DGSolution::cell(int c) {
  const int nb = space_->dofs_per_cell();
  return std::span<double>(coeffs_).subspan(static_cast<std::size_t>(c) * nb, nb);
}

std::span<const double> DGSolution::cell(int c) const {
  const int nb = space_->dofs_per_cell();
  return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(c) * nb, nb);
}

double DGSolution::evaluate(int c, double xi, double eta) const {
  const auto u = cell(c);
  const ReferenceBasis& b = space_->basis();
  double v = 0.0;
  for (int l = 0; l < b.size(); ++l) v += u[l] * b.eval(l, xi, eta);
  return v;
}

double DGSolution::value_at(double x, double y) const {
  const UniformMesh& m = space_->mesh();
  const int c = m.locate(x, y);
  const auto r = m.to_reference(x, y, c);
  return evaluate(c, r[0], r[1]);
}

DGSolution project(const SpacePtr& space, const ScalarField& f, int points_per_axis) {
  const int n = points_per_axis > 0 ? points_per_axis : space->degree() + 1;
  const BasisTable table(space->basis(), space->volume_points(n));
  DGSolution sol(space);
  const UniformMesh& mesh = space->mesh();
  const int nb = space->dofs_per_cell();
  for (int c = 0; c < mesh.cell_count(); ++c) {
    auto u = sol.cell(c);
    for (int q = 0; q < table.point_count(); ++q) {
      const RefPoint& p = table.points()[q];
      const auto xy = mesh.to_physical(p.xi, p.eta, c);
      const double fv = f(xy[0], xy[1]);
      for (int l = 0; l < nb; ++l) u[l] += p.weight * fv * table.phi(q, l);
    }
  }
  return sol;
}

double cell_average(const DGSolution& sol, int cell) {
  if (cell < 0 || cell >= sol.space().mesh().cell_count())
    throw std::out_of_range("cell_average: cell index out of range");
  return sol.cell(cell)[0];
}

double total_mass(const DGSolution& sol) {
  const UniformMesh& m = sol.space().mesh();
  double s = 0.0;
  for (int c = 0; c < m.cell_count(); ++c) s += sol.cell(c)[0];
  return s * m.cell_volume();
}

double l2_error(const DGSolution& sol, const ScalarField& f, int points_per_axis) {
  const SpacePtr& space = sol.space_ptr();
  const BasisTable table(space->basis(), space->volume_points(points_per_axis));
  const UniformMesh& mesh = space->mesh();
  const int nb = space->dofs_per_cell();
  double sum = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto u = sol.cell(c);
    for (int q = 0; q < table.point_count(); ++q) {
      const RefPoint& p = table.points()[q];
      double uh = 0.0;
      for (int l = 0; l < nb; ++l) uh += u[l] * table.phi(q, l);
      const auto xy = mesh.to_physical(p.xi, p.eta, c);
      const double e = uh - f(xy[0], xy[1]);
      sum += p.weight * e * e;
    }
  }
  return std::sqrt(sum * mesh.cell_volume());
}

}  // namespace mble
