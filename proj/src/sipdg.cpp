#include "mble/sipdg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mble {

namespace {

Side upper_side(int axis) { return axis == 0 ? Side::x_hi : Side::y_hi; }
Side lower_side(int axis) { return axis == 0 ? Side::x_lo : Side::y_lo; }

// Reference derivative along `axis` of basis l at face point q.
double face_dref(const BasisTable& t, int axis, int q, int l) {
  return axis == 0 ? t.dxi(q, l) : t.deta(q, l);
}

std::array<double, 2> axis_normal(int axis, double sign) {
  std::array<double, 2> n{0.0, 0.0};
  n[axis] = sign;
  return n;
}

}  // namespace

double penalty_sigma(const UniformMesh& mesh, const Face& face, int degree) {
  const double per_cell = degree * (degree + 1.0) * mesh.face_measure(face.axis) / mesh.cell_volume();
  // Uniform mesh: both adjacent values coincide, so the interior mean is the same.
  return per_cell;
}

SparseMatrix assemble_mass(const DGSpace& space) {
  const UniformMesh& mesh = space.mesh();
  const int nb = space.dofs_per_cell();
  const BasisTable& vol = space.volume();
  std::vector<double> local(nb * nb, 0.0);
  for (int q = 0; q < vol.point_count(); ++q)
    for (int l = 0; l < nb; ++l)
      for (int m = 0; m < nb; ++m)
        local[l * nb + m] += vol.points()[q].weight * vol.phi(q, l) * vol.phi(q, m);
  SparseBuilder b(space.dof_count());
  for (int c = 0; c < mesh.cell_count(); ++c)
    for (int l = 0; l < nb; ++l)
      for (int m = 0; m < nb; ++m) b.add(c * nb + l, c * nb + m, mesh.cell_volume() * local[l * nb + m]);
  return b.finalize();
}

SparseMatrix assemble_diffusion(const DGSpace& space, const ProblemSpec& problem, FaceSelection faces) {
  const UniformMesh& mesh = space.mesh();
  const int nb = space.dofs_per_cell();
  const int k = space.degree();
  const double vol_measure = mesh.cell_volume();
  SparseBuilder b(space.dof_count());

  // Volume term; identical on every cell of a uniform mesh.
  const BasisTable& vol = space.volume();
  const double hx = mesh.dx();
  const double hy = mesh.dy();
  std::vector<double> local(nb * nb, 0.0);
  for (int q = 0; q < vol.point_count(); ++q) {
    const double w = vol.points()[q].weight * vol_measure;
    for (int l = 0; l < nb; ++l)
      for (int m = 0; m < nb; ++m) {
        double g = vol.dxi(q, l) * vol.dxi(q, m) / (hx * hx);
        if (space.dim() == 2) g += vol.deta(q, l) * vol.deta(q, m) / (hy * hy);
        local[l * nb + m] += w * g;
      }
  }
  for (int c = 0; c < mesh.cell_count(); ++c)
    for (int l = 0; l < nb; ++l)
      for (int m = 0; m < nb; ++m) b.add(c * nb + l, c * nb + m, local[l * nb + m]);

  for (const Face& f : mesh.faces()) {
    const int axis = f.axis;
    const double h = mesh.spacing(axis);
    const double emeas = mesh.face_measure(axis);
    const double sigma = penalty_sigma(mesh, f, k);
    if (!f.is_boundary()) {
      const BasisTable& tm = space.face(upper_side(axis));
      const BasisTable& tp = space.face(lower_side(axis));
      const int cells[2] = {f.minus, f.plus};
      const BasisTable* tabs[2] = {&tm, &tp};
      const double jump_sign[2] = {1.0, -1.0};
      for (int q = 0; q < tm.point_count(); ++q) {
        const double w = tm.points()[q].weight * emeas;
        for (int a = 0; a < 2; ++a)
          for (int bb = 0; bb < 2; ++bb)
            for (int l = 0; l < nb; ++l)
              for (int m = 0; m < nb; ++m) {
                const double phi_l = tabs[a]->phi(q, l);
                const double phi_m = tabs[bb]->phi(q, m);
                const double dn_l = f.normal * face_dref(*tabs[a], axis, q, l) / h;
                const double dn_m = f.normal * face_dref(*tabs[bb], axis, q, m) / h;
                const double v = -0.5 * dn_m * jump_sign[a] * phi_l - 0.5 * dn_l * jump_sign[bb] * phi_m +
                                 sigma * jump_sign[a] * jump_sign[bb] * phi_l * phi_m;
                b.add(cells[a] * nb + l, cells[bb] * nb + m, w * v);
              }
      }
    } else {
      if (faces != FaceSelection::interior_and_dirichlet) continue;
      if (problem.bc(f.side).kind != BoundaryKind::dirichlet) continue;
      const BasisTable& t = space.face(f.side);
      for (int q = 0; q < t.point_count(); ++q) {
        const double w = t.points()[q].weight * emeas;
        for (int l = 0; l < nb; ++l)
          for (int m = 0; m < nb; ++m) {
            const double dn_l = f.normal * face_dref(t, axis, q, l) / h;
            const double dn_m = f.normal * face_dref(t, axis, q, m) / h;
            const double v = -dn_m * t.phi(q, l) - dn_l * t.phi(q, m) + sigma * t.phi(q, l) * t.phi(q, m);
            b.add(f.minus * nb + l, f.minus * nb + m, w * v);
          }
      }
    }
  }
  return b.finalize();
}

AssembledOperators assemble_operators(const DGSpace& space, const ProblemSpec& problem) {
  AssembledOperators ops;
  ops.mass = assemble_mass(space);
  ops.a1 = assemble_diffusion(space, problem, FaceSelection::interior);
  ops.a2 = assemble_diffusion(space, problem, FaceSelection::interior_and_dirichlet);
  const double c = problem.tau * problem.epsilon * problem.epsilon;
  ops.w = c != 0.0 ? SparseMatrix::combine(1.0, ops.mass, c, ops.a1) : ops.mass;
  return ops;
}

double max_wave_speed(double lo, double hi, std::array<double, 2> normal, const ScalarFlux& fx,
                      const ScalarFlux& fy) {
  constexpr int intervals = 65;  // 64 interior samples plus both endpoints
  double c = 0.0;
  const bool use_x = normal[0] != 0.0 && !fx.is_zero();
  const bool use_y = normal[1] != 0.0 && !fy.is_zero();
  const int n = hi > lo ? intervals : 0;
  for (int i = 0; i <= n; ++i) {
    const double u = n == 0 ? lo : lo + (hi - lo) * i / intervals;
    double s = 0.0;
    if (use_x) s += normal[0] * fx.speed(u);
    if (use_y) s += normal[1] * fy.speed(u);
    c = std::max(c, std::abs(s));
  }
  return c;
}

double llf_flux(double u_minus, double u_plus, std::array<double, 2> normal, const ScalarFlux& fx,
                const ScalarFlux& fy) {
  if (!std::isfinite(u_minus) || !std::isfinite(u_plus))
    throw std::invalid_argument("llf_flux: non-finite trace value");
  auto normal_flux = [&](double u) {
    double s = 0.0;
    if (normal[0] != 0.0 && !fx.is_zero()) s += normal[0] * fx(u);
    if (normal[1] != 0.0 && !fy.is_zero()) s += normal[1] * fy(u);
    return s;
  };
  const double c = max_wave_speed(std::min(u_minus, u_plus), std::max(u_minus, u_plus), normal, fx, fy);
  return 0.5 * (normal_flux(u_minus) + normal_flux(u_plus)) - 0.5 * c * (u_plus - u_minus);
}

namespace {

double trace(std::span<const double> u, const BasisTable& t, int q) {
  double v = 0.0;
  for (std::size_t l = 0; l < u.size(); ++l) v += u[l] * t.phi(q, static_cast<int>(l));
  return v;
}

// Exterior state on a boundary face point.
double exterior_state(const ProblemSpec& problem, const UniformMesh& mesh, const Face& f,
                      const RefPoint& p, double u_inner, double t) {
  const BoundaryCondition& bc = problem.bc(f.side);
  if (bc.kind == BoundaryKind::dirichlet) {
    const auto xy = mesh.to_physical(p.xi, p.eta, f.minus);
    return bc.data(xy[0], xy[1], t);
  }
  return u_inner;
}

}  // namespace

void advection_residual(const DGSolution& sol, const ProblemSpec& problem, double t, std::span<double> out) {
  const DGSpace& space = sol.space();
  const UniformMesh& mesh = space.mesh();
  const int nb = space.dofs_per_cell();
  if (static_cast<int>(out.size()) != space.dof_count())
    throw std::invalid_argument("advection_residual: output length mismatch");
  std::fill(out.begin(), out.end(), 0.0);

  const BasisTable& vol = space.volume();
  const double vm = mesh.cell_volume();
  const bool has_y = space.dim() == 2 && !problem.flux_y.is_zero();
  const bool has_x = !problem.flux_x.is_zero();
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto u = sol.cell(c);
    auto r = out.subspan(static_cast<std::size_t>(c) * nb, nb);
    for (int q = 0; q < vol.point_count(); ++q) {
      const double uq = trace(u, vol, q);
      const double w = vol.points()[q].weight * vm;
      const double fx = has_x ? problem.flux_x(uq) / mesh.dx() : 0.0;
      const double fy = has_y ? problem.flux_y(uq) / mesh.dy() : 0.0;
      for (int l = 0; l < nb; ++l) r[l] -= w * (fx * vol.dxi(q, l) + fy * vol.deta(q, l));
    }
  }

  for (const Face& f : mesh.faces()) {
    const int axis = f.axis;
    const double emeas = mesh.face_measure(axis);
    const auto normal = axis_normal(axis, f.normal);
    if (!f.is_boundary()) {
      const BasisTable& tm = space.face(upper_side(axis));
      const BasisTable& tp = space.face(lower_side(axis));
      const auto um = sol.cell(f.minus);
      const auto up = sol.cell(f.plus);
      for (int q = 0; q < tm.point_count(); ++q) {
        const double flux =
            llf_flux(trace(um, tm, q), trace(up, tp, q), normal, problem.flux_x, problem.flux_y);
        const double w = tm.points()[q].weight * emeas * flux;
        for (int l = 0; l < nb; ++l) {
          out[f.minus * nb + l] += w * tm.phi(q, l);
          out[f.plus * nb + l] -= w * tp.phi(q, l);
        }
      }
    } else {
      const BasisTable& tb = space.face(f.side);
      const auto um = sol.cell(f.minus);
      for (int q = 0; q < tb.point_count(); ++q) {
        const double inner = trace(um, tb, q);
        const double outer = exterior_state(problem, mesh, f, tb.points()[q], inner, t);
        const double flux = llf_flux(inner, outer, normal, problem.flux_x, problem.flux_y);
        const double w = tb.points()[q].weight * emeas * flux;
        for (int l = 0; l < nb; ++l) out[f.minus * nb + l] += w * tb.phi(q, l);
      }
    }
  }
}

std::vector<double> boundary_rhs(const DGSpace& space, const ProblemSpec& problem, double t) {
  std::vector<double> r(space.dof_count(), 0.0);
  if (problem.epsilon == 0.0) return r;
  const UniformMesh& mesh = space.mesh();
  const int nb = space.dofs_per_cell();
  for (const Face& f : mesh.faces()) {
    if (!f.is_boundary()) continue;
    const BoundaryCondition& bc = problem.bc(f.side);
    if (bc.kind != BoundaryKind::dirichlet) continue;
    const int axis = f.axis;
    const double h = mesh.spacing(axis);
    const double sigma = penalty_sigma(mesh, f, space.degree());
    const BasisTable& tb = space.face(f.side);
    for (int q = 0; q < tb.point_count(); ++q) {
      const RefPoint& p = tb.points()[q];
      const auto xy = mesh.to_physical(p.xi, p.eta, f.minus);
      const double ud = bc.data(xy[0], xy[1], t);
      const double w = p.weight * mesh.face_measure(axis) * problem.epsilon * ud;
      for (int l = 0; l < nb; ++l) {
        const double dn = f.normal * face_dref(tb, axis, q, l) / h;
        r[f.minus * nb + l] += w * (sigma * tb.phi(q, l) - dn);
      }
    }
  }
  return r;
}

double boundary_outflow(const DGSolution& sol, const ProblemSpec& problem, double t) {
  const DGSpace& space = sol.space();
  const UniformMesh& mesh = space.mesh();
  double total = 0.0;
  for (const Face& f : mesh.faces()) {
    if (!f.is_boundary()) continue;
    const BasisTable& tb = space.face(f.side);
    const auto um = sol.cell(f.minus);
    const auto normal = axis_normal(f.axis, f.normal);
    for (int q = 0; q < tb.point_count(); ++q) {
      const double inner = trace(um, tb, q);
      const double outer = exterior_state(problem, mesh, f, tb.points()[q], inner, t);
      total += tb.points()[q].weight * mesh.face_measure(f.axis) *
               llf_flux(inner, outer, normal, problem.flux_x, problem.flux_y);
    }
  }
  return total;
}

}  // namespace mble
