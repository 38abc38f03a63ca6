#include "mble/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mble {

double ScalarFlux::speed(double u) const {
  if (!value) return 0.0;
  if (derivative) return derivative(u);
  const double h = 1e-6 * std::max(1.0, std::abs(u));
  return (value(u + h) - value(u - h)) / (2.0 * h);
}

ScalarFlux zero_flux() { return {}; }

bool ProblemSpec::periodic(int axis) const {
  return boundary[2 * axis].kind == BoundaryKind::periodic;
}

bool ProblemSpec::has_dirichlet() const {
  for (int s = 0; s < 2 * dim; ++s)
    if (boundary[s].kind == BoundaryKind::dirichlet) return true;
  return false;
}

void ProblemSpec::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("problem: dim must be 1 or 2");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("problem: epsilon must be >= 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("problem: tau must be >= 0");
  if (!initial) throw std::invalid_argument("problem: missing initial condition");
  for (int axis = 0; axis < dim; ++axis) {
    const bool lo = boundary[2 * axis].kind == BoundaryKind::periodic;
    const bool hi = boundary[2 * axis + 1].kind == BoundaryKind::periodic;
    if (lo != hi) throw std::invalid_argument("problem: periodic sides must come in pairs");
  }
  for (int s = 0; s < 2 * dim; ++s)
    if (boundary[s].kind == BoundaryKind::dirichlet && !boundary[s].data)
      throw std::invalid_argument("problem: Dirichlet side without data");
}

UniformMesh ProblemSpec::make_mesh(int nx, int ny) const {
  if (dim == 1) return UniformMesh(x, nx, periodic(0));
  return UniformMesh(x, nx, y, ny > 0 ? ny : nx, {periodic(0), periodic(1)});
}

}  // namespace mble
