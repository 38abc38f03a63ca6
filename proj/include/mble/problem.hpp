#pragma once

#include <array>
#include <functional>
#include <string>

#include "mble/mesh.hpp"

namespace mble {

/// Scalar flux with an optional analytic derivative.
struct ScalarFlux {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  ///< empty -> centered differences

  double operator()(double u) const { return value ? value(u) : 0.0; }
  double speed(double u) const;
  bool is_zero() const { return !value; }
};

ScalarFlux zero_flux();

enum class BoundaryKind { dirichlet, neumann, periodic };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::neumann;
  /// Dirichlet datum u^D(x, y, t); unused for other kinds.
  std::function<double(double, double, double)> data;
};

/// u_t + div(F(u), G(u)) - eps Lap u - tau eps^2 Lap u_t = 0 with initial and
/// boundary data.
struct ProblemSpec {
  std::string name;
  int dim = 1;
  Interval x{0.0, 1.0};
  Interval y{0.0, 1.0};
  ScalarFlux flux_x;
  ScalarFlux flux_y;
  double epsilon = 0.0;
  double tau = 0.0;
  std::function<double(double, double)> initial;
  /// Indexed by Side: x_lo, x_hi, y_lo, y_hi.
  std::array<BoundaryCondition, 4> boundary{};

  const BoundaryCondition& bc(Side s) const { return boundary[static_cast<int>(s)]; }
  bool periodic(int axis) const;
  bool has_dirichlet() const;

  /// Throws std::invalid_argument on negative coefficients, unpaired
  /// periodic sides or missing Dirichlet data.
  void validate() const;

  /// Mesh of the problem's domain with the given cell counts.
  UniformMesh make_mesh(int nx, int ny = 0) const;
};

}  // namespace mble
