#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mble/problem.hpp"

namespace mble {

/// Buckley-Leverett fractional flow u^2 / (u^2 + m (1-u)^2); m is the
/// mobility ratio (0.5 for the 1D examples, 1 for the 2D ones).
double mbl_flux(double u, double ratio = 0.5);
double mbl_flux_derivative(double u, double ratio = 0.5);
ScalarFlux mbl_scalar_flux(double ratio = 0.5);

/// 2D fluxes: F = u^2/(u^2+(1-u)^2), G = F (1 - 5(1-u)^2).
double flux2d_x(double u);
double flux2d_y(double u);
ScalarFlux flux2d_x_scalar();
ScalarFlux flux2d_y_scalar();

/// Exact solution of u_t + (u^2/2)_x = 0, u(x,0) = sin(pi x): the root of
/// u = sin(pi (x - t u)), by bracketed Newton. Valid for 0 <= t <= 1/pi.
/// Throws DomainError for t outside that range.
double burgers_exact(double x, double t);

/// Overrides for the named problems; unset fields keep the defaults.
struct ProblemParams {
  std::optional<double> tau;
  std::optional<double> u_block;   ///< height of the initial block
  std::optional<double> epsilon;
};

/// Names: burgers, mbl1d, mbl2d_ex4, mbl2d_ex5_cyl, mbl2d_ex5_cube.
/// Throws std::invalid_argument on an unknown name.
ProblemSpec make_problem(const std::string& name, const ProblemParams& params = {});

const std::vector<std::string>& problem_names();

}  // namespace mble
