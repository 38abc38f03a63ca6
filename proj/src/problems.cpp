#include "mble/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mble/errors.hpp"

namespace mble {

double mbl_flux(double u, double ratio) {
  const double v = 1.0 - u;
  return u * u / (u * u + ratio * v * v);
}

double mbl_flux_derivative(double u, double ratio) {
  const double v = 1.0 - u;
  const double d = u * u + ratio * v * v;
  return 2.0 * ratio * u * v / (d * d);
}

ScalarFlux mbl_scalar_flux(double ratio) {
  return {[ratio](double u) { return mbl_flux(u, ratio); },
          [ratio](double u) { return mbl_flux_derivative(u, ratio); }};
}

double flux2d_x(double u) { return mbl_flux(u, 1.0); }

double flux2d_y(double u) {
  const double v = 1.0 - u;
  return mbl_flux(u, 1.0) * (1.0 - 5.0 * v * v);
}

ScalarFlux flux2d_x_scalar() {
  return {flux2d_x, [](double u) { return mbl_flux_derivative(u, 1.0); }};
}

ScalarFlux flux2d_y_scalar() {
  return {flux2d_y, [](double u) {
            const double v = 1.0 - u;
            return mbl_flux_derivative(u, 1.0) * (1.0 - 5.0 * v * v) + mbl_flux(u, 1.0) * 10.0 * v;
          }};
}

double burgers_exact(double x, double t) {
  constexpr double pi = std::numbers::pi;
  if (t < 0.0 || t > 1.0 / pi + 1e-14) throw DomainError("burgers_exact: t outside [0, 1/pi]");
  if (t == 0.0) return std::sin(pi * x);
  auto g = [&](double u) { return u - std::sin(pi * (x - t * u)); };
  double lo = -1.0, hi = 1.0;
  double u = std::sin(pi * x);
  for (int it = 0; it < 200; ++it) {
    const double r = g(u);
    if (std::abs(r) <= 1e-15) return u;
    if (r < 0.0) lo = u; else hi = u;
    const double d = 1.0 + pi * t * std::cos(pi * (x - t * u));
    double next = d > 0.0 ? u - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == u || hi - lo <= 1e-16) return next;
    u = next;
  }
  if (std::abs(g(u)) > 1e-13) throw RootFindError("burgers_exact: no convergence");
  return u;
}

namespace {

BoundaryCondition neumann() { return {BoundaryKind::neumann, {}}; }
BoundaryCondition periodic() { return {BoundaryKind::periodic, {}}; }

ProblemSpec mbl2d(const std::string& name, double tau, double height, bool disk, const ProblemParams& p) {
  ProblemSpec s;
  s.name = name;
  s.dim = 2;
  s.x = {-1.5, 1.5};
  s.y = {-1.5, 1.5};
  s.flux_x = flux2d_x_scalar();
  s.flux_y = flux2d_y_scalar();
  s.epsilon = p.epsilon.value_or(0.01);
  s.tau = p.tau.value_or(tau);
  const double h = p.u_block.value_or(height);
  if (disk)
    s.initial = [h](double x, double y) { return x * x + y * y < 0.5 ? h : 0.0; };
  else
    s.initial = [h](double x, double y) { return x * x < 0.5 && y * y < 0.5 ? h : 0.0; };
  s.boundary = {neumann(), neumann(), neumann(), neumann()};
  return s;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"burgers", "mbl1d", "mbl2d_ex4", "mbl2d_ex5_cyl", "mbl2d_ex5_cube"};
  return names;
}

ProblemSpec make_problem(const std::string& name, const ProblemParams& p) {
  if (name == "burgers") {
    ProblemSpec s;
    s.name = name;
    s.dim = 1;
    s.x = {0.0, 2.0};
    s.flux_x = {[](double u) { return 0.5 * u * u; }, [](double u) { return u; }};
    s.flux_y = zero_flux();
    s.epsilon = p.epsilon.value_or(0.0);
    s.tau = p.tau.value_or(0.0);
    s.initial = [](double x, double) { return std::sin(std::numbers::pi * x); };
    s.boundary = {periodic(), periodic(), neumann(), neumann()};
    return s;
  }
  if (name == "mbl1d") {
    ProblemSpec s;
    s.name = name;
    s.dim = 1;
    s.x = {0.0, 3.0};
    s.flux_x = mbl_scalar_flux(0.5);
    s.flux_y = zero_flux();
    s.epsilon = p.epsilon.value_or(1e-3);
    s.tau = p.tau.value_or(5.0);
    const double h = p.u_block.value_or(0.66);
    s.initial = [h](double x, double) { return x > 0.75 && x < 2.25 ? h : 0.0; };
    s.boundary = {neumann(), neumann(), neumann(), neumann()};
    return s;
  }
  if (name == "mbl2d_ex4") return mbl2d(name, 0.0, 1.0, true, p);
  if (name == "mbl2d_ex5_cyl") return mbl2d(name, 0.5, 0.9, true, p);
  if (name == "mbl2d_ex5_cube") return mbl2d(name, 0.5, 0.9, false, p);
  throw std::invalid_argument("unknown problem '" + name + "'");
}

}  // namespace mble
