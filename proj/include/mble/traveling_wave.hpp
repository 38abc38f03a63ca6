#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mble/problem.hpp"

namespace mble {

/// Shock speed (F(b) - F(a)) / (b - a). Throws DomainError when a == b.
double rh_speed(double a, double b, const ScalarFlux& flux);

/// Tangency point: root in (u0, 1] of F'(u)(u - u0) = F(u) - F(u0).
/// Throws RootFindError if no sign change is found.
double u_alpha(double u0, const ScalarFlux& flux);

/// Inflection point of the flux in (0, 1), located on a dense grid and
/// refined by bisection on a centered second difference.
double inflection_point(const ScalarFlux& flux);

struct ShootingOptions {
  double delta = 1e-7;      ///< offset from the saddle along its unstable direction
  double rel_tol = 1e-10;   ///< integrator tolerance
  double u_tol = 1e-8;      ///< bisection stopping width in the right state
  double span = 1e5;        ///< integration length in scaled units
};

/// Plateau height: the right state u+ > u_alpha for which a traveling wave
/// connects u+ down to u0. Diffusion scales out of the profile ODE, so the
/// result does not depend on it. Throws NoConnectionError when the
/// shooting outcome is the same over the whole bracket.
double plateau_ubar(double tau, double u0, const ScalarFlux& flux, const ShootingOptions& options = {});

/// Root in (u0, ubar) of the chord equality
///   (F(u) - F(u0)) / (u - u0) = (F(ubar) - F(u0)) / (ubar - u0).
double u_lower(double u0, double ubar, const ScalarFlux& flux);

/// Flux of the mirrored problem v = 1 - u: G(v) = F(1) - F(1 - v).
ScalarFlux reflected_flux(const ScalarFlux& flux);

/// Trailing dip left behind a block of height u_block: one minus the
/// plateau of the mirrored problem whose background is 1 - u_block.
double basin_height(double tau, double u_block, const ScalarFlux& flux, const ShootingOptions& options = {});

enum class TwRegion { A1, A2, B, C };
const char* to_string(TwRegion r);

struct WaveSpeed {
  std::string kind;  ///< "lax", "undercompressive" or "rarefaction"
  double left = 0.0;
  double right = 0.0;
  double speed = 0.0;  ///< RH speed; for rarefactions the characteristic speed at the left state
};

/// Plateau data that depends only on (tau, u0).
struct PlateauInfo {
  double tau = 0.0;
  double u0 = 0.0;
  double u_alpha = 0.0;
  std::optional<double> ubar;
  std::optional<double> u_lower;
};

PlateauInfo plateau_info(double tau, double u0, const ScalarFlux& flux, const ShootingOptions& options = {});

struct TwResult {
  TwRegion region = TwRegion::C;
  double u_alpha = 0.0;
  std::optional<double> ubar;
  std::optional<double> u_lower;
  std::vector<WaveSpeed> waves;
};

/// Region of (u_block, tau) for the given background u0.
TwResult classify_region(double u_block, const PlateauInfo& info, const ScalarFlux& flux);
TwResult classify_region(double u_block, double tau, double u0, const ScalarFlux& flux,
                         const ShootingOptions& options = {});

/// Smallest tau with a plateau above u_alpha + 1e-4, by bisection to `tol`
/// over [tau_lo, tau_hi]. Approximate by construction.
double tau_star(double u0, const ScalarFlux& flux, double tau_lo = 0.05, double tau_hi = 20.0,
                double tol = 1e-3, const ShootingOptions& options = {});

}  // namespace mble
