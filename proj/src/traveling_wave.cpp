#include "mble/traveling_wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mble/errors.hpp"

namespace mble {

double rh_speed(double a, double b, const ScalarFlux& flux) {
  if (a == b) throw DomainError("rh_speed: degenerate jump");
  return (flux(b) - flux(a)) / (b - a);
}

namespace {

constexpr int scan_points = 10000;

// Bisection on a bracket [a, b] with f(a), f(b) of opposite sign.
template <class Fn>
double bisect(Fn&& f, double a, double b, double tol) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// First sign change of f on a uniform grid over [a, b], refined by bisection.
template <class Fn>
std::optional<double> first_root(Fn&& f, double a, double b, double tol) {
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= scan_points; ++i) {
    const double x1 = a + (b - a) * i / scan_points;
    const double f1 = f(x1);
    if (f1 == 0.0) return x1;
    if ((f0 < 0.0) != (f1 < 0.0)) return bisect(f, x0, x1, tol);
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

}  // namespace

double u_alpha(double u0, const ScalarFlux& flux) {
  const double f0 = flux(u0);
  auto g = [&](double u) { return flux.speed(u) * (u - u0) - (flux(u) - f0); };
  const double start = u0 + (1.0 - u0) / scan_points;
  auto r = first_root(g, start, 1.0, 1e-15);
  if (!r) throw RootFindError("u_alpha: no tangency point in (u0, 1]");
  return *r;
}

double inflection_point(const ScalarFlux& flux) {
  auto second = [&](double u) {
    const double h = 1e-4;
    return (flux.speed(u + h) - flux.speed(u - h)) / (2.0 * h);
  };
  auto r = first_root(second, 1e-3, 1.0 - 1e-3, 1e-12);
  if (!r) throw RootFindError("inflection_point: flux has no inflection in (0, 1)");
  return *r;
}

namespace {

enum class Outcome { crosses, turns, none };

// Profile ODE in diffusion-scaled units: u' = w, tau s w' = w + phi(u).
Outcome shoot(double tau, double u0, double up, const ScalarFlux& flux, const ShootingOptions& opt) {
  const double f0 = flux(u0);
  const double s = rh_speed(u0, up, flux);
  auto phi = [&](double u) { return s * (u - u0) - (flux(u) - f0); };
  const double ts = tau * s;
  const double dphi = s - flux.speed(up);
  const double disc = 1.0 + 4.0 * ts * dphi;
  if (!(disc >= 0.0) || !(ts > 0.0)) return Outcome::none;
  const double lambda = (1.0 + std::sqrt(disc)) / (2.0 * ts);

  using State = std::array<double, 2>;
  auto rhs = [&](const State& y) -> State { return {y[1], (y[1] + phi(y[0])) / ts}; };

  // Dormand-Prince 5(4).
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  State y{up - opt.delta, -lambda * opt.delta};
  double t = 0.0;
  double h = 1e-3 / std::max(lambda, 1e-12);
  State k1 = rhs(y);
  const double atol = 1e-14;
  for (long n = 0; n < 5'000'000 && t < opt.span; ++n) {
    auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      State r = y;
      for (const auto& [c, k] : terms)
        for (int i = 0; i < 2; ++i) r[i] += h * c * (*k)[i];
      return r;
    };
    const State k2 = rhs(axpy({{a21, &k1}}));
    const State k3 = rhs(axpy({{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State yn = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(yn);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(yn[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      t += h;
      y = yn;
      k1 = k7;
      if (y[0] < u0) return Outcome::crosses;
      if (y[1] >= 0.0) return Outcome::turns;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return Outcome::none;
}

}  // namespace

double plateau_ubar(double tau, double u0, const ScalarFlux& flux, const ShootingOptions& options) {
  if (!(tau > 0.0)) throw NoConnectionError("plateau_ubar: no plateau for tau <= 0");
  const double ua = u_alpha(u0, flux);
  double lo = ua + 1e-5, hi = 1.0 - 1e-5;
  if (!(lo < hi)) throw NoConnectionError("plateau_ubar: empty bracket above u_alpha");
  const Outcome olo = shoot(tau, u0, lo, flux, options);
  const Outcome ohi = shoot(tau, u0, hi, flux, options);
  if (olo == ohi) throw NoConnectionError("plateau_ubar: shooting outcome does not switch in (u_alpha, 1)");
  while (hi - lo > options.u_tol) {
    const double m = 0.5 * (lo + hi);
    if (shoot(tau, u0, m, flux, options) == olo)
      lo = m;
    else
      hi = m;
  }
  return 0.5 * (lo + hi);
}

double u_lower(double u0, double ubar, const ScalarFlux& flux) {
  const double f0 = flux(u0);
  const double target = (flux(ubar) - f0) / (ubar - u0);
  auto h = [&](double u) { return (flux(u) - f0) / (u - u0) - target; };
  auto r = first_root(h, u0 + 1e-9, ubar - 1e-9, 1e-14);
  if (!r) throw RootFindError("u_lower: chord equality has no root in (u0, ubar)");
  return *r;
}

ScalarFlux reflected_flux(const ScalarFlux& flux) {
  const double top = flux(1.0);
  return {[flux, top](double v) { return top - flux(1.0 - v); },
          [flux](double v) { return flux.speed(1.0 - v); }};
}

double basin_height(double tau, double u_block, const ScalarFlux& flux, const ShootingOptions& options) {
  return 1.0 - plateau_ubar(tau, 1.0 - u_block, reflected_flux(flux), options);
}

const char* to_string(TwRegion r) {
  switch (r) {
    case TwRegion::A1: return "A1";
    case TwRegion::A2: return "A2";
    case TwRegion::B: return "B";
    case TwRegion::C: return "C";
  }
  return "C";
}

PlateauInfo plateau_info(double tau, double u0, const ScalarFlux& flux, const ShootingOptions& options) {
  PlateauInfo info;
  info.tau = tau;
  info.u0 = u0;
  info.u_alpha = u_alpha(u0, flux);
  try {
    const double ub = plateau_ubar(tau, u0, flux, options);
    if (ub > info.u_alpha + 1e-4) {
      info.ubar = ub;
      info.u_lower = u_lower(u0, ub, flux);
    }
  } catch (const NoConnectionError&) {
  }
  return info;
}

TwResult classify_region(double u_block, const PlateauInfo& info, const ScalarFlux& flux) {
  if (!(u_block > info.u0)) throw DomainError("classify_region: block state must exceed the background");
  TwResult r;
  r.u_alpha = info.u_alpha;
  r.ubar = info.ubar;
  r.u_lower = info.u_lower;
  const double u0 = info.u0;
  if (!info.ubar) {
    if (u_block > info.u_alpha) {
      r.region = TwRegion::A1;
      r.waves.push_back({"rarefaction", u_block, info.u_alpha, flux.speed(u_block)});
      r.waves.push_back({"lax", info.u_alpha, u0, rh_speed(u0, info.u_alpha, flux)});
    } else {
      r.region = TwRegion::C;
      r.waves.push_back({"lax", u_block, u0, rh_speed(u0, u_block, flux)});
    }
    return r;
  }
  const double ub = *info.ubar;
  if (u_block > ub) {
    r.region = TwRegion::A2;
    r.waves.push_back({"rarefaction", u_block, ub, flux.speed(u_block)});
    r.waves.push_back({"undercompressive", ub, u0, rh_speed(u0, ub, flux)});
  } else if (u_block > *info.u_lower) {
    r.region = TwRegion::B;
    if (u_block < ub) r.waves.push_back({"lax", u_block, ub, rh_speed(u_block, ub, flux)});
    r.waves.push_back({"undercompressive", ub, u0, rh_speed(u0, ub, flux)});
  } else {
    r.region = TwRegion::C;
    r.waves.push_back({"lax", u_block, u0, rh_speed(u0, u_block, flux)});
  }
  return r;
}

TwResult classify_region(double u_block, double tau, double u0, const ScalarFlux& flux,
                         const ShootingOptions& options) {
  return classify_region(u_block, plateau_info(tau, u0, flux, options), flux);
}

double tau_star(double u0, const ScalarFlux& flux, double tau_lo, double tau_hi, double tol,
                const ShootingOptions& options) {
  auto has_plateau = [&](double tau) { return plateau_info(tau, u0, flux, options).ubar.has_value(); };
  const bool plo = has_plateau(tau_lo);
  const bool phi = has_plateau(tau_hi);
  if (plo == phi) throw RootFindError("tau_star: plateau predicate does not switch in the search range");
  while (tau_hi - tau_lo > tol) {
    const double m = 0.5 * (tau_lo + tau_hi);
    if (has_plateau(m) == plo)
      tau_lo = m;
    else
      tau_hi = m;
  }
  return 0.5 * (tau_lo + tau_hi);
}

}  // namespace mble
