#include "mble/limiters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mble {

const char* to_string(LimiterKind kind) {
  switch (kind) {
    case LimiterKind::none: return "none";
    case LimiterKind::minmod_tvb: return "tvb";
    case LimiterKind::weno: return "weno";
    case LimiterKind::moe: return "moe";
  }
  return "none";
}

LimiterKind parse_limiter_kind(const std::string& name) {
  if (name == "none") return LimiterKind::none;
  if (name == "tvb" || name == "minmod_tvb") return LimiterKind::minmod_tvb;
  if (name == "weno") return LimiterKind::weno;
  if (name == "moe") return LimiterKind::moe;
  throw std::invalid_argument("unknown limiter '" + name + "' (expected none, tvb, weno, moe)");
}

void LimiterConfig::validate() const {
  if (!(m_tvb >= 0.0)) throw std::invalid_argument("limiter: M_TVB must be >= 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("limiter: alpha must be >= 0");
  if (!(weno_eps0 > 0.0) || !(moe_eps1 > 0.0) || !(detector_rel_tol > 0.0) || !(weno_power > 0.0))
    throw std::invalid_argument("limiter: tolerances must be positive");
  if (!(weno_gamma_neighbor > 0.0) || !(4.0 * weno_gamma_neighbor < 1.0))
    throw std::invalid_argument("limiter: linear weights must be positive and sum to one");
  if (!(moe_cutoff > 0.0)) throw std::invalid_argument("limiter: cut-off divisor must be positive");
}

double minmod(std::span<const double> args) {
  if (args.empty()) throw std::invalid_argument("minmod: no arguments");
  const bool all_pos = std::all_of(args.begin(), args.end(), [](double a) { return a > 0.0; });
  const bool all_neg = std::all_of(args.begin(), args.end(), [](double a) { return a < 0.0; });
  if (all_pos) return *std::min_element(args.begin(), args.end());
  if (all_neg) return *std::max_element(args.begin(), args.end());
  return 0.0;
}

double minmod(std::initializer_list<double> args) {
  return minmod(std::span<const double>(args.begin(), args.size()));
}

double minmod_tvb(std::span<const double> args, double m_tvb, double h) {
  if (args.empty()) throw std::invalid_argument("minmod_tvb: no arguments");
  if (std::abs(args[0]) <= m_tvb * h * h) return args[0];
  return minmod(args);
}

double minmod_tvb(std::initializer_list<double> args, double m_tvb, double h) {
  return minmod_tvb(std::span<const double>(args.begin(), args.size()), m_tvb, h);
}

double moe_cutoff(double s, double divisor) { return std::min(s / divisor, 1.0); }

namespace {

Side lower_side(int axis) { return axis == 0 ? Side::x_lo : Side::y_lo; }
Side upper_side(int axis) { return axis == 0 ? Side::x_hi : Side::y_hi; }

int degree_along(const MultiIndex& m, int axis) { return axis == 0 ? m.x : m.y; }
int degree_across(const MultiIndex& m, int axis) { return axis == 0 ? m.y : m.x; }

// Face-averaged traces of the cell polynomial on the lower and upper faces
// of `axis`. Only modes constant across the face contribute.
std::array<double, 2> face_mean_traces(const ReferenceBasis& basis, std::span<const double> u, int axis) {
  double lo = 0.0, hi = 0.0;
  for (int l = 0; l < basis.size(); ++l) {
    const MultiIndex& m = basis.index(l);
    if (degree_across(m, axis) != 0) continue;
    const int d = degree_along(m, axis);
    lo += u[l] * legendre(d, 0.0);
    hi += u[l] * legendre(d, 1.0);
  }
  return {lo, hi};
}

struct AxisDifferences {
  double forward = 0.0;   // u(x_{i+1/2}^-) - mean
  double backward = 0.0;  // mean - u(x_{i-1/2}^+)
  std::vector<double> half_deltas;
};

AxisDifferences axis_differences(const DGSolution& snapshot, std::span<const double> u, int cell, int axis) {
  const UniformMesh& mesh = snapshot.space().mesh();
  const auto tr = face_mean_traces(snapshot.space().basis(), u, axis);
  AxisDifferences d;
  d.forward = tr[1] - u[0];
  d.backward = u[0] - tr[0];
  const double mean = snapshot.cell(cell)[0];
  if (auto n = mesh.neighbor(cell, upper_side(axis))) d.half_deltas.push_back(0.5 * (snapshot.cell(*n)[0] - mean));
  if (auto n = mesh.neighbor(cell, lower_side(axis))) d.half_deltas.push_back(0.5 * (mean - snapshot.cell(*n)[0]));
  return d;
}

std::vector<double> with_first(double first, const std::vector<double>& rest) {
  std::vector<double> v;
  v.reserve(rest.size() + 1);
  v.push_back(first);
  v.insert(v.end(), rest.begin(), rest.end());
  return v;
}

bool differs(double a, double b, double scale, double rel_tol) { return std::abs(a - b) > rel_tol * scale; }

double difference_scale(const AxisDifferences& d) {
  double s = std::max(std::abs(d.forward), std::abs(d.backward));
  for (double v : d.half_deltas) s = std::max(s, std::abs(v));
  return s;
}

// Per-axis minmod-TVB pass on a working cell polynomial.
void tvb_axis(const DGSolution& snapshot, int cell, int axis, const LimiterConfig& cfg, std::span<double> u) {
  const ReferenceBasis& basis = snapshot.space().basis();
  const int k = basis.degree();
  const double h = snapshot.space().mesh().spacing(axis);
  const AxisDifferences d = axis_differences(snapshot, u, cell, axis);
  const double fwd = minmod_tvb(with_first(d.forward, d.half_deltas), cfg.m_tvb, h);
  const double bwd = minmod_tvb(with_first(d.backward, d.half_deltas), cfg.m_tvb, h);
  const double scale = difference_scale(d);
  if (!differs(fwd, d.forward, scale, cfg.detector_rel_tol) && !differs(bwd, d.backward, scale, cfg.detector_rel_tol))
    return;
  static const double s3 = std::sqrt(3.0);
  if (k == 1) {
    for (int l = 1; l < basis.size(); ++l) {
      const MultiIndex& m = basis.index(l);
      if (degree_across(m, axis) == 0 && degree_along(m, axis) == 1) u[l] = 0.5 * (fwd + bwd) / s3;
    }
    return;
  }
  // k >= 2: reduce to the P1 projection, then limit its slope along the axis.
  for (int l = 1; l < basis.size(); ++l) {
    const MultiIndex& m = basis.index(l);
    if (m.x + m.y > 1) u[l] = 0.0;
  }
  for (int l = 1; l < basis.size(); ++l) {
    const MultiIndex& m = basis.index(l);
    if (m.x + m.y == 1 && degree_along(m, axis) == 1) {
      const double slope = minmod_tvb(with_first(s3 * u[l], d.half_deltas), cfg.m_tvb, h);
      u[l] = slope / s3;
    }
  }
}

// Precomputed per-space data shared by WENO and moment limiting.
struct LimiterTables {
  // WENO
  std::vector<std::array<int, 2>> offsets;
  std::vector<Side> offset_sides;
  std::vector<std::vector<double>> shifts;
  std::vector<MultiIndex> derivative_orders;
  std::vector<double> derivative_scale;
  std::vector<std::vector<double>> dtab;  // [order][q*nb + l]
  std::vector<double> dweights;
  // Moment limiter point set
  std::vector<std::vector<double>> xtab;  // [point][l]
};

LimiterTables build_tables(const DGSpace& space, bool weno, bool moe) {
  LimiterTables t;
  const ReferenceBasis& basis = space.basis();
  const int nb = basis.size();
  const int k = basis.degree();
  const UniformMesh& mesh = space.mesh();
  if (weno) {
    for (int axis = 0; axis < space.dim(); ++axis) {
      std::array<int, 2> lo{0, 0}, hi{0, 0};
      lo[axis] = 1;   // lower neighbor: its coordinate is the target's plus one
      hi[axis] = -1;
      t.offsets.push_back(lo);
      t.offset_sides.push_back(lower_side(axis));
      t.offsets.push_back(hi);
      t.offset_sides.push_back(upper_side(axis));
    }
    for (const auto& o : t.offsets) t.shifts.push_back(shift_matrix(space, o));
    const auto pts = space.volume_points(k + 1);
    for (const RefPoint& p : pts) t.dweights.push_back(p.weight);
    const double vol = mesh.cell_volume();
    for (int b = 0; b <= (space.dim() == 2 ? k : 0); ++b)
      for (int a = 0; a + b <= k; ++a) {
        if (a + b == 0) continue;
        t.derivative_orders.push_back({a, b});
        double scale;
        if (space.dim() == 1) {
          scale = std::pow(vol, 2 * a - 1) * vol * std::pow(mesh.dx(), -2.0 * a);
        } else {
          scale = std::pow(vol, a + b - 1) * vol * std::pow(mesh.dx(), -2.0 * a) * std::pow(mesh.dy(), -2.0 * b);
        }
        t.derivative_scale.push_back(scale);
        std::vector<double> tab(pts.size() * nb);
        for (std::size_t q = 0; q < pts.size(); ++q)
          for (int l = 0; l < nb; ++l) tab[q * nb + l] = basis.derivative(l, a, b, pts[q].xi, pts[q].eta);
        t.dtab.push_back(std::move(tab));
      }
  }
  if (moe) {
    std::vector<RefPoint> pts = space.volume_points(k + 1);
    for (int s = 0; s < 2 * space.dim(); ++s) {
      const auto f = space.face_points(static_cast<Side>(s), k + 1);
      pts.insert(pts.end(), f.begin(), f.end());
    }
    if (space.dim() == 2)
      for (double x : {0.0, 1.0})
        for (double y : {0.0, 1.0}) pts.push_back({x, y, 0.0});
    for (const RefPoint& p : pts) {
      std::vector<double> row(nb);
      for (int l = 0; l < nb; ++l) row[l] = basis.eval(l, p.xi, p.eta);
      t.xtab.push_back(std::move(row));
    }
  }
  return t;
}

double smoothness(const LimiterTables& t, std::span<const double> p) {
  const int nb = static_cast<int>(p.size());
  double beta = 0.0;
  for (std::size_t o = 0; o < t.dtab.size(); ++o) {
    double s = 0.0;
    for (std::size_t q = 0; q < t.dweights.size(); ++q) {
      double d = 0.0;
      for (int l = 0; l < nb; ++l) d += p[l] * t.dtab[o][q * nb + l];
      s += t.dweights[q] * d * d;
    }
    beta += t.derivative_scale[o] * s;
  }
  return beta;
}

void weno_cell(const DGSolution& snapshot, const LimiterTables& t, int cell, const LimiterConfig& cfg,
               std::span<double> out) {
  const UniformMesh& mesh = snapshot.space().mesh();
  const int nb = snapshot.space().dofs_per_cell();
  const auto own = snapshot.cell(cell);
  const double mean = own[0];
  std::vector<std::vector<double>> cand;
  cand.emplace_back(own.begin(), own.end());
  for (std::size_t o = 0; o < t.offsets.size(); ++o) {
    const auto n = mesh.neighbor(cell, t.offset_sides[o]);
    if (!n) continue;
    const auto un = snapshot.cell(*n);
    std::vector<double> q(nb, 0.0);
    for (int m = 0; m < nb; ++m)
      for (int l = 0; l < nb; ++l) q[m] += t.shifts[o][m * nb + l] * un[l];
    q[0] = mean;
    cand.push_back(std::move(q));
  }
  std::vector<double> gamma(cand.size(), cfg.weno_gamma_neighbor);
  gamma[0] = 1.0 - cfg.weno_gamma_neighbor * static_cast<double>(t.offsets.size());
  std::vector<double> beta(cand.size());
  for (std::size_t j = 0; j < cand.size(); ++j) beta[j] = smoothness(t, cand[j]);
  const auto w = weno_weights(gamma, beta, cfg.weno_eps0, cfg.weno_power);
  for (int l = 0; l < nb; ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j < cand.size(); ++j) s += w[j] * cand[j][l];
    out[l] = s;
  }
  out[0] = mean;
}

CellExtrema extrema_with(const DGSolution& sol, const LimiterTables& t) {
  const int n = sol.space().mesh().cell_count();
  const int nb = sol.space().dofs_per_cell();
  CellExtrema e;
  e.max.resize(n);
  e.min.resize(n);
  for (int c = 0; c < n; ++c) {
    const auto u = sol.cell(c);
    double hi = -INFINITY, lo = INFINITY;
    for (const auto& row : t.xtab) {
      double v = 0.0;
      for (int l = 0; l < nb; ++l) v += u[l] * row[l];
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    e.max[c] = hi;
    e.min[c] = lo;
  }
  return e;
}

std::vector<int> moe_neighbors(const UniformMesh& mesh, int cell) {
  std::vector<int> n;
  for (int s = 0; s < 2 * mesh.dim(); ++s)
    if (auto c = mesh.neighbor(cell, static_cast<Side>(s))) n.push_back(*c);
  if (mesh.dim() == 2)
    for (Side sx : {Side::x_lo, Side::x_hi})
      if (auto cx = mesh.neighbor(cell, sx))
        for (Side sy : {Side::y_lo, Side::y_hi})
          if (auto cxy = mesh.neighbor(*cx, sy)) n.push_back(*cxy);
  return n;
}

}  // namespace

std::vector<int> detect_troubled(const DGSolution& sol, double rel_tol) {
  std::vector<int> flagged;
  const UniformMesh& mesh = sol.space().mesh();
  // Round-off in a flat background must not trip the test, so the local
  // scale is floored by the largest cell average.
  double floor = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) floor = std::max(floor, std::abs(sol.cell(c)[0]));
  for (int c = 0; c < mesh.cell_count(); ++c) {
    bool hit = false;
    for (int axis = 0; axis < mesh.dim() && !hit; ++axis) {
      const AxisDifferences d = axis_differences(sol, sol.cell(c), c, axis);
      const double scale = std::max(difference_scale(d), floor);
      if (scale == 0.0) continue;
      const double f = minmod(with_first(d.forward, d.half_deltas));
      const double b = minmod(with_first(d.backward, d.half_deltas));
      hit = differs(f, d.forward, scale, rel_tol) || differs(b, d.backward, scale, rel_tol);
    }
    if (hit) flagged.push_back(c);
  }
  return flagged;
}

void limit_minmod_tvb(const DGSolution& snapshot, int cell, const LimiterConfig& config, std::span<double> out) {
  const auto own = snapshot.cell(cell);
  std::copy(own.begin(), own.end(), out.begin());
  for (int axis = 0; axis < snapshot.space().dim(); ++axis) tvb_axis(snapshot, cell, axis, config, out);
  out[0] = own[0];
}

std::vector<double> weno_weights(std::span<const double> gamma, std::span<const double> beta, double eps0,
                                 double power) {
  if (gamma.size() != beta.size()) throw std::invalid_argument("weno_weights: size mismatch");
  std::vector<double> w(gamma.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = gamma[j] / std::pow(eps0 + beta[j], power);
    sum += w[j];
  }
  for (double& v : w) v /= sum;
  return w;
}

void limit_weno(const DGSolution& snapshot, int cell, const LimiterConfig& config, std::span<double> out) {
  const LimiterTables t = build_tables(snapshot.space(), true, false);
  weno_cell(snapshot, t, cell, config, out);
}

CellExtrema compute_cell_extrema(const DGSolution& sol) {
  return extrema_with(sol, build_tables(sol.space(), false, true));
}

double moe_theta(const DGSolution& snapshot, const CellExtrema& extrema, int cell, const LimiterConfig& cfg) {
  const UniformMesh& mesh = snapshot.space().mesh();
  const double mean = snapshot.cell(cell)[0];
  const double h = mesh.dim() == 1 ? mesh.dx() : std::max(mesh.dx(), mesh.dy());
  const double tol = cfg.alpha * std::pow(h, cfg.alpha_exponent);
  double upper = mean + tol;
  double lower = mean - tol;
  for (int n : moe_neighbors(mesh, cell)) {
    upper = std::max(upper, extrema.max[n]);
    lower = std::min(lower, extrema.min[n]);
  }
  const double theta_max = moe_cutoff((upper - mean) / (extrema.max[cell] - mean + cfg.moe_eps1), cfg.moe_cutoff);
  const double theta_min = moe_cutoff((lower - mean) / (extrema.min[cell] - mean - cfg.moe_eps1), cfg.moe_cutoff);
  return std::clamp(std::min({1.0, theta_min, theta_max}), 0.0, 1.0);
}

void limit_moe(const DGSolution& snapshot, const CellExtrema& extrema, int cell, const LimiterConfig& config,
               std::span<double> out) {
  const double theta = moe_theta(snapshot, extrema, cell, config);
  const auto own = snapshot.cell(cell);
  out[0] = own[0];
  for (std::size_t l = 1; l < own.size(); ++l) out[l] = theta * own[l];
}

std::size_t apply_limiter(DGSolution& sol, const LimiterConfig& config) {
  if (config.kind == LimiterKind::none) return 0;
  config.validate();
  const DGSolution snapshot = sol;
  const std::vector<int> troubled = detect_troubled(snapshot, config.detector_rel_tol);
  if (troubled.empty()) return 0;
  switch (config.kind) {
    case LimiterKind::minmod_tvb:
      for (int c : troubled) limit_minmod_tvb(snapshot, c, config, sol.cell(c));
      break;
    case LimiterKind::weno: {
      const LimiterTables t = build_tables(sol.space(), true, false);
      for (int c : troubled) weno_cell(snapshot, t, c, config, sol.cell(c));
      break;
    }
    case LimiterKind::moe: {
      const LimiterTables t = build_tables(sol.space(), false, true);
      const CellExtrema e = extrema_with(snapshot, t);
      for (int c : troubled) limit_moe(snapshot, e, c, config, sol.cell(c));
      break;
    }
    case LimiterKind::none:
      break;
  }
  return troubled.size();
}

std::vector<double> shift_matrix(const DGSpace& space, std::array<int, 2> offset) {
  const ReferenceBasis& basis = space.basis();
  const int nb = basis.size();
  const auto pts = space.volume_points(basis.degree() + 1);
  std::vector<double> s(nb * nb, 0.0);
  for (const RefPoint& p : pts)
    for (int m = 0; m < nb; ++m) {
      const double target = basis.eval(m, p.xi, p.eta);
      for (int l = 0; l < nb; ++l)
        s[m * nb + l] += p.weight * target * basis.eval(l, p.xi + offset[0], p.eta + offset[1]);
    }
  return s;
}

}  // namespace mble
