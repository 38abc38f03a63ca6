#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mble/solution.hpp"

namespace mble {

enum class LimiterKind { none, minmod_tvb, weno, moe };

const char* to_string(LimiterKind kind);
/// Parses "none", "tvb"/"minmod_tvb", "weno", "moe"; throws std::invalid_argument.
LimiterKind parse_limiter_kind(const std::string& name);

struct LimiterConfig {
  LimiterKind kind = LimiterKind::none;
  double m_tvb = 0.0;            ///< TVB constant; threshold M h^2
  double alpha = 0.0;            ///< Moe tolerance alpha(h) = alpha h^alpha_exponent
  double alpha_exponent = 1.5;
  double weno_eps0 = 1e-6;
  double weno_power = 2.0;
  double weno_gamma_neighbor = 0.001;  ///< per-neighbor linear weight; the cell keeps the rest
  double moe_eps1 = 1e-6;
  double moe_cutoff = 1.1;
  double detector_rel_tol = 1e-13;

  /// Throws std::invalid_argument on negative constants or non-positive tolerances.
  void validate() const;
};

/// min if all positive, max if all negative, otherwise 0.
double minmod(std::span<const double> args);
double minmod(std::initializer_list<double> args);

/// First argument when |a1| <= M h^2, otherwise minmod of all.
double minmod_tvb(std::span<const double> args, double m_tvb, double h);
double minmod_tvb(std::initializer_list<double> args, double m_tvb, double h);

/// Cut-off min(s / divisor, 1).
double moe_cutoff(double s, double divisor = 1.1);

/// Cells where the M=0 minmod of (trace difference, half neighbor
/// differences) changes the trace difference, per axis. Changes are
/// measured relative to the larger of the local differences and the
/// largest cell average of the field.
std::vector<int> detect_troubled(const DGSolution& sol, double rel_tol = 1e-13);

/// Minmod-TVB reconstruction of one cell from a pre-limit snapshot. For
/// k >= 2 a modified cell is replaced by its limited P1 projection.
void limit_minmod_tvb(const DGSolution& snapshot, int cell, const LimiterConfig& config,
                      std::span<double> out);

/// Simple WENO reconstruction of one cell from a pre-limit snapshot.
void limit_weno(const DGSolution& snapshot, int cell, const LimiterConfig& config, std::span<double> out);

/// Nonlinear WENO weights from linear weights and smoothness indicators.
std::vector<double> weno_weights(std::span<const double> gamma, std::span<const double> beta, double eps0,
                                 double power);

/// Per-cell extrema of u_h over the moment-limiter point set (volume Gauss
/// points, face Gauss points, corners).
struct CellExtrema {
  std::vector<double> max, min;
};
CellExtrema compute_cell_extrema(const DGSolution& sol);

/// Rescaling factor theta in [0,1] of the moment limiter for one cell.
double moe_theta(const DGSolution& snapshot, const CellExtrema& extrema, int cell, const LimiterConfig& config);

/// Moment-limiter rescaling of one cell about its average.
void limit_moe(const DGSolution& snapshot, const CellExtrema& extrema, int cell, const LimiterConfig& config,
               std::span<double> out);

/// Detect, then limit flagged cells against a frozen copy of the input.
/// Returns the number of troubled cells.
std::size_t apply_limiter(DGSolution& sol, const LimiterConfig& config);

/// L2-orthogonal re-expansion of a neighbor's polynomial, extended by
/// shifting the reference coordinate by `offset` cells, onto the basis of
/// the target cell. Row-major nb x nb: target = S * neighbor.
std::vector<double> shift_matrix(const DGSpace& space, std::array<int, 2> offset);

}  // namespace mble
