#pragma once

#include <array>
#include <span>
#include <vector>

#include "mble/problem.hpp"
#include "mble/solution.hpp"
#include "mble/sparse.hpp"

namespace mble {

/// Which faces carry the consistency/symmetry/penalty terms of a diffusion form.
enum class FaceSelection {
  interior,                ///< A_diff,1: interior (incl. periodic) faces
  interior_and_dirichlet,  ///< A_diff,2: interior plus Dirichlet faces
};

/// Interior penalty sigma = k(k+1)|e|/|E|; interior faces take the mean of
/// the two adjacent cells' values. |e| = 1 in 1D.
double penalty_sigma(const UniformMesh& mesh, const Face& face, int degree);

/// Symmetric interior penalty form
///   sum_E int_E grad u . grad phi - sum_e int_e {grad u . n}[phi]
///   - sum_e int_e {grad phi . n}[u] + sum_e sigma int_e [u][phi]
/// over the selected faces. Neumann faces carry no face terms.
SparseMatrix assemble_diffusion(const DGSpace& space, const ProblemSpec& problem, FaceSelection faces);

/// Block-diagonal mass matrix.
SparseMatrix assemble_mass(const DGSpace& space);

/// Time-independent matrices of the semi-discrete system
///   W u' = -A_adv(u) - eps A2 u + r(t),  W = M + tau eps^2 A1.
struct AssembledOperators {
  SparseMatrix mass;
  SparseMatrix a1;
  SparseMatrix a2;
  SparseMatrix w;
};

AssembledOperators assemble_operators(const DGSpace& space, const ProblemSpec& problem);

/// Local Lax-Friedrichs flux n.v* for normal n. The dissipation constant is
/// the max of |n.v'| over 66 uniform samples of [min(u-,u+), max(u-,u+)].
/// Throws std::invalid_argument on non-finite states.
double llf_flux(double u_minus, double u_plus, std::array<double, 2> normal, const ScalarFlux& fx,
                const ScalarFlux& fy);

/// Max of |n.v'(u)| over 66 uniform samples of [lo, hi], endpoints included.
double max_wave_speed(double lo, double hi, std::array<double, 2> normal, const ScalarFlux& fx,
                      const ScalarFlux& fy);

/// Vector of A_adv(u_h, psi_l) for all cells and modes:
///   -int_E v(u_h).grad phi + int_e v*(u-,u+) [phi].
/// Dirichlet faces use u^D(t) as the exterior state, Neumann faces mirror
/// the interior trace.
void advection_residual(const DGSolution& sol, const ProblemSpec& problem, double t,
                        std::span<double> out);

/// Diffusive Dirichlet load eps * sum_{Gamma_D} int_e u^D (sigma phi - grad phi . n).
/// The advective Dirichlet term is carried by advection_residual through
/// the LLF flux with u^D as exterior state. Zero when no Dirichlet faces exist.
std::vector<double> boundary_rhs(const DGSpace& space, const ProblemSpec& problem, double t);

/// Net advective flux through the domain boundary, sum_e int_e v*.n ds.
double boundary_outflow(const DGSolution& sol, const ProblemSpec& problem, double t);

}  // namespace mble
