#pragma once

#include <span>

#include "mble/sparse.hpp"

namespace mble {

struct CgOptions {
  double rel_tol = 1e-12;
  int max_iter = 0;  ///< 0 selects 10*n
  bool jacobi = true;
};

struct CgResult {
  int iterations = 0;
  double residual_norm = 0.0;  ///< true residual ||b - Ax||_2 at exit
  double rhs_norm = 0.0;
};

/// Preconditioned conjugate gradients for SPD A. `x` holds the initial
/// guess on entry and the solution on exit; on return
/// ||b - Ax|| <= rel_tol ||b|| holds for the recomputed residual.
///
/// Throws SolverError when max_iter is exhausted and MatrixPropertyError
/// on non-positive curvature p^T A p <= 0.
CgResult cg_solve(const SparseMatrix& A, std::span<const double> b, std::span<double> x,
                  const CgOptions& options = {});

}  // namespace mble
