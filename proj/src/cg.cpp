#include "mble/cg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mble/errors.hpp"

namespace mble {

namespace {
double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}
}  // namespace

CgResult cg_solve(const SparseMatrix& A, std::span<const double> b, std::span<double> x,
                  const CgOptions& options) {
  const int n = A.size();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x.size()) != n)
    throw std::invalid_argument("cg_solve: dimension mismatch");
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("cg_solve: rel_tol must be positive");
  const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * std::max(n, 1);

  CgResult result;
  result.rhs_norm = std::sqrt(dot(b, b));
  if (!std::isfinite(result.rhs_norm)) throw SolverError("cg_solve: non-finite right-hand side", result.rhs_norm);
  if (result.rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return result;
  }
  const double target = options.rel_tol * result.rhs_norm;

  std::vector<double> inv_diag(n, 1.0);
  if (options.jacobi) {
    const auto d = A.diagonal();
    for (int i = 0; i < n; ++i) {
      if (!(d[i] > 0.0)) throw MatrixPropertyError("cg_solve: non-positive diagonal entry");
      inv_diag[i] = 1.0 / d[i];
    }
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  auto true_residual = [&] {
    A.multiply(x, ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    return std::sqrt(dot(r, r));
  };

  double rnorm = true_residual();
  int it = 0;
  while (rnorm > target) {
    // (Re)start from the true residual so the exit test is honest.
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);
    bool converged = false;
    while (it < max_iter) {
      A.multiply(p, ap);
      const double curv = dot(p, ap);
      if (!(curv > 0.0)) throw MatrixPropertyError("cg_solve: non-positive curvature, matrix is not SPD");
      const double alpha = rz / curv;
      for (int i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      ++it;
      if (std::sqrt(dot(r, r)) <= target) {
        converged = true;
        break;
      }
      for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rnorm = true_residual();
    if (!converged || (rnorm > target && it >= max_iter)) {
      if (rnorm <= target) break;
      std::ostringstream os;
      os << "cg_solve: no convergence after " << it << " iterations, relative residual "
         << rnorm / result.rhs_norm;
      throw SolverError(os.str(), rnorm);
    }
  }
  result.iterations = it;
  result.residual_norm = rnorm;
  return result;
}

}  // namespace mble
