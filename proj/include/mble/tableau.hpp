#pragma once

#include <string>
#include <vector>

namespace mble {

/// Additive Runge-Kutta pair: explicit part (a, b, c) with zero diagonal and
/// diagonally implicit part (ai, bi, ci). Matrices are row-major s x s.
struct ImexTableau {
  std::string name;
  int stages = 0;
  std::vector<double> a, b, c;
  std::vector<double> ai, bi, ci;

  double explicit_a(int i, int j) const { return a[i * stages + j]; }
  double implicit_a(int i, int j) const { return ai[i * stages + j]; }

  /// Three-stage, third-order SSP IMEX pair: the Shu-Osher SSP-RK3 with an
  /// explicit-first-stage SDIRK sharing its weights and abscissae.
  static ImexTableau ssp3_333();
};

/// Residuals of the order conditions up to third order for each part and
/// for the coupling terms of an additive method. All zero for order 3.
struct OrderConditionReport {
  double row_sum = 0.0;   ///< max |c_i - sum_j a_ij| over both parts
  double order1 = 0.0;
  double order2 = 0.0;
  double order3 = 0.0;    ///< includes sum b_i a_ij c_j and mixed coupling terms
  double max() const;
};

OrderConditionReport check_order_conditions(const ImexTableau& t);

}  // namespace mble
