#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mble/space.hpp"

namespace mble {

/// Piecewise polynomial u_h stored as modal coefficients, cell-major.
class DGSolution {
 public:
  explicit DGSolution(SpacePtr space, double time = 0.0);

  const DGSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  std::vector<double>& coefficients() { return coeffs_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  std::span<double> cell(int c);
  std::span<const double> cell(int c) const;

  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  /// u_h at a reference point of a cell.
  double evaluate(int c, double xi, double eta = 0.5) const;
  /// u_h at a physical point (positive-side rule on cell boundaries).
  double value_at(double x, double y = 0.0) const;

 private:
  SpacePtr space_;
  std::vector<double> coeffs_;
  double time_;
};

using ScalarField = std::function<double(double x, double y)>;

/// L2 projection of f onto the space, per cell, with a tensor Gauss rule of
/// `points_per_axis` points (default: the space's k+1 rule).
DGSolution project(const SpacePtr& space, const ScalarField& f, int points_per_axis = 0);

/// Leading modal coefficient; equals the mean of u_h over the cell.
double cell_average(const DGSolution& sol, int cell);

/// Integral of u_h over the domain.
double total_mass(const DGSolution& sol);

/// L2 distance between u_h and f using `points_per_axis` Gauss points per axis.
double l2_error(const DGSolution& sol, const ScalarField& f, int points_per_axis);

}  // namespace mble
