#pragma once

#include <array>
#include <string>
#include <vector>

#include "mble/solution.hpp"

namespace mble {

/// Cell averages on a uniform grid, row-major by x then y (index i + nx*j).
struct CellField {
  int dim = 1;
  int nx = 0;
  int ny = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::vector<double> values;

  double spacing(int axis) const;
  double center(int axis, int i) const;
  double at(int i, int j = 0) const { return values[i + nx * j]; }
};

CellField cell_field(const DGSolution& sol);

/// CSV with a header row: `x,value` in 1D, `x,y,value` in 2D; one row per
/// cell at its center, 17 significant digits.
void write_field_csv(const std::string& path, const CellField& field);
/// Inverse of write_field_csv. Throws IoError on unreadable or malformed input.
CellField read_field_csv(const std::string& path);

/// Modal coefficients, one row per cell: `cell,c0,c1,...`.
void write_modal_csv(const std::string& path, const DGSolution& sol);

struct Slice {
  char axis = 'y';          ///< coordinate held fixed
  double coordinate = 0.0;
  std::vector<double> abscissa;
  std::vector<double> values;
};

/// Row (axis 'y') or column (axis 'x') of cells containing the coordinate.
/// A coordinate on a cell boundary picks the cell on its positive side.
/// Throws DomainError outside the domain and std::invalid_argument for 1D fields.
Slice extract_slice(const CellField& field, char axis, double coordinate);
void write_slice_csv(const std::string& path, const Slice& slice);

struct ContourSegment {
  double level = 0.0;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

/// 20 levels at the midpoints of a uniform partition of [0, 1].
std::vector<double> default_contour_levels();

/// Marching-squares iso-segments on the grid of cell centers. Saddle
/// squares are resolved with the mean of their four corners.
/// Throws std::invalid_argument for 1D fields.
std::vector<ContourSegment> emit_contours(const CellField& field, const std::vector<double>& levels);
void write_contours_csv(const std::string& path, const std::vector<ContourSegment>& segments);

}  // namespace mble
