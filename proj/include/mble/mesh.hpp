#pragma once

#include <array>
#include <optional>
#include <vector>

namespace mble {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

/// Domain side; boundary faces carry the side they lie on.
enum class Side { x_lo = 0, x_hi = 1, y_lo = 2, y_hi = 3 };

inline int axis_of(Side s) { return static_cast<int>(s) / 2; }
/// +1 for the upper side of an axis, -1 for the lower.
inline double outward_sign(Side s) { return static_cast<int>(s) % 2 == 1 ? 1.0 : -1.0; }

/// A face between two cells or on the domain boundary.
///
/// The normal is +e_axis from `minus` to `plus` on interior faces and the
/// outward normal of `minus` on boundary faces (`plus` = -1). Periodic wrap
/// faces are interior faces whose `plus` cell sits on the opposite side.
struct Face {
  int minus = -1;
  int plus = -1;
  int axis = 0;
  Side side = Side::x_lo;  ///< boundary side; meaningless for interior faces
  double normal = 1.0;     ///< sign of the normal along `axis`

  bool is_boundary() const { return plus < 0; }
};

/// Uniform tensor mesh of a line segment or rectangle.
/// Cell (i,j) has index i + nx*j.
class UniformMesh {
 public:
  UniformMesh(Interval x, int nx, bool periodic_x = false);
  UniformMesh(Interval x, int nx, Interval y, int ny, std::array<bool, 2> periodic = {false, false});

  int dim() const { return dim_; }
  int count(int axis) const { return counts_[axis]; }
  int nx() const { return counts_[0]; }
  int ny() const { return counts_[1]; }
  int cell_count() const { return counts_[0] * counts_[1]; }
  const Interval& bounds(int axis) const { return bounds_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  double dx() const { return spacing_[0]; }
  double dy() const { return spacing_[1]; }
  bool periodic(int axis) const { return periodic_[axis]; }

  double cell_volume() const;
  /// |e|: 1 for the point faces of a 1D mesh, the edge length in 2D.
  double face_measure(int axis) const;

  int cell_index(int i, int j = 0) const { return i + counts_[0] * j; }
  std::array<int, 2> cell_ij(int cell) const;
  std::array<double, 2> cell_center(int cell) const;

  /// Reference coordinates of a point in the closure of `cell`.
  /// Throws DomainError if the point lies outside it.
  std::array<double, 2> to_reference(double x, double y, int cell) const;
  std::array<double, 2> to_physical(double xi, double eta, int cell) const;

  /// Cell containing (x,y); points on an interior cell boundary go to the
  /// cell on the positive side. Throws DomainError outside the domain.
  int locate(double x, double y = 0.0) const;

  /// Neighbor across the given side, honoring periodic wrap.
  std::optional<int> neighbor(int cell, Side side) const;

  const std::vector<Face>& faces() const { return faces_; }

 private:
  void build_faces();

  int dim_;
  std::array<int, 2> counts_{1, 1};
  std::array<Interval, 2> bounds_{};
  std::array<double, 2> spacing_{1.0, 1.0};
  std::array<bool, 2> periodic_{false, false};
  std::vector<Face> faces_;
};

}  // namespace mble
