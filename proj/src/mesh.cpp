#include "mble/mesh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mble/errors.hpp"

namespace mble {

namespace {
void check_axis(const Interval& iv, int n, const char* name) {
  if (n < 1) throw std::invalid_argument(std::string("mesh: cell count along ") + name + " must be >= 1");
  if (!(iv.hi > iv.lo)) throw std::invalid_argument(std::string("mesh: empty interval along ") + name);
}
}  // namespace

UniformMesh::UniformMesh(Interval x, int nx, bool periodic_x) : dim_(1) {
  check_axis(x, nx, "x");
  counts_ = {nx, 1};
  bounds_ = {x, Interval{0.0, 1.0}};
  spacing_ = {x.length() / nx, 1.0};
  periodic_ = {periodic_x, false};
  build_faces();
}

UniformMesh::UniformMesh(Interval x, int nx, Interval y, int ny, std::array<bool, 2> periodic)
    : dim_(2) {
  check_axis(x, nx, "x");
  check_axis(y, ny, "y");
  counts_ = {nx, ny};
  bounds_ = {x, y};
  spacing_ = {x.length() / nx, y.length() / ny};
  periodic_ = periodic;
  build_faces();
}

double UniformMesh::cell_volume() const {
  return dim_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1];
}

double UniformMesh::face_measure(int axis) const {
  if (dim_ == 1) return 1.0;
  return axis == 0 ? spacing_[1] : spacing_[0];
}

std::array<int, 2> UniformMesh::cell_ij(int cell) const {
  return {cell % counts_[0], cell / counts_[0]};
}

std::array<double, 2> UniformMesh::cell_center(int cell) const {
  const auto [i, j] = cell_ij(cell);
  const double x = bounds_[0].lo + (i + 0.5) * spacing_[0];
  const double y = dim_ == 1 ? 0.0 : bounds_[1].lo + (j + 0.5) * spacing_[1];
  return {x, y};
}

std::array<double, 2> UniformMesh::to_reference(double x, double y, int cell) const {
  if (cell < 0 || cell >= cell_count()) throw std::out_of_range("to_reference: cell index out of range");
  const auto c = cell_center(cell);
  const double xi = (x - c[0]) / spacing_[0] + 0.5;
  const double eta = dim_ == 1 ? 0.5 : (y - c[1]) / spacing_[1] + 0.5;
  constexpr double slack = 1e-12;
  if (xi < -slack || xi > 1.0 + slack || eta < -slack || eta > 1.0 + slack) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") lies outside cell " << cell;
    throw DomainError(os.str());
  }
  return {xi, eta};
}

std::array<double, 2> UniformMesh::to_physical(double xi, double eta, int cell) const {
  const auto c = cell_center(cell);
  const double x = c[0] + (xi - 0.5) * spacing_[0];
  const double y = dim_ == 1 ? 0.0 : c[1] + (eta - 0.5) * spacing_[1];
  return {x, y};
}

int UniformMesh::locate(double x, double y) const {
  std::array<int, 2> idx{0, 0};
  const std::array<double, 2> p{x, y};
  for (int a = 0; a < dim_; ++a) {
    const Interval& b = bounds_[a];
    if (!(p[a] >= b.lo && p[a] <= b.hi)) {
      std::ostringstream os;
      os << "coordinate " << p[a] << " outside [" << b.lo << ", " << b.hi << "]";
      throw DomainError(os.str());
    }
    int i = static_cast<int>(std::floor((p[a] - b.lo) / spacing_[a]));
    if (i >= counts_[a]) i = counts_[a] - 1;
    if (i < 0) i = 0;
    idx[a] = i;
  }
  return cell_index(idx[0], idx[1]);
}

std::optional<int> UniformMesh::neighbor(int cell, Side side) const {
  const int axis = axis_of(side);
  if (axis >= dim_) return std::nullopt;
  auto ij = cell_ij(cell);
  const int step = outward_sign(side) > 0 ? 1 : -1;
  int k = ij[axis] + step;
  if (k < 0 || k >= counts_[axis]) {
    if (!periodic_[axis]) return std::nullopt;
    k = (k + counts_[axis]) % counts_[axis];
  }
  ij[axis] = k;
  return cell_index(ij[0], ij[1]);
}

void UniformMesh::build_faces() {
  faces_.clear();
  for (int axis = 0; axis < dim_; ++axis) {
    const int other = 1 - axis;
    const int n_along = counts_[axis];
    const int n_across = dim_ == 1 ? 1 : counts_[other];
    for (int t = 0; t < n_across; ++t) {
      auto cell_at = [&](int s) {
        std::array<int, 2> ij{};
        ij[axis] = s;
        ij[other] = t;
        return cell_index(ij[0], ij[1]);
      };
      for (int s = 0; s + 1 < n_along; ++s)
        faces_.push_back({cell_at(s), cell_at(s + 1), axis, Side::x_lo, 1.0});
      const Side lo = axis == 0 ? Side::x_lo : Side::y_lo;
      const Side hi = axis == 0 ? Side::x_hi : Side::y_hi;
      if (periodic_[axis]) {
        faces_.push_back({cell_at(n_along - 1), cell_at(0), axis, Side::x_lo, 1.0});
      } else {
        faces_.push_back({cell_at(0), -1, axis, lo, -1.0});
        faces_.push_back({cell_at(n_along - 1), -1, axis, hi, 1.0});
      }
    }
  }
}

}  // namespace mble
