#include "mble/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mble/errors.hpp"

namespace mble {

double CellField::spacing(int axis) const {
  const int n = axis == 0 ? nx : ny;
  return (hi[axis] - lo[axis]) / n;
}

double CellField::center(int axis, int i) const { return lo[axis] + (i + 0.5) * spacing(axis); }

CellField cell_field(const DGSolution& sol) {
  const UniformMesh& mesh = sol.space().mesh();
  CellField f;
  f.dim = mesh.dim();
  f.nx = mesh.nx();
  f.ny = mesh.dim() == 2 ? mesh.ny() : 1;
  f.lo = {mesh.bounds(0).lo, mesh.dim() == 2 ? mesh.bounds(1).lo : 0.0};
  f.hi = {mesh.bounds(0).hi, mesh.dim() == 2 ? mesh.bounds(1).hi : 1.0};
  f.values.resize(mesh.cell_count());
  for (int c = 0; c < mesh.cell_count(); ++c) f.values[c] = cell_average(sol, c);
  return f;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void write_field_csv(const std::string& path, const CellField& field) {
  auto out = open_out(path);
  out << (field.dim == 1 ? "x,value\n" : "x,y,value\n");
  for (int j = 0; j < field.ny; ++j)
    for (int i = 0; i < field.nx; ++i) {
      out << g17(field.center(0, i)) << ',';
      if (field.dim == 2) out << g17(field.center(1, j)) << ',';
      out << g17(field.at(i, j)) << '\n';
    }
  finish(out, path);
}

CellField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::string header;
  std::getline(in, header);
  int dim;
  if (header == "x,value")
    dim = 1;
  else if (header == "x,y,value")
    dim = 2;
  else
    throw IoError("'" + path + "': unrecognized header '" + header + "'");
  std::vector<std::array<double, 3>> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 3> r{0.0, 0.0, 0.0};
    std::istringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      if (col >= dim + 1) throw IoError("'" + path + "' line " + std::to_string(lineno) + ": too many columns");
      char* end = nullptr;
      r[col] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw IoError("'" + path + "' line " + std::to_string(lineno) + ": bad number");
      ++col;
    }
    if (col != dim + 1) throw IoError("'" + path + "' line " + std::to_string(lineno) + ": too few columns");
    if (dim == 1) r = {r[0], 0.0, r[1]};
    rows.push_back(r);
  }
  if (rows.empty()) throw IoError("'" + path + "': no data rows");
  CellField f;
  f.dim = dim;
  // Rows are ordered x fastest; count the leading run with constant y.
  int nx = 0;
  while (nx < static_cast<int>(rows.size()) && rows[nx][1] == rows[0][1]) ++nx;
  if (rows.size() % nx != 0) throw IoError("'" + path + "': rows do not form a grid");
  f.nx = nx;
  f.ny = static_cast<int>(rows.size()) / nx;
  for (int axis = 0; axis < dim; ++axis) {
    const int n = axis == 0 ? f.nx : f.ny;
    const double first = rows[0][axis];
    const double last = axis == 0 ? rows[nx - 1][0] : rows.back()[1];
    const double h = n > 1 ? (last - first) / (n - 1) : 1.0;
    f.lo[axis] = first - 0.5 * h;
    f.hi[axis] = last + 0.5 * h;
  }
  f.values.reserve(rows.size());
  for (const auto& r : rows) f.values.push_back(r[2]);
  return f;
}

void write_modal_csv(const std::string& path, const DGSolution& sol) {
  auto out = open_out(path);
  const int nb = sol.space().dofs_per_cell();
  out << "cell";
  for (int l = 0; l < nb; ++l) out << ",c" << l;
  out << '\n';
  for (int c = 0; c < sol.space().mesh().cell_count(); ++c) {
    out << c;
    for (double v : sol.cell(c)) out << ',' << g17(v);
    out << '\n';
  }
  finish(out, path);
}

Slice extract_slice(const CellField& field, char axis, double coordinate) {
  if (field.dim != 2) throw std::invalid_argument("extract_slice: field is not 2D");
  if (axis != 'x' && axis != 'y') throw std::invalid_argument("extract_slice: axis must be 'x' or 'y'");
  const int fixed = axis == 'x' ? 0 : 1;
  if (!(coordinate >= field.lo[fixed] && coordinate <= field.hi[fixed]))
    throw DomainError("extract_slice: coordinate outside the domain");
  const int n = fixed == 0 ? field.nx : field.ny;
  const int idx = std::clamp(static_cast<int>(std::floor((coordinate - field.lo[fixed]) / field.spacing(fixed))), 0, n - 1);
  Slice s;
  s.axis = axis;
  s.coordinate = coordinate;
  const int free = 1 - fixed;
  const int m = free == 0 ? field.nx : field.ny;
  for (int t = 0; t < m; ++t) {
    s.abscissa.push_back(field.center(free, t));
    s.values.push_back(fixed == 0 ? field.at(idx, t) : field.at(t, idx));
  }
  return s;
}

void write_slice_csv(const std::string& path, const Slice& slice) {
  auto out = open_out(path);
  out << (slice.axis == 'x' ? "y,value\n" : "x,value\n");
  for (std::size_t i = 0; i < slice.values.size(); ++i) out << g17(slice.abscissa[i]) << ',' << g17(slice.values[i]) << '\n';
  finish(out, path);
}

std::vector<double> default_contour_levels() {
  std::vector<double> levels;
  for (int i = 0; i < 20; ++i) levels.push_back((i + 0.5) / 20.0);
  return levels;
}

std::vector<ContourSegment> emit_contours(const CellField& field, const std::vector<double>& levels) {
  if (field.dim != 2) throw std::invalid_argument("emit_contours: field is not 2D");
  std::vector<ContourSegment> segs;
  const double hx = field.spacing(0), hy = field.spacing(1);
  for (double level : levels)
    for (int j = 0; j + 1 < field.ny; ++j)
      for (int i = 0; i + 1 < field.nx; ++i) {
        // Corners counter-clockwise from the lower left.
        const std::array<double, 4> v{field.at(i, j), field.at(i + 1, j), field.at(i + 1, j + 1), field.at(i, j + 1)};
        const double x0 = field.center(0, i), y0 = field.center(1, j);
        const std::array<std::array<double, 2>, 4> p{{{x0, y0}, {x0 + hx, y0}, {x0 + hx, y0 + hy}, {x0, y0 + hy}}};
        int mask = 0;
        for (int c = 0; c < 4; ++c)
          if (v[c] >= level) mask |= 1 << c;
        if (mask == 0 || mask == 15) continue;
        auto cross = [&](int e) -> std::array<double, 2> {
          const int a = e, b = (e + 1) % 4;
          const double t = (level - v[a]) / (v[b] - v[a]);
          return {p[a][0] + t * (p[b][0] - p[a][0]), p[a][1] + t * (p[b][1] - p[a][1])};
        };
        // Edge e joins corner e and corner e+1; collect crossed edges in order.
        std::vector<int> edges;
        for (int e = 0; e < 4; ++e)
          if (((mask >> e) & 1) != ((mask >> ((e + 1) % 4)) & 1)) edges.push_back(e);
        auto emit = [&](int e0, int e1) {
          const auto a = cross(e0), b = cross(e1);
          segs.push_back({level, a[0], a[1], b[0], b[1]});
        };
        if (edges.size() == 2) {
          emit(edges[0], edges[1]);
        } else {
          const double mean = 0.25 * (v[0] + v[1] + v[2] + v[3]);
          const bool center_in = mean >= level;
          const bool corner0_in = mask & 1;
          // Pair each edge with a neighbor so that the center's side stays connected.
          if (center_in == corner0_in) {
            emit(0, 1);
            emit(2, 3);
          } else {
            emit(3, 0);
            emit(1, 2);
          }
        }
      }
  return segs;
}

void write_contours_csv(const std::string& path, const std::vector<ContourSegment>& segments) {
  auto out = open_out(path);
  out << "level,x0,y0,x1,y1\n";
  for (const auto& s : segments)
    out << g17(s.level) << ',' << g17(s.x0) << ',' << g17(s.y0) << ',' << g17(s.x1) << ',' << g17(s.y1) << '\n';
  finish(out, path);
}

}  // namespace mble
