#include "mble/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mble/errors.hpp"
#include "mble/field_io.hpp"
#include "mble/problems.hpp"

namespace mble {

ProblemSpec problem_for(const RunConfig& config) {
  ProblemSpec p = make_problem(config.problem, config.problem_params());
  p.validate();
  return p;
}

SpacePtr space_for(const RunConfig& config, const ProblemSpec& problem, int n) {
  const int ny = problem.dim == 2 ? config.ny.value_or(n) : 0;
  return make_space(problem.make_mesh(n, ny), config.k);
}

TimeControl time_control_for(const RunConfig& config) {
  TimeControl tc;
  tc.fixed = config.time_mode == TimeMode::fixed;
  tc.dt = config.fixed_dt();
  tc.cfl = config.cfl;
  tc.dt_max = config.dt_max.value_or(0.0);
  tc.max_steps = config.max_steps;
  return tc;
}

RunSummary simulate(const RunConfig& config, const StepObserver& observer) {
  const ProblemSpec problem = problem_for(config);
  const SpacePtr space = space_for(config, problem, config.n);
  DGIntegrator integrator(problem, space);
  DGSolution u0 = integrator.initial_state();
  const double m0 = total_mass(u0);
  const auto start = std::chrono::steady_clock::now();
  StepperState st = integrator.integrate(std::move(u0), config.t_end, time_control_for(config),
                                         config.limiter_config(), observer);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunSummary s{std::move(st.solution)};
  s.steps = st.steps;
  s.wall_seconds = wall;
  s.troubled_total = st.troubled_total;
  s.troubled_max = st.troubled_max;
  s.mass_initial = m0;
  s.mass_final = total_mass(s.solution);
  return s;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

RunSummary run_simulation(const RunConfig& config, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());

  RunSummary s = simulate(config);
  const CellField field = cell_field(s.solution);
  if (config.write_field) write_field_csv((dir / "field.csv").string(), field);
  if (config.modal_dump) write_modal_csv((dir / "modal.csv").string(), s.solution);
  for (const SliceRequest& r : config.slices) {
    const Slice slice = extract_slice(field, r.axis, r.coordinate);
    write_slice_csv((dir / ("slice_" + std::string(1, r.axis) + "_" + format_double(r.coordinate) + ".csv")).string(),
                    slice);
  }
  if (!config.contour_levels.empty())
    write_contours_csv((dir / "contours.csv").string(), emit_contours(field, config.contour_levels));

  std::ostringstream m;
  m << serialize_config(config);
  m << "# steps = " << s.steps << "\n";
  m << "# final_time = " << g17(s.solution.time()) << "\n";
  m << "# troubled_total = " << s.troubled_total << "\n";
  m << "# troubled_max = " << s.troubled_max << "\n";
  m << "# mass_initial = " << g17(s.mass_initial) << "\n";
  m << "# mass_final = " << g17(s.mass_final) << "\n";
  write_text(dir / "manifest.txt", m.str());
  write_text(dir / "timing.txt", "wall_seconds = " + g17(s.wall_seconds) + "\n");
  return s;
}

double burgers_l2_error(const DGSolution& sol, double t, int points) {
  if (points <= 0) points = sol.space().degree() + 1;
  return l2_error(sol, [t](double x, double) { return burgers_exact(x, t); }, points);
}

std::vector<StudyRow> convergence_study(const RunConfig& config) {
  if (config.problem != "burgers") throw ConfigError("convergence study needs the burgers problem");
  if (config.refinements.empty()) throw ConfigError("convergence study needs a refinements list");
  RunConfig c = config;
  c.time_mode = TimeMode::fixed;
  std::vector<StudyRow> rows;
  for (int n : config.refinements) {
    c.n = n;
    const RunSummary s = simulate(c);
    StudyRow row{c.k, n, to_string(c.limiter), burgers_l2_error(s.solution, c.t_end, c.error_points), std::nullopt};
    if (!rows.empty()) row.order = std::log2(rows.back().error / row.error) / std::log2(static_cast<double>(n) / rows.back().n);
    rows.push_back(row);
  }
  return rows;
}

void write_study_csv(const std::string& path, const std::vector<StudyRow>& rows) {
  std::ostringstream os;
  os << "k,n,limiter,l2_error,order\n";
  for (const auto& r : rows)
    os << r.k << ',' << r.n << ',' << r.limiter << ',' << g17(r.error) << ',' << (r.order ? g17(*r.order) : "") << '\n';
  write_text(path, os.str());
}

}  // namespace mble
