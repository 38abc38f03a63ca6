#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mble/config.hpp"
#include "mble/imex.hpp"

namespace mble {

struct RunSummary {
  DGSolution solution;
  long steps = 0;
  double wall_seconds = 0.0;
  std::size_t troubled_total = 0;
  std::size_t troubled_max = 0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
};

/// Problem, space and integrator for a config, with the run's time control.
ProblemSpec problem_for(const RunConfig& config);
SpacePtr space_for(const RunConfig& config, const ProblemSpec& problem, int n);
TimeControl time_control_for(const RunConfig& config);

/// Integrates the configured problem to t_end without writing anything.
RunSummary simulate(const RunConfig& config, const StepObserver& observer = {});

/// simulate() plus output files in `out_dir`: field.csv (cell averages),
/// modal.csv when requested, slice_<axis>_<coord>.csv, contours.csv when
/// levels are set, manifest.txt (the canonical config plus commented run
/// statistics; parseable as a config) and timing.txt (wall time).
RunSummary run_simulation(const RunConfig& config, const std::string& out_dir);

struct StudyRow {
  int k = 1;
  int n = 0;
  std::string limiter;
  double error = 0.0;
  std::optional<double> order;  ///< log2(e_prev / e) against the previous row
};

/// L2 error against the exact Burgers solution, integrated with a Gauss
/// rule of `points` per cell (0 selects k+1).
double burgers_l2_error(const DGSolution& sol, double t, int points = 0);

/// Runs every refinement with the fixed step and reports errors and
/// observed orders. Only the burgers problem has an exact solution.
std::vector<StudyRow> convergence_study(const RunConfig& config);
void write_study_csv(const std::string& path, const std::vector<StudyRow>& rows);

}  // namespace mble
