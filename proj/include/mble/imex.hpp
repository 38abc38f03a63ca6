#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mble/cg.hpp"
#include "mble/limiters.hpp"
#include "mble/problem.hpp"
#include "mble/sipdg.hpp"
#include "mble/solution.hpp"
#include "mble/sparse.hpp"
#include "mble/tableau.hpp"

namespace mble {

/// Additive RK stepper for the linear-implicit system
///   W u' = f(t, u) + (-K u + r(t)),
/// with f treated explicitly and the bracket implicitly. W and K are SPD
/// (K may be absent). Every stage and the final combination solve with CG.
class ImexStepper {
 public:
  using ExplicitRhs = std::function<void(double t, std::span<const double> u, std::span<double> out)>;
  using Forcing = std::function<void(double t, std::span<double> out)>;

  /// `stiff` may be null, in which case the implicit part is r(t) alone.
  /// `forcing` may be empty.
  ImexStepper(ImexTableau tableau, SparseMatrix w, std::optional<SparseMatrix> stiff, ExplicitRhs rhs,
              Forcing forcing = {}, CgOptions cg = {});

  /// Advances u from t to t + dt in place. Throws DivergenceError on
  /// non-finite stage values; CG failures propagate.
  void step(double t, double dt, std::vector<double>& u);

  /// W + dt * a_ii * K for stage i (W itself when the diagonal entry is 0).
  const SparseMatrix& stage_matrix(double dt, int stage);

  const ImexTableau& tableau() const { return tableau_; }
  const SparseMatrix& w() const { return w_; }
  int cg_iterations() const { return cg_iterations_; }

 private:
  void solve(const SparseMatrix& a, const std::vector<double>& b, std::vector<double>& x);

  ImexTableau tableau_;
  SparseMatrix w_;
  std::optional<SparseMatrix> stiff_;
  ExplicitRhs rhs_;
  Forcing forcing_;
  CgOptions cg_;
  std::map<double, SparseMatrix> stage_cache_;
  int cg_iterations_ = 0;
};

/// CFL number 1/(2k+1).
double cfl_number(int degree);

/// CFL * min over axes of h / max|v'| on the range of u_h, capped at dt_max.
/// Returns dt_max when every wave speed vanishes.
double cfl_dt(const DGSolution& sol, const ProblemSpec& problem, std::optional<double> cfl, double dt_max);

struct TimeControl {
  bool fixed = false;
  double dt = 0.0;                 ///< used when fixed
  std::optional<double> cfl;       ///< overrides 1/(2k+1)
  double dt_max = 0.0;             ///< 0 selects (T_end - t0)/100
  long max_steps = 10'000'000;
};

struct StepInfo {
  double t = 0.0;
  double dt = 0.0;
  long step = 0;
  const DGSolution* solution = nullptr;
  std::size_t troubled = 0;
};

using StepObserver = std::function<void(const StepInfo&)>;

struct StepperState {
  DGSolution solution;
  long steps = 0;
  double last_dt = 0.0;
  std::size_t troubled_total = 0;
  std::size_t troubled_max = 0;
};

/// SIPDG discretization of a problem coupled to the IMEX stepper.
class DGIntegrator {
 public:
  DGIntegrator(ProblemSpec problem, SpacePtr space, CgOptions cg = {},
               ImexTableau tableau = ImexTableau::ssp3_333());
  DGIntegrator(const DGIntegrator&) = delete;
  DGIntegrator& operator=(const DGIntegrator&) = delete;

  const ProblemSpec& problem() const { return problem_; }
  const SpacePtr& space() const { return space_; }
  const AssembledOperators& operators() const { return ops_; }
  ImexStepper& stepper() { return stepper_; }

  /// L2 projection of the initial datum with 2(k+1) points per axis.
  DGSolution initial_state() const;

  /// One IMEX step; the solution's time advances by dt. No limiting.
  void step(DGSolution& sol, double dt);

  /// Steps to t_end, limiting once after every completed step.
  StepperState integrate(DGSolution sol, double t_end, const TimeControl& control,
                         const LimiterConfig& limiter = {}, const StepObserver& observer = {});

 private:
  ProblemSpec problem_;
  SpacePtr space_;
  AssembledOperators ops_;
  ImexStepper stepper_;
};

}  // namespace mble
