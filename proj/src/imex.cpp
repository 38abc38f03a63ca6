#include "mble/imex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mble/errors.hpp"

namespace mble {

ImexStepper::ImexStepper(ImexTableau tableau, SparseMatrix w, std::optional<SparseMatrix> stiff, ExplicitRhs rhs,
                         Forcing forcing, CgOptions cg)
    : tableau_(std::move(tableau)),
      w_(std::move(w)),
      stiff_(std::move(stiff)),
      rhs_(std::move(rhs)),
      forcing_(std::move(forcing)),
      cg_(cg) {
  if (stiff_ && stiff_->size() != w_.size())
    throw std::invalid_argument("ImexStepper: K and W sizes differ");
}

const SparseMatrix& ImexStepper::stage_matrix(double dt, int stage) {
  const double shift = dt * tableau_.implicit_a(stage, stage);
  if (shift == 0.0 || !stiff_) return w_;
  auto it = stage_cache_.find(shift);
  if (it != stage_cache_.end()) return it->second;
  if (stage_cache_.size() >= 16) stage_cache_.clear();
  return stage_cache_.emplace(shift, SparseMatrix::combine(1.0, w_, shift, *stiff_)).first->second;
}

void ImexStepper::solve(const SparseMatrix& a, const std::vector<double>& b, std::vector<double>& x) {
  const CgResult r = cg_solve(a, b, x, cg_);
  cg_iterations_ += r.iterations;
}

namespace {

void require_finite(const std::vector<double>& v, double t, int stage) {
  for (double x : v)
    if (!std::isfinite(x)) {
      std::ostringstream os;
      os << "non-finite stage value at t=" << t << " (stage " << stage + 1 << ")";
      throw DivergenceError(os.str());
    }
}

}  // namespace

void ImexStepper::step(double t, double dt, std::vector<double>& u) {
  if (!(dt > 0.0)) throw std::invalid_argument("ImexStepper::step: dt must be positive");
  const int s = tableau_.stages;
  const std::size_t n = u.size();
  if (n != static_cast<std::size_t>(w_.size())) throw std::invalid_argument("ImexStepper::step: size mismatch");

  const std::vector<double> wu = spmv(w_, u);
  std::vector<std::vector<double>> f(s, std::vector<double>(n)), g(s, std::vector<double>(n));
  std::vector<double> stage(n), rhs(n), force(n);

  for (int i = 0; i < s; ++i) {
    bool trivial = tableau_.implicit_a(i, i) == 0.0;
    for (int j = 0; j < i; ++j) trivial = trivial && tableau_.explicit_a(i, j) == 0.0 && tableau_.implicit_a(i, j) == 0.0;
    if (trivial) {
      stage = u;
    } else {
      rhs = wu;
      for (int j = 0; j < i; ++j) {
        const double a = dt * tableau_.explicit_a(i, j);
        const double ai = dt * tableau_.implicit_a(i, j);
        for (std::size_t q = 0; q < n; ++q) rhs[q] += a * f[j][q] + ai * g[j][q];
      }
      const double aii = dt * tableau_.implicit_a(i, i);
      if (aii != 0.0 && forcing_) {
        forcing_(t + tableau_.ci[i] * dt, force);
        for (std::size_t q = 0; q < n; ++q) rhs[q] += aii * force[q];
      }
      stage = u;
      solve(stage_matrix(dt, i), rhs, stage);
    }
    require_finite(stage, t, i);

    rhs_(t + tableau_.c[i] * dt, stage, f[i]);
    require_finite(f[i], t, i);
    std::fill(g[i].begin(), g[i].end(), 0.0);
    if (stiff_) {
      const std::vector<double> ku = spmv(*stiff_, stage);
      for (std::size_t q = 0; q < n; ++q) g[i][q] = -ku[q];
    }
    if (forcing_) {
      forcing_(t + tableau_.ci[i] * dt, force);
      for (std::size_t q = 0; q < n; ++q) g[i][q] += force[q];
    }
  }

  rhs = wu;
  for (int i = 0; i < s; ++i) {
    const double b = dt * tableau_.b[i];
    const double bi = dt * tableau_.bi[i];
    for (std::size_t q = 0; q < n; ++q) rhs[q] += b * f[i][q] + bi * g[i][q];
  }
  solve(w_, rhs, u);
  require_finite(u, t + dt, s);
}

double cfl_number(int degree) { return 1.0 / (2.0 * degree + 1.0); }

double cfl_dt(const DGSolution& sol, const ProblemSpec& problem, std::optional<double> cfl, double dt_max) {
  const DGSpace& space = sol.space();
  const UniformMesh& mesh = space.mesh();
  const int nb = space.dofs_per_cell();
  std::vector<const BasisTable*> tables{&space.volume()};
  for (int s = 0; s < 2 * space.dim(); ++s) tables.push_back(&space.face(static_cast<Side>(s)));
  double lo = INFINITY, hi = -INFINITY;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto u = sol.cell(c);
    for (const BasisTable* tab : tables)
      for (int q = 0; q < tab->point_count(); ++q) {
        double v = 0.0;
        for (int l = 0; l < nb; ++l) v += u[l] * tab->phi(q, l);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DivergenceError("cfl_dt: non-finite solution");
  const double number = cfl.value_or(cfl_number(space.degree()));
  double dt = dt_max;
  const double sx = max_wave_speed(lo, hi, {1.0, 0.0}, problem.flux_x, problem.flux_y);
  if (sx > 0.0) dt = std::min(dt, number * mesh.dx() / sx);
  if (space.dim() == 2) {
    const double sy = max_wave_speed(lo, hi, {0.0, 1.0}, problem.flux_x, problem.flux_y);
    if (sy > 0.0) dt = std::min(dt, number * mesh.dy() / sy);
  }
  return dt;
}

namespace {

ImexStepper make_stepper(const ProblemSpec& problem, const SpacePtr& space, const AssembledOperators& ops,
                         CgOptions cg, ImexTableau tableau) {
  std::optional<SparseMatrix> stiff;
  ImexStepper::Forcing forcing;
  if (problem.epsilon > 0.0) {
    stiff = SparseMatrix::combine(problem.epsilon, ops.a2, 0.0, ops.a2);
    if (problem.has_dirichlet()) {
      forcing = [&problem, space](double t, std::span<double> out) {
        const std::vector<double> r = boundary_rhs(*space, problem, t);
        std::copy(r.begin(), r.end(), out.begin());
      };
    }
  }
  auto rhs = [&problem, space](double t, std::span<const double> u, std::span<double> out) {
    DGSolution s(space, t);
    std::copy(u.begin(), u.end(), s.coefficients().begin());
    advection_residual(s, problem, t, out);
    for (double& v : out) v = -v;
  };
  return ImexStepper(std::move(tableau), ops.w, std::move(stiff), rhs, forcing, cg);
}

}  // namespace

DGIntegrator::DGIntegrator(ProblemSpec problem, SpacePtr space, CgOptions cg, ImexTableau tableau)
    : problem_(std::move(problem)),
      space_(std::move(space)),
      ops_(assemble_operators(*space_, problem_)),
      stepper_(make_stepper(problem_, space_, ops_, cg, std::move(tableau))) {}

DGSolution DGIntegrator::initial_state() const {
  const auto& init = problem_.initial;
  return project(space_, [&init](double x, double y) { return init(x, y); }, 2 * (space_->degree() + 1));
}

void DGIntegrator::step(DGSolution& sol, double dt) {
  stepper_.step(sol.time(), dt, sol.coefficients());
  sol.set_time(sol.time() + dt);
}

StepperState DGIntegrator::integrate(DGSolution sol, double t_end, const TimeControl& control,
                                     const LimiterConfig& limiter, const StepObserver& observer) {
  const double t0 = sol.time();
  if (t_end < t0) throw std::invalid_argument("integrate: t_end before current time");
  if (control.fixed && !(control.dt > 0.0)) throw std::invalid_argument("integrate: fixed dt must be positive");
  limiter.validate();
  const double dt_max = control.dt_max > 0.0 ? control.dt_max : (t_end - t0) / 100.0;
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end));
  StepperState state{std::move(sol)};
  while (state.solution.time() < t_end - slack) {
    if (state.steps >= control.max_steps) {
      std::ostringstream os;
      os << "step cap " << control.max_steps << " reached at t=" << state.solution.time();
      throw DivergenceError(os.str());
    }
    const double t = state.solution.time();
    double dt = control.fixed ? control.dt : cfl_dt(state.solution, problem_, control.cfl, dt_max);
    const bool last = t + dt >= t_end - slack;
    if (last) dt = t_end - t;
    step(state.solution, dt);
    if (last) state.solution.set_time(t_end);
    const std::size_t troubled = apply_limiter(state.solution, limiter);
    ++state.steps;
    state.last_dt = dt;
    state.troubled_total += troubled;
    state.troubled_max = std::max(state.troubled_max, troubled);
    if (observer) observer({state.solution.time(), dt, state.steps, &state.solution, troubled});
  }
  return state;
}

}  // namespace mble
