// Command-line driver: simulations, convergence studies, post-processing
// of field files and traveling-wave queries.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mble/config.hpp"
#include "mble/driver.hpp"
#include "mble/errors.hpp"
#include "mble/field_io.hpp"
#include "mble/problems.hpp"
#include "mble/traveling_wave.hpp"

namespace {

enum Exit { ok = 0, config_error = 1, solver_error = 2, io_error = 3 };

struct Common {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

mble::RunConfig load(const Common& c) {
  mble::RunConfig cfg = mble::load_config(c.config_path, c.overrides);
  if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
  return cfg;
}

std::string opt(const std::optional<double>& v) { return v ? mble::format_double(*v) : ""; }

int cmd_run(const Common& c) {
  const mble::RunConfig cfg = load(c);
  const mble::RunSummary s = mble::run_simulation(cfg, cfg.out_dir);
  std::printf("%s: %ld steps to t=%s, %.2f s, output in %s\n", cfg.problem.c_str(), s.steps,
              mble::format_double(s.solution.time()).c_str(), s.wall_seconds, cfg.out_dir.c_str());
  return ok;
}

int cmd_study(const Common& c) {
  const mble::RunConfig cfg = load(c);
  const auto rows = mble::convergence_study(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = (std::filesystem::path(cfg.out_dir) / "convergence.csv").string();
  mble::write_study_csv(path, rows);
  for (const auto& r : rows)
    std::printf("k=%d n=%4d %-5s error=%.4e order=%s\n", r.k, r.n, r.limiter.c_str(), r.error,
                r.order ? mble::format_double(std::round(*r.order * 100) / 100).c_str() : "-");
  return ok;
}

void emit(const std::string& out, const std::function<void(const std::string&)>& writer) {
  if (!out.empty()) {
    writer(out);
    return;
  }
  const auto tmp = std::filesystem::temp_directory_path() / ("mble_cli_" + std::to_string(::getpid()) + ".csv");
  writer(tmp.string());
  std::ifstream in(tmp);
  std::cout << in.rdbuf();
  std::filesystem::remove(tmp);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DG/IMEX solver for the modified Buckley-Leverett equation"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "key = value run configuration")->required();
    sub->add_option("--out", common.out_dir, "output directory (overrides out_dir)");
    sub->add_option("--override", common.overrides, "key=value applied after the file (repeatable)");
  };
  auto* run = app.add_subcommand("run", "integrate one configuration and write its outputs");
  add_common(run);
  auto* study = app.add_subcommand("study", "Burgers convergence table over the refinements list");
  add_common(study);

  std::string field_path, out_path, axis = "y";
  double coordinate = 0.0;
  std::vector<double> levels;
  auto* slice = app.add_subcommand("slice", "row or column of cell averages from a field CSV");
  slice->add_option("--field", field_path, "field.csv from a 2D run")->required();
  slice->add_option("--axis", axis, "coordinate held fixed")->check(CLI::IsMember({"x", "y"}));
  slice->add_option("--coord", coordinate, "value of the fixed coordinate")->required();
  slice->add_option("--out", out_path, "output CSV (stdout when omitted)");
  auto* contour = app.add_subcommand("contour", "marching-squares iso-lines of a field CSV");
  contour->add_option("--field", field_path, "field.csv from a 2D run")->required();
  contour->add_option("--levels", levels, "iso-levels (default: 20 in [0,1])")->delimiter(',');
  contour->add_option("--out", out_path, "output CSV (stdout when omitted)");

  double tau = 5.0, u0 = 0.0, u_block = 0.66, ratio = 0.5;
  auto* twinfo = app.add_subcommand("twinfo", "traveling-wave predictions for one (tau, u_block)");
  twinfo->add_option("--tau", tau, "dynamic capillary coefficient");
  twinfo->add_option("--u0", u0, "background state");
  twinfo->add_option("--u-block", u_block, "block state");
  twinfo->add_option("--ratio", ratio, "mobility ratio of the flux");

  double tau_min = 0.5, tau_max = 8.0, ub_min = 0.05, ub_max = 1.0;
  int tau_steps = 16, ub_steps = 20;
  auto* sweep = app.add_subcommand("sweep", "region classification on a (u_block, tau) grid");
  sweep->add_option("--u0", u0, "background state");
  sweep->add_option("--ratio", ratio, "mobility ratio of the flux");
  sweep->add_option("--tau-min", tau_min);
  sweep->add_option("--tau-max", tau_max);
  sweep->add_option("--tau-steps", tau_steps)->check(CLI::PositiveNumber);
  sweep->add_option("--ub-min", ub_min);
  sweep->add_option("--ub-max", ub_max);
  sweep->add_option("--ub-steps", ub_steps)->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "output CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (*run) return cmd_run(common);
    if (*study) return cmd_study(common);
    if (*slice) {
      const mble::Slice s = mble::extract_slice(mble::read_field_csv(field_path), axis[0], coordinate);
      emit(out_path, [&](const std::string& p) { mble::write_slice_csv(p, s); });
      return ok;
    }
    if (*contour) {
      const auto segs = mble::emit_contours(mble::read_field_csv(field_path),
                                            levels.empty() ? mble::default_contour_levels() : levels);
      emit(out_path, [&](const std::string& p) { mble::write_contours_csv(p, segs); });
      return ok;
    }
    const mble::ScalarFlux flux = mble::mbl_scalar_flux(ratio);
    if (*twinfo) {
      const mble::TwResult r = mble::classify_region(u_block, tau, u0, flux);
      std::printf("region = %s\nu_alpha = %.6f\n", mble::to_string(r.region), r.u_alpha);
      std::printf("ubar = %s\nu_lower = %s\n", opt(r.ubar).c_str(), opt(r.u_lower).c_str());
      try {
        std::printf("basin = %.6f\n", mble::basin_height(tau, u_block, flux));
      } catch (const mble::RootFindError&) {
        std::printf("basin =\n");
      }
      for (const auto& w : r.waves)
        std::printf("wave = %s %.6f -> %.6f speed %.6f\n", w.kind.c_str(), w.left, w.right, w.speed);
      return ok;
    }
    if (*sweep) {
      std::ostringstream os;
      os << "u_block,tau,region,ubar,u_lower,u_alpha\n";
      for (int i = 0; i < tau_steps; ++i) {
        const double t = tau_steps == 1 ? tau_min : tau_min + (tau_max - tau_min) * i / (tau_steps - 1);
        const mble::PlateauInfo info = mble::plateau_info(t, u0, flux);
        for (int j = 0; j < ub_steps; ++j) {
          const double ub = ub_steps == 1 ? ub_max : ub_min + (ub_max - ub_min) * j / (ub_steps - 1);
          if (!(ub > u0)) continue;
          const mble::TwResult r = mble::classify_region(ub, info, flux);
          os << mble::format_double(ub) << ',' << mble::format_double(t) << ',' << mble::to_string(r.region) << ','
             << opt(r.ubar) << ',' << opt(r.u_lower) << ',' << mble::format_double(r.u_alpha) << '\n';
        }
      }
      if (out_path.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!(out << os.str())) throw mble::IoError("cannot write '" + out_path + "'");
      }
      return ok;
    }
  } catch (const mble::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const mble::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return io_error;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return io_error;
  } catch (const mble::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return solver_error;
  }
  return ok;
}
