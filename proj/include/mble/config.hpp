#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mble/limiters.hpp"
#include "mble/problems.hpp"

namespace mble {

enum class TimeMode { cfl, fixed };

struct SliceRequest {
  char axis = 'y';          ///< coordinate held fixed: 'x' or 'y'
  double coordinate = 0.0;
  bool operator==(const SliceRequest&) const = default;
};

/// One run or convergence study, read from `key = value` text.
///
/// Required keys: problem, n, k, t_end. Everything else has a default.
struct RunConfig {
  std::string problem;
  std::optional<double> tau;
  std::optional<double> u_block;
  std::optional<double> epsilon;
  int n = 0;                    ///< cells along x
  std::optional<int> ny;        ///< cells along y (2D; defaults to n)
  int k = 1;
  LimiterKind limiter = LimiterKind::none;
  double m_tvb = 0.0;
  double alpha = 0.0;
  TimeMode time_mode = TimeMode::cfl;
  std::optional<double> dt;     ///< fixed step; defaults to 0.0005
  std::optional<double> cfl;
  std::optional<double> dt_max;
  double t_end = 0.0;
  long max_steps = 10'000'000;
  bool write_field = true;
  bool modal_dump = false;
  std::vector<SliceRequest> slices;
  std::vector<double> contour_levels;
  std::vector<int> refinements;
  int error_points = 0;         ///< Gauss points per cell for study errors; 0 selects k+1
  std::string out_dir = "out";
  unsigned long seed = 0;

  bool operator==(const RunConfig&) const = default;

  ProblemParams problem_params() const;
  LimiterConfig limiter_config() const;
  double fixed_dt() const { return dt.value_or(0.0005); }
};

/// Parses config text. `overrides` are `key=value` strings applied after
/// the text and may replace keys it sets. Throws ConfigError naming the
/// offending line on unknown or duplicate keys, bad values, missing
/// required keys or failed validation.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Reads and parses a file; throws IoError when it cannot be opened.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Shortest decimal form that reads back to the same double (17 significant digits at most).
std::string format_double(double v);

}  // namespace mble
