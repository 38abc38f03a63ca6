#include "mble/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mble/errors.hpp"

namespace mble {

ProblemParams RunConfig::problem_params() const { return {tau, u_block, epsilon}; }

LimiterConfig RunConfig::limiter_config() const {
  LimiterConfig c;
  c.kind = limiter;
  c.m_tvb = m_tvb;
  c.alpha = alpha;
  return c;
}

std::string format_double(double v) {
  char buf[64];
  for (int p = 1; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v))
    throw ConfigError(key + ": expected a number, got '" + e.value + "'", e.line);
  return v;
}

long to_long(const std::string& key, const Entry& e) {
  long v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an integer, got '" + e.value + "'", e.line);
  return v;
}

bool to_bool(const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + e.value + "'", e.line);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "problem", "tau", "u_block", "epsilon", "n", "ny", "k", "limiter", "m_tvb", "alpha",
      "time_mode", "dt", "cfl", "dt_max", "t_end", "max_steps", "write_field", "modal_dump",
      "slices", "contour_levels", "refinements", "error_points", "out_dir", "seed"};
  return keys;
}

void put(std::map<std::string, Entry>& entries, const std::string& raw, int line, bool allow_replace) {
  const auto eq = raw.find('=');
  if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + raw + "'", line);
  const std::string key = trim(raw.substr(0, eq));
  const std::string value = trim(raw.substr(eq + 1));
  if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'", line);
  if (!allow_replace && entries.count(key)) throw ConfigError("duplicate key '" + key + "'", line);
  entries[key] = {value, line};
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  std::map<std::string, Entry> entries;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    put(entries, raw, line, false);
  }
  for (const std::string& o : overrides) put(entries, o, 0, true);

  for (const char* req : {"problem", "n", "k", "t_end"})
    if (!entries.count(req)) throw ConfigError(std::string("missing required key '") + req + "'");

  RunConfig c;
  for (const auto& [key, e] : entries) {
    if (key == "problem") {
      const auto& names = problem_names();
      if (std::find(names.begin(), names.end(), e.value) == names.end())
        throw ConfigError("problem: unknown name '" + e.value + "'", e.line);
      c.problem = e.value;
    } else if (key == "tau") {
      c.tau = to_double(key, e);
    } else if (key == "u_block") {
      c.u_block = to_double(key, e);
    } else if (key == "epsilon") {
      c.epsilon = to_double(key, e);
    } else if (key == "n") {
      c.n = static_cast<int>(to_long(key, e));
      if (c.n < 1) throw ConfigError("n: must be >= 1", e.line);
    } else if (key == "ny") {
      c.ny = static_cast<int>(to_long(key, e));
      if (*c.ny < 1) throw ConfigError("ny: must be >= 1", e.line);
    } else if (key == "k") {
      c.k = static_cast<int>(to_long(key, e));
      if (c.k < 1 || c.k > 3) throw ConfigError("k: must be one of {1, 2, 3}", e.line);
    } else if (key == "limiter") {
      try {
        c.limiter = parse_limiter_kind(e.value);
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what(), e.line);
      }
    } else if (key == "m_tvb") {
      c.m_tvb = to_double(key, e);
      if (c.m_tvb < 0.0) throw ConfigError("m_tvb: must be >= 0", e.line);
    } else if (key == "alpha") {
      c.alpha = to_double(key, e);
      if (c.alpha < 0.0) throw ConfigError("alpha: must be >= 0", e.line);
    } else if (key == "time_mode") {
      if (e.value == "cfl")
        c.time_mode = TimeMode::cfl;
      else if (e.value == "fixed")
        c.time_mode = TimeMode::fixed;
      else
        throw ConfigError("time_mode: expected cfl or fixed, got '" + e.value + "'", e.line);
    } else if (key == "dt") {
      c.dt = to_double(key, e);
      if (!(*c.dt > 0.0)) throw ConfigError("dt: must be positive", e.line);
    } else if (key == "cfl") {
      c.cfl = to_double(key, e);
      if (!(*c.cfl > 0.0)) throw ConfigError("cfl: must be positive", e.line);
    } else if (key == "dt_max") {
      c.dt_max = to_double(key, e);
      if (!(*c.dt_max > 0.0)) throw ConfigError("dt_max: must be positive", e.line);
    } else if (key == "t_end") {
      c.t_end = to_double(key, e);
      if (!(c.t_end > 0.0)) throw ConfigError("t_end: must be positive", e.line);
    } else if (key == "max_steps") {
      c.max_steps = to_long(key, e);
      if (c.max_steps < 1) throw ConfigError("max_steps: must be >= 1", e.line);
    } else if (key == "write_field") {
      c.write_field = to_bool(key, e);
    } else if (key == "modal_dump") {
      c.modal_dump = to_bool(key, e);
    } else if (key == "slices") {
      for (const std::string& item : split(e.value, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon != 1 || (item[0] != 'x' && item[0] != 'y'))
          throw ConfigError("slices: expected entries like 'y:0.75', got '" + item + "'", e.line);
        c.slices.push_back({item[0], to_double(key, {item.substr(2), e.line})});
      }
    } else if (key == "contour_levels") {
      for (const std::string& item : split(e.value, ',')) c.contour_levels.push_back(to_double(key, {item, e.line}));
    } else if (key == "refinements") {
      for (const std::string& item : split(e.value, ',')) {
        const long v = to_long(key, {item, e.line});
        if (v < 1) throw ConfigError("refinements: entries must be >= 1", e.line);
        if (!c.refinements.empty() && v <= c.refinements.back())
          throw ConfigError("refinements: list must be strictly increasing", e.line);
        c.refinements.push_back(static_cast<int>(v));
      }
    } else if (key == "error_points") {
      c.error_points = static_cast<int>(to_long(key, e));
      if (c.error_points < 0 || c.error_points > 64) throw ConfigError("error_points: must be in 0..64", e.line);
    } else if (key == "out_dir") {
      if (e.value.empty()) throw ConfigError("out_dir: must not be empty", e.line);
      c.out_dir = e.value;
    } else if (key == "seed") {
      c.seed = static_cast<unsigned long>(to_long(key, e));
    }
  }
  if (c.u_block && c.problem == "burgers") throw ConfigError("u_block: not used by problem burgers");
  if (c.epsilon && *c.epsilon < 0.0) throw ConfigError("epsilon: must be >= 0", entries["epsilon"].line);
  if (c.tau && *c.tau < 0.0) throw ConfigError("tau: must be >= 0", entries["tau"].line);
  return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), overrides);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "problem = " << c.problem << "\n";
  if (c.tau) os << "tau = " << format_double(*c.tau) << "\n";
  if (c.u_block) os << "u_block = " << format_double(*c.u_block) << "\n";
  if (c.epsilon) os << "epsilon = " << format_double(*c.epsilon) << "\n";
  os << "n = " << c.n << "\n";
  if (c.ny) os << "ny = " << *c.ny << "\n";
  os << "k = " << c.k << "\n";
  os << "limiter = " << to_string(c.limiter) << "\n";
  os << "m_tvb = " << format_double(c.m_tvb) << "\n";
  os << "alpha = " << format_double(c.alpha) << "\n";
  os << "time_mode = " << (c.time_mode == TimeMode::cfl ? "cfl" : "fixed") << "\n";
  if (c.dt) os << "dt = " << format_double(*c.dt) << "\n";
  if (c.cfl) os << "cfl = " << format_double(*c.cfl) << "\n";
  if (c.dt_max) os << "dt_max = " << format_double(*c.dt_max) << "\n";
  os << "t_end = " << format_double(c.t_end) << "\n";
  os << "max_steps = " << c.max_steps << "\n";
  os << "write_field = " << (c.write_field ? "true" : "false") << "\n";
  os << "modal_dump = " << (c.modal_dump ? "true" : "false") << "\n";
  if (!c.slices.empty()) {
    os << "slices = ";
    for (std::size_t i = 0; i < c.slices.size(); ++i)
      os << (i ? ", " : "") << c.slices[i].axis << ':' << format_double(c.slices[i].coordinate);
    os << "\n";
  }
  if (!c.contour_levels.empty()) {
    os << "contour_levels = ";
    for (std::size_t i = 0; i < c.contour_levels.size(); ++i) os << (i ? ", " : "") << format_double(c.contour_levels[i]);
    os << "\n";
  }
  if (!c.refinements.empty()) {
    os << "refinements = ";
    for (std::size_t i = 0; i < c.refinements.size(); ++i) os << (i ? ", " : "") << c.refinements[i];
    os << "\n";
  }
  os << "error_points = " << c.error_points << "\n";
  os << "out_dir = " << c.out_dir << "\n";
  os << "seed = " << c.seed << "\n";
  return os.str();
}

}  // namespace mble
