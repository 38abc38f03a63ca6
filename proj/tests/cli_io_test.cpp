#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mble/config.hpp"
#include "mble/driver.hpp"
#include "mble/errors.hpp"
#include "mble/field_io.hpp"

using namespace mble;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mble_cli_io_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(MBLE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kExample1 =
    "# block of height 0.66 in a dry column\n"
    "problem = mbl1d\n"
    "tau = 5\n"
    "u_block = 0.66\n"
    "n = 501\n"
    "k = 3\n"
    "limiter = moe\n"
    "alpha = 100\n"
    "t_end = 0.5\n";

const char* kSmall2d =
    "problem = mbl2d_ex5_cyl\n"
    "n = 12\n"
    "k = 1\n"
    "limiter = tvb\n"
    "m_tvb = 50\n"
    "t_end = 0.02\n"
    "slices = y:0.75, x:0.6\n"
    "contour_levels = 0.25, 0.5\n"
    "modal_dump = true\n";

CellField grid(int nx, int ny, double lo, double hi, const std::function<double(double, double)>& f) {
  CellField c;
  c.dim = 2;
  c.nx = nx;
  c.ny = ny;
  c.lo = {lo, lo};
  c.hi = {hi, hi};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) c.values.push_back(f(c.center(0, i), c.center(1, j)));
  return c;
}

}  // namespace

TEST(Config, DefaultsAndRequiredKeys) {
  const RunConfig c = parse_config("problem = burgers\nn = 10\nk = 2\nt_end = 0.1\n");
  EXPECT_EQ(c.problem, "burgers");
  EXPECT_EQ(c.limiter, LimiterKind::none);
  EXPECT_EQ(c.time_mode, TimeMode::cfl);
  EXPECT_DOUBLE_EQ(c.fixed_dt(), 0.0005);
  EXPECT_EQ(c.error_points, 0);
  EXPECT_TRUE(c.write_field);
  EXPECT_FALSE(c.modal_dump);
  EXPECT_THROW(parse_config("problem = burgers\nn = 10\nk = 2\n"), ConfigError);
}

TEST(Config, BadDegreeNamesTheLine) {
  try {
    parse_config("problem = burgers\nn = 10\n\nk = 5\nt_end = 0.1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("k"), std::string::npos);
  }
}

TEST(Config, RejectsUnknownDuplicateAndMalformed) {
  const std::string base = "problem = burgers\nn = 10\nk = 2\nt_end = 0.1\n";
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of(base + "colour = red\n"), 5);
  EXPECT_EQ(line_of(base + "n = 12\n"), 5);
  EXPECT_EQ(line_of(base + "garbage\n"), 5);
  EXPECT_EQ(line_of(base + "dt = -1\n"), 5);
  EXPECT_EQ(line_of(base + "refinements = 10, 20, 20\n"), 5);
  EXPECT_EQ(line_of(base + "limiter = superbee\n"), 5);
  EXPECT_EQ(line_of(base + "slices = z:0.5\n"), 5);
  EXPECT_EQ(line_of("problem = lava\nn = 10\nk = 2\nt_end = 0.1\n"), 1);
  EXPECT_THROW(parse_config(base + "u_block = 0.5\n"), ConfigError);
}

TEST(Config, RoundTripsThroughCanonicalText) {
  const RunConfig a = parse_config(kExample1);
  EXPECT_EQ(parse_config(serialize_config(a)), a);
  const RunConfig b = parse_config(kSmall2d);
  EXPECT_EQ(parse_config(serialize_config(b)), b);
  RunConfig c = parse_config("problem = burgers\nn = 10\nk = 2\nt_end = 0.1\n");
  c.dt = 0.1 + 0.2;
  c.cfl = 1.0 / 3.0;
  c.refinements = {10, 20, 40};
  c.error_points = 6;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, OverridesReplaceKeys) {
  const RunConfig c = parse_config(kExample1, {"n=101", "limiter = tvb", "m_tvb=10"});
  EXPECT_EQ(c.n, 101);
  EXPECT_EQ(c.limiter, LimiterKind::minmod_tvb);
  EXPECT_EQ(c.m_tvb, 10.0);
  EXPECT_THROW(parse_config(kExample1, {"bogus=1"}), ConfigError);
}

TEST(Config, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1e-3), "0.001");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = d(rng);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Config, MissingFileIsAnIoError) {
  EXPECT_THROW(load_config("/nonexistent/dir/run.cfg"), IoError);
}

TEST(FieldCsv, RoundTripsBitForBit) {
  const fs::path dir = scratch("roundtrip");
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CellField f = grid(7, 5, -1.5, 1.5, [&](double, double) { return d(rng); });
  write_field_csv((dir / "f.csv").string(), f);
  const CellField g = read_field_csv((dir / "f.csv").string());
  EXPECT_EQ(g.dim, 2);
  EXPECT_EQ(g.nx, 7);
  EXPECT_EQ(g.ny, 5);
  EXPECT_EQ(g.values, f.values);
  EXPECT_NEAR(g.lo[0], -1.5, 1e-12);
  EXPECT_NEAR(g.hi[1], 1.5, 1e-12);

  CellField line;
  line.nx = 9;
  line.lo = {0.0, 0.0};
  line.hi = {3.0, 1.0};
  for (int i = 0; i < 9; ++i) line.values.push_back(d(rng));
  write_field_csv((dir / "l.csv").string(), line);
  const CellField h = read_field_csv((dir / "l.csv").string());
  EXPECT_EQ(h.dim, 1);
  EXPECT_EQ(h.values, line.values);

  spit(dir / "bad.csv", "x,value\n0.1,abc\n");
  EXPECT_THROW(read_field_csv((dir / "bad.csv").string()), IoError);
  EXPECT_THROW(read_field_csv((dir / "missing.csv").string()), IoError);
}

TEST(Slices, PositiveSideTieBreakAndErrors) {
  const CellField f = grid(4, 4, 0.0, 1.0, [](double x, double y) { return 10 * x + y; });
  const Slice row = extract_slice(f, 'y', 0.5);
  ASSERT_EQ(row.values.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(row.values[i], f.at(i, 2));
  const Slice col = extract_slice(f, 'x', 0.25);
  for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(col.values[j], f.at(1, j));
  const Slice top = extract_slice(f, 'y', 1.0);
  EXPECT_DOUBLE_EQ(top.values[0], f.at(0, 3));
  EXPECT_THROW(extract_slice(f, 'y', 1.01), DomainError);
  CellField line;
  line.nx = 3;
  line.values = {1, 2, 3};
  EXPECT_THROW(extract_slice(line, 'y', 0.5), std::invalid_argument);
}

TEST(Contours, ConstantFieldHasNoSegments) {
  const CellField f = grid(10, 10, 0.0, 1.0, [](double, double) { return 0.3; });
  EXPECT_TRUE(emit_contours(f, default_contour_levels()).empty());
  const CellField g = grid(10, 10, 0.0, 1.0, [](double x, double) { return x; });
  EXPECT_TRUE(emit_contours(g, {2.0}).empty());
  const auto levels = default_contour_levels();
  ASSERT_EQ(levels.size(), 20u);
  EXPECT_DOUBLE_EQ(levels.front(), 0.025);
  EXPECT_DOUBLE_EQ(levels.back(), 0.975);
}

TEST(Contours, CircleWithinTwoCells) {
  const int n = 60;
  const CellField f = grid(n, n, -1.0, 1.0, [](double x, double y) { return x * x + y * y; });
  const auto segs = emit_contours(f, {0.25});
  ASSERT_FALSE(segs.empty());
  const double h = 2.0 / n;
  for (const auto& s : segs) {
    EXPECT_LE(std::abs(std::hypot(s.x0, s.y0) - 0.5), 2 * h);
    EXPECT_LE(std::abs(std::hypot(s.x1, s.y1) - 0.5), 2 * h);
  }
  for (int a = 0; a < 360; ++a) {
    const double px = 0.5 * std::cos(a * M_PI / 180), py = 0.5 * std::sin(a * M_PI / 180);
    double best = 1e9;
    for (const auto& s : segs) best = std::min({best, std::hypot(s.x0 - px, s.y0 - py), std::hypot(s.x1 - px, s.y1 - py)});
    EXPECT_LE(best, 2 * h);
  }
}

TEST(Driver, RunsAreDeterministicAndManifestsReproduce) {
  const RunConfig cfg = parse_config(kSmall2d);
  const fs::path a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  run_simulation(cfg, a.string());
  run_simulation(cfg, b.string());
  for (const char* name : {"field.csv", "modal.csv", "manifest.txt", "contours.csv", "slice_y_0.75.csv", "slice_x_0.6.csv"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  EXPECT_TRUE(fs::exists(a / "timing.txt"));
  const RunConfig again = load_config((a / "manifest.txt").string());
  EXPECT_EQ(again, cfg);
  run_simulation(again, c.string());
  EXPECT_EQ(slurp(a / "field.csv"), slurp(c / "field.csv"));
  EXPECT_NE(slurp(a / "manifest.txt").find("# steps = "), std::string::npos);
}

TEST(Driver, ConvergenceStudyReportsOrders) {
  const RunConfig cfg = parse_config(
      "problem = burgers\nn = 10\nk = 1\nt_end = 0.1\ntime_mode = fixed\ndt = 0.0005\nrefinements = 10, 20, 40\n");
  const auto rows = convergence_study(cfg);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].order.has_value());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_TRUE(rows[i].order.has_value());
    EXPECT_NEAR(*rows[i].order, std::log2(rows[i - 1].error / rows[i].error), 1e-12);
    EXPECT_GT(*rows[i].order, 1.5);
  }
  RunConfig bad = cfg;
  bad.problem = "mbl1d";
  EXPECT_THROW(convergence_study(bad), ConfigError);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  spit(dir / "ok.cfg", "problem = burgers\nn = 8\nk = 1\nt_end = 0.01\n");
  spit(dir / "bad.cfg", "problem = burgers\nn = 8\nk = 5\nt_end = 0.01\n");
  spit(dir / "cap.cfg", "problem = burgers\nn = 8\nk = 1\nt_end = 0.3\nmax_steps = 2\n");
  const std::string d = dir.string();
  EXPECT_EQ(cli("run --config " + d + "/ok.cfg --out " + d + "/ok"), 0);
  EXPECT_TRUE(fs::exists(dir / "ok" / "field.csv"));
  EXPECT_EQ(cli("run --config " + d + "/bad.cfg"), 1);
  EXPECT_EQ(cli("run --config " + d + "/missing.cfg"), 3);
  EXPECT_EQ(cli("run --config " + d + "/cap.cfg --out " + d + "/cap"), 2);
  EXPECT_EQ(cli("run --config " + d + "/ok.cfg --override k=7"), 1);
  EXPECT_EQ(cli("frobnicate"), 1);
  EXPECT_EQ(cli("twinfo --tau 5 --u-block 0.66"), 0);
  EXPECT_EQ(cli("slice --field " + d + "/nothing.csv --coord 0.5"), 3);

  const RunConfig two = parse_config(kSmall2d, {"out_dir=" + d + "/two", "t_end=0.005"});
  run_simulation(two, two.out_dir);
  EXPECT_EQ(cli("slice --field " + d + "/two/field.csv --axis x --coord 0.6 --out " + d + "/s.csv"), 0);
  EXPECT_EQ(slurp(dir / "s.csv"), slurp(dir / "two" / "slice_x_0.6.csv"));
  EXPECT_EQ(cli("slice --field " + d + "/two/field.csv --coord 9"), 1);
  EXPECT_EQ(cli("contour --field " + d + "/two/field.csv --levels 0.25,0.5 --out " + d + "/c.csv"), 0);
  EXPECT_EQ(slurp(dir / "c.csv"), slurp(dir / "two" / "contours.csv"));
}
