#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mble/limiters.hpp"
#include "mble/problems.hpp"
#include "test_support.hpp"

using namespace mble;

namespace {

SpacePtr line_space(int n, int k, bool periodic = true) { return make_space(UniformMesh({0.0, 1.0}, n, periodic), k); }
SpacePtr square_space(int n, int k) {
  return make_space(UniformMesh({0.0, 1.0}, n, {0.0, 1.0}, n, {true, true}), k);
}

DGSolution random_solution(const SpacePtr& space, std::mt19937& rng) {
  DGSolution s(space);
  s.coefficients() = testing_support::random_vector(rng, space->dof_count());
  return s;
}

LimiterConfig config_for(LimiterKind kind) {
  LimiterConfig c;
  c.kind = kind;
  c.alpha = 1.0;
  return c;
}

const LimiterKind kAll[] = {LimiterKind::minmod_tvb, LimiterKind::weno, LimiterKind::moe};

// Trace of a 1D cell polynomial at xi.
double trace(const DGSolution& s, int c, double xi) { return s.evaluate(c, xi); }

}  // namespace

TEST(Minmod, BasicCases) {
  EXPECT_DOUBLE_EQ(minmod({0.8, 0.2, 0.4}), 0.2);
  EXPECT_DOUBLE_EQ(minmod({-0.8, -0.2, -0.4}), -0.2);
  EXPECT_DOUBLE_EQ(minmod({0.8, -0.2, 0.4}), 0.0);
  EXPECT_DOUBLE_EQ(minmod({0.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(minmod({3.0}), 3.0);
}

TEST(Minmod, TvbThresholdAndReduction) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = d(rng), b = d(rng), c = d(rng);
    EXPECT_DOUBLE_EQ(minmod_tvb({a, b, c}, 0.0, 0.1), minmod({a, b, c}));
  }
  EXPECT_DOUBLE_EQ(minmod_tvb({0.004, -1.0, 1.0}, 1.0, 0.1), 0.004);
  EXPECT_DOUBLE_EQ(minmod_tvb({0.011, 0.5, 1.0}, 1.0, 0.1), 0.011);
  EXPECT_DOUBLE_EQ(minmod_tvb({0.011, -0.5, 1.0}, 1.0, 0.1), 0.0);
}

TEST(MoeCutoff, ClampsAtOne) {
  EXPECT_DOUBLE_EQ(moe_cutoff(0.55), 0.5);
  EXPECT_DOUBLE_EQ(moe_cutoff(2.0), 1.0);
  EXPECT_DOUBLE_EQ(moe_cutoff(0.0), 0.0);
}

TEST(LimiterConfig, ParsingAndValidation) {
  EXPECT_EQ(parse_limiter_kind("tvb"), LimiterKind::minmod_tvb);
  EXPECT_EQ(parse_limiter_kind("minmod_tvb"), LimiterKind::minmod_tvb);
  EXPECT_EQ(parse_limiter_kind("weno"), LimiterKind::weno);
  EXPECT_EQ(parse_limiter_kind("moe"), LimiterKind::moe);
  EXPECT_EQ(parse_limiter_kind("none"), LimiterKind::none);
  EXPECT_THROW(parse_limiter_kind("superbee"), std::invalid_argument);
  for (LimiterKind k : kAll) EXPECT_EQ(parse_limiter_kind(to_string(k)), k);
  LimiterConfig c;
  c.m_tvb = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.alpha = -0.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.weno_eps0 = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Detector, LinearDataIsNeverFlagged) {
  for (int k = 1; k <= 3; ++k) {
    const DGSolution s = project(line_space(20, k, false), [](double x, double) { return 3.0 * x - 1.0; });
    EXPECT_TRUE(detect_troubled(s).empty()) << k;
    auto sq = make_space(UniformMesh({0.0, 1.0}, 6, {0.0, 1.0}, 5), k);
    const DGSolution s2 = project(sq, [](double x, double y) { return 0.5 * x - 2.0 * y; });
    EXPECT_TRUE(detect_troubled(s2).empty()) << k;
  }
}

TEST(Detector, FlagsCellsAtAJump) {
  // Jump inside cell 10; a jump on a face leaves two constant cells that minmod accepts.
  const DGSolution s = project(line_space(20, 2), [](double x, double) { return x < 0.52 ? 1.0 : 0.0; }, 8);
  const auto t = detect_troubled(s);
  EXPECT_NE(std::find(t.begin(), t.end(), 10), t.end());
  EXPECT_LT(t.size(), 20u);
}

TEST(Detector, ConstantFieldsAreQuiet) {
  const DGSolution s = project(square_space(10, 2), [](double, double) { return 0.42; });
  EXPECT_TRUE(detect_troubled(s).empty());
}

TEST(Limiters, PreserveCellAverages) {
  std::mt19937 rng(2024);
  for (LimiterKind kind : kAll)
    for (int k = 1; k <= 3; ++k)
      for (int dim : {1, 2}) {
        const SpacePtr space = dim == 1 ? line_space(15, k) : square_space(6, k);
        for (int trial = 0; trial < 5; ++trial) {
          DGSolution s = random_solution(space, rng);
          const DGSolution before = s;
          LimiterConfig cfg = config_for(kind);
          apply_limiter(s, cfg);
          for (int c = 0; c < space->mesh().cell_count(); ++c)
            EXPECT_NEAR(cell_average(s, c), cell_average(before, c), 1e-13) << to_string(kind) << k << dim;
        }
      }
}

TEST(Limiters, NoneIsIdentity) {
  std::mt19937 rng(5);
  DGSolution s = random_solution(line_space(10, 2), rng);
  const DGSolution before = s;
  EXPECT_EQ(apply_limiter(s, {}), 0u);
  EXPECT_EQ(s.coefficients(), before.coefficients());
}

TEST(Limiters, LinearDataIsAFixedPoint) {
  for (LimiterKind kind : kAll)
    for (int k = 1; k <= 3; ++k) {
      DGSolution s = project(line_space(12, k, false), [](double x, double) { return 1.0 - 2.0 * x; });
      const DGSolution before = s;
      EXPECT_EQ(apply_limiter(s, config_for(kind)), 0u);
      EXPECT_EQ(s.coefficients(), before.coefficients());
    }
}

TEST(MinmodTvb, IdempotentOnRandomData) {
  std::mt19937 rng(77);
  for (int k = 1; k <= 3; ++k)
    for (int dim : {1, 2}) {
      const SpacePtr space = dim == 1 ? line_space(20, k) : square_space(6, k);
      DGSolution s = random_solution(space, rng);
      apply_limiter(s, config_for(LimiterKind::minmod_tvb));
      const DGSolution once = s;
      apply_limiter(s, config_for(LimiterKind::minmod_tvb));
      for (std::size_t i = 0; i < s.coefficients().size(); ++i)
        EXPECT_NEAR(s.coefficients()[i], once.coefficients()[i], 1e-13) << k << " " << dim;
    }
}

TEST(MinmodTvb, TracesStayWithinNeighborAverages) {
  std::mt19937 rng(13);
  for (int k = 1; k <= 3; ++k) {
    DGSolution s = random_solution(line_space(25, k), rng);
    apply_limiter(s, config_for(LimiterKind::minmod_tvb));
    for (int c = 0; c < 25; ++c) {
      const double a = cell_average(s, c);
      const double l = cell_average(s, (c + 24) % 25), r = cell_average(s, (c + 1) % 25);
      const double lo = std::min({a, l, r}), hi = std::max({a, l, r});
      EXPECT_GE(trace(s, c, 1.0), lo - 1e-12);
      EXPECT_LE(trace(s, c, 1.0), hi + 1e-12);
      EXPECT_GE(trace(s, c, 0.0), lo - 1e-12);
      EXPECT_LE(trace(s, c, 0.0), hi + 1e-12);
    }
  }
}

TEST(MinmodTvb, HighOrderTroubledCellsBecomeLinear) {
  const DGSolution s = project(line_space(20, 3), [](double x, double) { return x < 0.5 ? 1.0 : 0.0; }, 8);
  DGSolution lim = s;
  apply_limiter(lim, config_for(LimiterKind::minmod_tvb));
  for (int c : detect_troubled(s))
    for (int l = 2; l <= 3; ++l) EXPECT_EQ(lim.cell(c)[l], 0.0);
}

TEST(Weno, WeightsAreConvexAndReduceToLinearWeights) {
  const std::vector<double> gamma{0.998, 0.001, 0.001};
  const auto w = weno_weights(gamma, std::vector<double>{0.5, 0.5, 0.5}, 1e-6, 2.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(w[i], gamma[i], 1e-14);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> beta{d(rng), d(rng), d(rng), d(rng), d(rng)};
    const std::vector<double> g{0.996, 0.001, 0.001, 0.001, 0.001};
    const auto ww = weno_weights(g, beta, 1e-6, 2.0);
    double s = 0.0;
    for (double v : ww) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-14);
  }
  // A rough stencil loses weight.
  const auto r = weno_weights(gamma, std::vector<double>{100.0, 0.0, 0.0}, 1e-6, 2.0);
  EXPECT_LT(r[0], gamma[0]);
}

TEST(ShiftMatrix, ExactForGlobalPolynomials) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    auto space = make_space(UniformMesh({0.0, 1.0}, 5, {0.0, 1.0}, 5), k);
    double cf[4][4] = {};
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + b <= k; ++b) cf[a][b] = d(rng);
    const DGSolution s = project(space, [&](double x, double y) {
      double v = 0.0;
      for (int a = 0; a <= k; ++a)
        for (int b = 0; a + b <= k; ++b) v += cf[a][b] * std::pow(x, a) * std::pow(y, b);
      return v;
    });
    const int nb = space->dofs_per_cell();
    const int target = space->mesh().cell_index(2, 2);
    const std::pair<std::array<int, 2>, std::array<int, 2>> cases[] = {
        {{+1, 0}, {1, 2}}, {{-1, 0}, {3, 2}}, {{0, +1}, {2, 1}}, {{0, -1}, {2, 3}}, {{+1, +1}, {1, 1}}};
    for (const auto& [offset, ij] : cases) {
      const auto sm = shift_matrix(*space, offset);
      const auto nbr = s.cell(space->mesh().cell_index(ij[0], ij[1]));
      for (int m = 0; m < nb; ++m) {
        double v = 0.0;
        for (int l = 0; l < nb; ++l) v += sm[m * nb + l] * nbr[l];
        EXPECT_NEAR(v, s.cell(target)[m], 1e-12) << k;
      }
    }
  }
}

TEST(Weno, SmoothDataChangesLittle) {
  const DGSolution s = project(line_space(200, 2), [](double x, double) { return std::sin(2 * std::numbers::pi * x); });
  DGSolution lim = s;
  apply_limiter(lim, config_for(LimiterKind::weno));
  double m = 0.0;
  for (std::size_t i = 0; i < s.coefficients().size(); ++i)
    m = std::max(m, std::abs(s.coefficients()[i] - lim.coefficients()[i]));
  EXPECT_LT(m, 1e-4);
}

TEST(Moe, SmoothDataIsLeftAlone) {
  const DGSolution s = project(line_space(400, 2), [](double x, double) { return std::sin(2 * std::numbers::pi * x); });
  DGSolution lim = s;
  LimiterConfig cfg = config_for(LimiterKind::moe);
  cfg.alpha = 0.5;
  apply_limiter(lim, cfg);
  for (std::size_t i = 0; i < s.coefficients().size(); ++i) EXPECT_NEAR(s.coefficients()[i], lim.coefficients()[i], 1e-12);
}

TEST(Moe, ThetaInUnitInterval) {
  std::mt19937 rng(99);
  for (int dim : {1, 2}) {
    const SpacePtr space = dim == 1 ? line_space(30, 2) : square_space(6, 2);
    const DGSolution s = random_solution(space, rng);
    const CellExtrema e = compute_cell_extrema(s);
    LimiterConfig cfg = config_for(LimiterKind::moe);
    cfg.alpha = 0.0;
    bool some_limited = false;
    for (int c = 0; c < space->mesh().cell_count(); ++c) {
      const double th = moe_theta(s, e, c, cfg);
      EXPECT_GE(th, 0.0);
      EXPECT_LE(th, 1.0);
      some_limited = some_limited || th < 1.0;
    }
    EXPECT_TRUE(some_limited);
  }
}

TEST(Moe, LargerToleranceNeverLimitsMore) {
  std::mt19937 rng(31);
  const DGSolution s = random_solution(square_space(8, 2), rng);
  const CellExtrema e = compute_cell_extrema(s);
  LimiterConfig tight = config_for(LimiterKind::moe), loose = tight;
  tight.alpha = 0.1;
  loose.alpha = 10.0;
  for (int c = 0; c < 64; ++c) EXPECT_LE(moe_theta(s, e, c, tight), moe_theta(s, e, c, loose));
}
