#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mble/basis.hpp"
#include "mble/quadrature.hpp"
#include "test_support.hpp"

using namespace mble;
using testing_support::orthonormal_polys;

TEST(GaussLegendre, WeightsSumToOneAndPointsInsideUnitInterval) {
  for (int n = 1; n <= 64; ++n) {
    const QuadratureRule q = gauss_legendre(n);
    ASSERT_EQ(q.size(), n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(q.points[i], 0.0);
      EXPECT_LT(q.points[i], 1.0);
      s += q.weights[i];
    }
    EXPECT_NEAR(s, 1.0, 1e-14) << n;
  }
}

TEST(GaussLegendre, ExactThroughDegreeTwoNMinusOne) {
  for (int n = 1; n <= 10; ++n) {
    const QuadratureRule q = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.points[i], p);
      EXPECT_NEAR(s, 1.0 / (p + 1), 1e-14) << "n=" << n << " p=" << p;
    }
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.points[i], 2 * n);
    EXPECT_GT(std::abs(s - 1.0 / (2 * n + 1)), 1e-12) << "degree 2n must not be exact";
  }
}

TEST(GaussLegendre, RejectsBadPointCounts) {
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
  EXPECT_THROW(gauss_legendre(65), std::invalid_argument);
}

TEST(Legendre, MatchesGramSchmidtOracleWithDerivatives) {
  const auto polys = orthonormal_polys(3);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = u(rng);
    for (int d = 0; d <= 3; ++d) {
      auto p = polys[d];
      for (int order = 0; order <= 3; ++order) {
        EXPECT_NEAR(legendre(d, x, order), p(x), 1e-10) << "degree " << d << " derivative " << order;
        p = p.derivative();
      }
    }
  }
}

TEST(Legendre, KnownValues) {
  EXPECT_DOUBLE_EQ(legendre(0, 0.3), 1.0);
  EXPECT_NEAR(legendre(1, 1.0), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(legendre(2, 0.5), -std::sqrt(5.0) / 2.0, 1e-15);
  EXPECT_NEAR(legendre(3, 0.0), -std::sqrt(7.0), 1e-14);
  EXPECT_THROW(legendre(4, 0.5), std::invalid_argument);
  EXPECT_THROW(legendre(1, 0.5, -1), std::invalid_argument);
}

TEST(ReferenceBasis, SizesAndOrdering) {
  EXPECT_EQ(ReferenceBasis(1, 1).size(), 2);
  EXPECT_EQ(ReferenceBasis(1, 3).size(), 4);
  EXPECT_EQ(ReferenceBasis(2, 1).size(), 3);
  EXPECT_EQ(ReferenceBasis(2, 2).size(), 6);
  EXPECT_EQ(ReferenceBasis(2, 3).size(), 10);
  const ReferenceBasis b(2, 2);
  const int expect[6][2] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}};
  for (int l = 0; l < 6; ++l) {
    EXPECT_EQ(b.index(l).x, expect[l][0]);
    EXPECT_EQ(b.index(l).y, expect[l][1]);
  }
  EXPECT_NEAR(b.eval(4, 0.75, 0.75), 0.75, 1e-15);
  EXPECT_NEAR(ReferenceBasis(1, 2).eval(2, 0.5), -std::sqrt(5.0) / 2.0, 1e-15);
}

TEST(ReferenceBasis, RejectsBadArguments) {
  EXPECT_THROW(ReferenceBasis(2, 0), std::invalid_argument);
  EXPECT_THROW(ReferenceBasis(1, 4), std::invalid_argument);
  EXPECT_THROW(ReferenceBasis(3, 1), std::invalid_argument);
  const ReferenceBasis b(1, 2);
  EXPECT_THROW(b.index(3), std::out_of_range);
  EXPECT_THROW(b.index(-1), std::out_of_range);
}

class BasisOrthonormality : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(BasisOrthonormality, GramMatrixIsIdentity) {
  const auto [dim, k] = GetParam();
  const ReferenceBasis b(dim, k);
  const QuadratureRule q = gauss_legendre(k + 1);
  const int ny = dim == 2 ? q.size() : 1;
  for (int l = 0; l < b.size(); ++l)
    for (int m = 0; m < b.size(); ++m) {
      double s = 0.0;
      for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < ny; ++j) {
          const double w = q.weights[i] * (dim == 2 ? q.weights[j] : 1.0);
          const double eta = dim == 2 ? q.points[j] : 0.5;
          s += w * b.eval(l, q.points[i], eta) * b.eval(m, q.points[i], eta);
        }
      EXPECT_NEAR(s, l == m ? 1.0 : 0.0, 1e-13) << l << "," << m;
    }
}

INSTANTIATE_TEST_SUITE_P(AllSpaces, BasisOrthonormality,
                         ::testing::Values(std::pair{1, 1}, std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 1},
                                           std::pair{2, 2}, std::pair{2, 3}));

TEST(ReferenceBasis, GradientAndMixedDerivativesAgreeWithFiniteDifferences) {
  const ReferenceBasis b(2, 3);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const double x = u(rng), y = u(rng);
    for (int l = 0; l < b.size(); ++l) {
      const auto g = b.grad(l, x, y);
      EXPECT_NEAR(g[0], (b.eval(l, x + h, y) - b.eval(l, x - h, y)) / (2 * h), 1e-7);
      EXPECT_NEAR(g[1], (b.eval(l, x, y + h) - b.eval(l, x, y - h)) / (2 * h), 1e-7);
      EXPECT_NEAR(b.derivative(l, 1, 0, x, y), g[0], 1e-13);
      EXPECT_NEAR(b.derivative(l, 0, 1, x, y), g[1], 1e-13);
      const double mixed = (b.eval(l, x + h, y + h) - b.eval(l, x + h, y - h) - b.eval(l, x - h, y + h) +
                            b.eval(l, x - h, y - h)) / (4 * h * h);
      EXPECT_NEAR(b.derivative(l, 1, 1, x, y), mixed, 1e-4);
    }
  }
}
