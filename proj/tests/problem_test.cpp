#include "modlcp/problem.hpp"

#include <gtest/gtest.h>

#include <random>

#include "modlcp/certify.hpp"
#include "test_support.hpp"

namespace modlcp {
namespace {

using testing::Dense;
using testing::Vec;

TEST(Residual, ZeroStartWithNonnegativeQ) {
  const LcpProblem<double> p(CsrMatrix<double>::identity(3), Vec{{0.5, 0.0, 2.0}});
  EXPECT_EQ(residual(p, Vec::Zero(3)), 0.0);
}

TEST(Residual, HandExampleMatchesDenseOracle) {
  const Dense a = (Dense(2, 2) << 2, 0, 0, 2).finished();
  const Vec q{{-1.0, -3.0}}, z{{1.0, 0.0}};
  const LcpProblem<double> p(CsrMatrix<double>::from_dense(a), q);
  const double oracle = z.cwiseMin(a * z + q).norm();
  EXPECT_DOUBLE_EQ(residual(p, z), oracle);
  EXPECT_DOUBLE_EQ(residual(p, z), std::sqrt(10.0));
}

TEST(Residual, DimensionMismatch) {
  const LcpProblem<double> p(CsrMatrix<double>::identity(2), Vec::Zero(2));
  EXPECT_THROW(residual(p, Vec::Zero(3)), DimensionMismatch);
  EXPECT_THROW(LcpProblem<double>(CsrMatrix<double>::identity(2), Vec::Zero(3)), DimensionMismatch);
}

TEST(ComplementaryPair, Examples) {
  EXPECT_TRUE(is_complementary_pair(Vec{{1.0, 0.0}}, Vec{{0.0, 2.0}}, 1e-12));
  EXPECT_FALSE(is_complementary_pair(Vec{{1.0, 1.0}}, Vec{{1.0, 0.0}}, 1e-12));
  EXPECT_TRUE(is_complementary_pair(Vec::Zero(2), Vec::Zero(2), 0.0));
  EXPECT_FALSE(is_complementary_pair(Vec{{-1.0}}, Vec{{0.0}}, 1e-12));
}

TEST(ComplementaryPair, AgreesWithDirectCheckOnRandomPairs) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> kind(0, 3);
  const double tol = 1e-6;
  int agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = 6;
    Vec a = testing::random_vector(n, rng, 0.0, 1.0), b = testing::random_vector(n, rng, 0.0, 1.0);
    // Mix of exact complementary pairs, violated pairs and sign violations.
    switch (kind(rng)) {
      case 0:
        for (Index i = 0; i < n; ++i) (i % 2 ? a(i) : b(i)) = 0.0;
        break;
      case 1:
        for (Index i = 0; i < n; ++i) (i % 2 ? a(i) : b(i)) = 0.0;
        a(0) = -0.5;
        break;
      case 2: break;
      default:
        for (Index i = 0; i < n; ++i) (i % 2 ? a(i) : b(i)) = 0.0;
        b(1) = 1e-3;
    }
    const bool direct = (a.array() >= -tol).all() && (b.array() >= -tol).all() &&
                        (a.array() * b.array()).abs().maxCoeff() <= tol;
    if (direct == is_complementary_pair(a, b, tol)) ++agree;
  }
  EXPECT_EQ(agree, 1000);
}

TEST(Patterns, AlternatingVectors) {
  EXPECT_EQ(alternating_solution(5), (Vec{{1.0, 2.0, 1.0, 2.0, 1.0}}));
  EXPECT_EQ(alternating_start(4), (Vec{{1.0, 0.0, 1.0, 0.0}}));
}

TEST(GenExample1, SmallestCase) {
  const Dense expected = (Dense(4, 4) << 4, -1, -1, 0, -1, 4, 0, -1, -1, 0, 4, -1, 0, -1, -1, 4).finished();
  EXPECT_EQ(gen_example1<double>(2, 0.0).matrix().to_dense(), expected);
}

TEST(GenExample1, ShiftedCaseAndQ) {
  const auto p = gen_example1<double>(2, 4.0);
  const Dense a = testing::dense_example1(2, 4.0);
  EXPECT_EQ(p.matrix().to_dense(), a);
  EXPECT_EQ(p.q(), Vec(-a * alternating_solution(4)));
}

TEST(GenExample2, SmallestCase) {
  const Dense expected =
      (Dense(4, 4) << 4, -0.5, -0.5, 0, -1.5, 4, 0, -0.5, -1.5, 0, 4, -0.5, 0, -1.5, -1.5, 4).finished();
  EXPECT_EQ(gen_example2<double>(2, 0.0).matrix().to_dense(), expected);
  EXPECT_EQ(gen_example2<double>(2, 4.0).matrix().diagonal(), Vec::Constant(4, 8.0));
}

TEST(Generators, MatchDenseReferenceAtM10) {
  EXPECT_EQ(gen_example1<double>(10, 4.0).matrix().to_dense(), testing::dense_example1(10, 4.0));
  EXPECT_EQ(gen_example2<double>(10, 4.0).matrix().to_dense(), testing::dense_example2(10, 4.0));
}

TEST(Generators, SymmetryAndDiagonal) {
  const Dense a1 = gen_example1<double>(5, 4.0).matrix().to_dense();
  const Dense a2 = gen_example2<double>(5, 4.0).matrix().to_dense();
  EXPECT_EQ(a1, a1.transpose());
  EXPECT_NE(a2, a2.transpose());
  EXPECT_TRUE((a1.diagonal().array() == 8.0).all());
  EXPECT_TRUE((a2.diagonal().array() == 8.0).all());
}

TEST(Generators, StrictlyDiagonallyDominantAtM10) {
  for (const auto& p : {gen_example1<double>(10, 4.0), gen_example2<double>(10, 4.0)}) {
    const Dense a = p.matrix().to_dense();
    for (Index i = 0; i < a.rows(); ++i) {
      const double off = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      EXPECT_LE(off, 4.0);
      EXPECT_GT(a(i, i), off);
    }
  }
}

TEST(Generators, KnownSolutionHasZeroResidual) {
  for (Index m : {2, 3, 10, 30}) {
    EXPECT_LE(residual(gen_example1<double>(m, 4.0), alternating_solution(m * m)), 1e-10);
    EXPECT_LE(residual(gen_example2<double>(m, 4.0), alternating_solution(m * m)), 1e-10);
  }
}

TEST(Generators, HPlusAtSmallN) {
  for (Index m : {2, 3, 4}) {
    EXPECT_TRUE(test_h_plus_matrix(gen_example1<double>(m, 4.0).matrix()).holds());
    EXPECT_TRUE(test_h_plus_matrix(gen_example2<double>(m, 4.0).matrix()).holds());
  }
}

TEST(Generators, RejectBadArguments) {
  EXPECT_THROW(gen_example1<double>(1, 4.0), InvalidArgument);
  EXPECT_THROW(gen_example2<double>(0, 4.0), InvalidArgument);
  EXPECT_THROW(gen_example1<double>(3, -1.0), InvalidArgument);
}

}  // namespace
}  // namespace modlcp
