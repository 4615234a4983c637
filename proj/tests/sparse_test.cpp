#include "modlcp/sparse.hpp"

#include <gtest/gtest.h>

#include <random>

#include "modlcp/problem.hpp"
#include "test_support.hpp"

namespace modlcp {
namespace {

using testing::Dense;
using testing::Vec;

CsrMatrix<double> two_by_two() { return CsrMatrix<double>::from_dense((Dense(2, 2) << 4, -1, -1, 4).finished()); }

TEST(CsrMatrix, RejectsBrokenInvariants) {
  EXPECT_THROW(CsrMatrix<double>(0, {0}, {}, {}), InvalidArgument);
  EXPECT_THROW(CsrMatrix<double>(2, {0, 1}, {0}, {1.0}), InvalidArgument);             // short offsets
  EXPECT_THROW(CsrMatrix<double>(2, {1, 1, 1}, {0}, {1.0}), InvalidArgument);          // offsets[0] != 0
  EXPECT_THROW(CsrMatrix<double>(2, {0, 2, 1}, {0, 1}, {1.0, 1.0}), InvalidArgument);  // decreasing
  EXPECT_THROW(CsrMatrix<double>(2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), InvalidArgument);  // col out of range
  EXPECT_THROW(CsrMatrix<double>(2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), InvalidArgument);  // unsorted row
  EXPECT_THROW(CsrMatrix<double>(2, {0, 2, 2}, {0, 0}, {1.0, 1.0}), InvalidArgument);  // duplicate
  EXPECT_NO_THROW(CsrMatrix<double>(2, {0, 2, 3}, {0, 1, 1}, {1.0, 0.0, 1.0}));        // explicit zero is fine
}

TEST(CsrMatrix, FromTripletsSumsDuplicates) {
  const auto a = CsrMatrix<double>::from_triplets(2, {{1, 0, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}});
  EXPECT_EQ(a.nnz(), 2);
  EXPECT_EQ(a.coeff(1, 0), 4.0);
  EXPECT_EQ(a.coeff(0, 1), 2.0);
  EXPECT_EQ(a.coeff(0, 0), 0.0);
  EXPECT_THROW(CsrMatrix<double>::from_triplets(2, {{2, 0, 1.0}}), InvalidArgument);
}

TEST(Matvec, IdentityAndRowSums) {
  EXPECT_EQ(matvec(CsrMatrix<double>::identity(2), Vec{{3.0, -1.0}}), (Vec{{3.0, -1.0}}));
  EXPECT_EQ(two_by_two() * Vec::Ones(2), (Vec{{3.0, 3.0}}));
}

TEST(Matvec, MatchesDenseMultiplyOnBenchmarkMatrix) {
  const auto p = gen_example1<double>(2, 4.0);
  const Vec x{{1.0, 2.0, 1.0, 2.0}};
  const Vec expected = testing::dense_example1(2, 4.0) * x;
  EXPECT_EQ(matvec(p.matrix(), x), expected);
  EXPECT_EQ(expected, (Vec{{5.0, 13.0, 5.0, 13.0}}));
}

TEST(Matvec, DimensionMismatchThrows) { EXPECT_THROW(matvec(two_by_two(), Vec::Ones(3)), DimensionMismatch); }

TEST(Matvec, IsLinear) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = CsrMatrix<double>::from_dense(testing::random_h_plus(12, rng, 0.4));
    const Vec x = testing::random_vector(12, rng), y = testing::random_vector(12, rng);
    const Vec lhs = matvec(a, x + y);
    const Vec rhs = matvec(a, x) + matvec(a, y);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, lhs.norm()));
  }
}

TEST(SplitDlu, SignConvention) {
  const auto [d, l, u] = split_dlu(two_by_two());
  EXPECT_EQ(d.entries(), (Vec{{4.0, 4.0}}));
  EXPECT_EQ(l.to_dense(), (Dense(2, 2) << 0, 0, 1, 0).finished());
  EXPECT_EQ(u.to_dense(), (Dense(2, 2) << 0, 1, 0, 0).finished());
}

TEST(SplitDlu, Identity) {
  const auto [d, l, u] = split_dlu(CsrMatrix<double>::identity(3));
  EXPECT_EQ(d.entries(), Vec::Ones(3));
  EXPECT_EQ(l.nnz(), 0);
  EXPECT_EQ(u.nnz(), 0);
}

TEST(SplitDlu, ReconstructsExactly) {
  std::mt19937 rng(3);
  std::vector<CsrMatrix<double>> cases = {gen_example1<double>(2, 4.0).matrix(), gen_example2<double>(4, 0.0).matrix()};
  for (int k = 0; k < 20; ++k) cases.push_back(CsrMatrix<double>::from_dense(testing::random_spd(6, rng)));
  for (const auto& a : cases) {
    const auto [d, l, u] = split_dlu(a);
    const Dense rebuilt = Dense(d.entries().asDiagonal()) - l.to_dense() - u.to_dense();
    EXPECT_EQ(rebuilt, a.to_dense());
  }
}

TEST(SplitDlu, MissingDiagonalBecomesZero) {
  const auto a = CsrMatrix<double>::from_triplets(2, {{0, 1, 1.0}, {1, 1, 2.0}});
  EXPECT_EQ(split_dlu(a).d.entries(), (Vec{{0.0, 2.0}}));
}

TEST(LowerTriangularSolve, HandExamples) {
  EXPECT_EQ(lower_triangular_solve(CsrMatrix<double>::diagonal(Vec{{2.0, 4.0}}), Vec{{2.0, 8.0}}), (Vec{{1.0, 2.0}}));
  const auto t = CsrMatrix<double>::from_dense((Dense(2, 2) << 1, 0, -1, 1).finished());
  EXPECT_EQ(lower_triangular_solve(t, Vec{{1.0, 0.0}}), (Vec{{1.0, 1.0}}));
}

TEST(LowerTriangularSolve, Errors) {
  EXPECT_THROW(lower_triangular_solve(two_by_two(), Vec::Ones(2)), NotLowerTriangular);
  const auto singular = CsrMatrix<double>::from_triplets(2, {{0, 0, 1.0}, {1, 0, 1.0}});
  try {
    lower_triangular_solve(singular, Vec::Ones(2));
    FAIL() << "expected ZeroDiagonal";
  } catch (const ZeroDiagonal& e) {
    EXPECT_EQ(e.row(), 1);
  }
  EXPECT_THROW(lower_triangular_solve(CsrMatrix<double>::identity(2), Vec::Ones(3)), DimensionMismatch);
}

TEST(LowerTriangularSolve, MultiplyBackRecoversRhs) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    // 8x8, unit-magnitude diagonal with random sign.
    Dense t = Dense::Zero(8, 8);
    for (Index i = 0; i < 8; ++i) {
      t(i, i) = u(rng) < 0 ? -1.0 : 1.0;
      for (Index j = 0; j < i; ++j) t(i, j) = 0.1 * u(rng);
    }
    const auto ts = CsrMatrix<double>::from_dense(t);
    const Vec b = testing::random_vector(8, rng);
    const Vec x = lower_triangular_solve(ts, b);
    EXPECT_LE((matvec(ts, x) - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LowerTriangularSolve, DiagonallyDominantRelativeError) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Dense full = testing::random_h_plus(40, rng, 0.3);
    const auto t = CsrMatrix<double>::from_dense(Dense(full.triangularView<Eigen::Lower>()));
    const Vec b = testing::random_vector(40, rng);
    const Vec x = lower_triangular_solve(t, b);
    EXPECT_LE((matvec(t, x) - b).norm() / b.norm(), 1e-10);
  }
}

TEST(Combine, UnionPatternAndCancellation) {
  const auto a = two_by_two();
  const auto zero = a - a;
  EXPECT_EQ(zero.nnz(), 0);
  const auto sum = a + CsrMatrix<double>::identity(2);
  EXPECT_EQ(sum.to_dense(), (Dense(2, 2) << 5, -1, -1, 5).finished());
  EXPECT_EQ((2.0 * a).coeff(0, 1), -2.0);
  EXPECT_EQ(cwise_abs(a).coeff(1, 0), 1.0);
  EXPECT_TRUE(strictly_lower(a).is_lower_triangular());
  EXPECT_FALSE(a.is_lower_triangular());
}

TEST(CsrMatrix, WorksWithLongDouble) {
  const auto a = CsrMatrix<long double>::from_dense((DenseMatrix<long double>(2, 2) << 2, 0, 1, 4).finished());
  const Vector<long double> x = lower_triangular_solve(a, Vector<long double>{{2.0L, 5.0L}});
  EXPECT_EQ(x(0), 1.0L);
  EXPECT_EQ(x(1), 1.0L);
}

}  // namespace
}  // namespace modlcp
