#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "modlcp/sparse.hpp"

namespace modlcp {

/// LCP(q, A): find z >= 0 with w = A z + q >= 0 and z'w = 0.
template <typename Scalar>
class LcpProblem {
 public:
  LcpProblem(CsrMatrix<Scalar> a, Vector<Scalar> q) : a_(std::move(a)), q_(std::move(q)) {
    if (q_.size() != a_.size())
      throw DimensionMismatch("LCP: q has length " + std::to_string(q_.size()) + ", matrix is " +
                              std::to_string(a_.size()) + "x" + std::to_string(a_.size()));
  }

  Index size() const noexcept { return a_.size(); }
  const CsrMatrix<Scalar>& matrix() const noexcept { return a_; }
  const Vector<Scalar>& q() const noexcept { return q_; }

  /// w = A z + q.
  template <typename Derived>
  Vector<Scalar> slack(const Eigen::MatrixBase<Derived>& z) const {
    return matvec(a_, z) + q_;
  }

 private:
  CsrMatrix<Scalar> a_;
  Vector<Scalar> q_;
};

/// A candidate z together with its cached slack w = A z + q.
template <typename Scalar>
struct Solution {
  Vector<Scalar> z;
  Vector<Scalar> w;
};

template <typename Scalar, typename Derived>
Solution<Scalar> make_solution(const LcpProblem<Scalar>& p, const Eigen::MatrixBase<Derived>& z) {
  return {z, p.slack(z)};
}

/// ||min(z, A z + q)||_2, zero exactly at solutions.
template <typename Scalar, typename Derived>
Scalar residual(const LcpProblem<Scalar>& p, const Eigen::MatrixBase<Derived>& z) {
  if (z.size() != p.size()) throw DimensionMismatch("residual: z has the wrong length");
  const Vector<Scalar> w = p.slack(z);
  return z.derived().cwiseMin(w).norm();
}

/// a + b == |a - b| up to `tol` in the max norm, which is equivalent to
/// a >= 0, b >= 0, a'b = 0.
template <typename Scalar, typename DerivedA, typename DerivedB>
bool is_complementary_pair(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b, Scalar tol) {
  if (a.size() != b.size()) throw DimensionMismatch("is_complementary_pair: length mismatch");
  if (a.size() == 0) return true;
  const Scalar gap = ((a + b) - (a - b).cwiseAbs()).cwiseAbs().maxCoeff();
  return gap <= tol;
}

/// (1, 2, 1, 2, ...) truncated at n; the known solution of the benchmark
/// families.
template <typename Scalar = double>
Vector<Scalar> alternating_solution(Index n) {
  Vector<Scalar> z(n);
  for (Index i = 0; i < n; ++i) z(i) = (i % 2 == 0) ? Scalar(1) : Scalar(2);
  return z;
}

/// (1, 0, 1, 0, ...), the benchmark starting vector for s.
template <typename Scalar = double>
Vector<Scalar> alternating_start(Index n) {
  Vector<Scalar> s(n);
  for (Index i = 0; i < n; ++i) s(i) = (i % 2 == 0) ? Scalar(1) : Scalar(0);
  return s;
}

/// Couplings of a block-tridiagonal benchmark matrix with m x m blocks, each
/// block being tridiagonal (diagonal blocks) or a multiple of the identity
/// (off-diagonal blocks).
template <typename Scalar>
struct BlockTridiagonalCoefficients {
  Scalar diagonal;       // centre of the diagonal block
  Scalar inner_lower;    // sub-diagonal of the diagonal block
  Scalar inner_upper;    // super-diagonal of the diagonal block
  Scalar block_lower;    // multiple of I on the block sub-diagonal
  Scalar block_upper;    // multiple of I on the block super-diagonal
};

template <typename Scalar>
CsrMatrix<Scalar> block_tridiagonal(Index m, const BlockTridiagonalCoefficients<Scalar>& c) {
  if (m < 1) throw InvalidArgument("block size must be >= 1");
  const Index n = m * m;
  std::vector<Index> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> cols;
  std::vector<Scalar> vals;
  cols.reserve(static_cast<std::size_t>(5 * n));
  vals.reserve(static_cast<std::size_t>(5 * n));
  for (Index block = 0; block < m; ++block) {
    for (Index local = 0; local < m; ++local) {
      const Index row = block * m + local;
      if (block > 0) {
        cols.push_back(row - m);
        vals.push_back(c.block_lower);
      }
      if (local > 0) {
        cols.push_back(row - 1);
        vals.push_back(c.inner_lower);
      }
      cols.push_back(row);
      vals.push_back(c.diagonal);
      if (local + 1 < m) {
        cols.push_back(row + 1);
        vals.push_back(c.inner_upper);
      }
      if (block + 1 < m) {
        cols.push_back(row + m);
        vals.push_back(c.block_upper);
      }
      offsets[row + 1] = static_cast<Index>(cols.size());
    }
  }
  return CsrMatrix<Scalar>(n, std::move(offsets), std::move(cols), std::move(vals));
}

namespace detail {

template <typename Scalar>
LcpProblem<Scalar> benchmark_problem(Index m, Scalar delta, BlockTridiagonalCoefficients<Scalar> c) {
  if (m < 2) throw InvalidArgument("benchmark problems need m >= 2, got " + std::to_string(m));
  if (!(delta >= Scalar(0))) throw InvalidArgument("delta must be nonnegative");
  c.diagonal += delta;
  CsrMatrix<Scalar> a = block_tridiagonal(m, c);
  Vector<Scalar> q = -matvec(a, alternating_solution<Scalar>(a.size()));
  return LcpProblem<Scalar>(std::move(a), std::move(q));
}

}  // namespace detail

/// Symmetric family: diagonal blocks tridiag(-1, 4, -1), off-diagonal blocks
/// -I, shifted by delta*I; n = m^2 and q = -A (1,2,1,2,...).
template <typename Scalar = double>
LcpProblem<Scalar> gen_example1(Index m, Scalar delta) {
  return detail::benchmark_problem<Scalar>(m, delta, {Scalar(4), Scalar(-1), Scalar(-1), Scalar(-1), Scalar(-1)});
}

/// Nonsymmetric family: lower couplings -1.5, upper couplings -0.5, both
/// inside the diagonal blocks and between blocks.
template <typename Scalar = double>
LcpProblem<Scalar> gen_example2(Index m, Scalar delta) {
  return detail::benchmark_problem<Scalar>(m, delta,
                                           {Scalar(4), Scalar(-1.5), Scalar(-0.5), Scalar(-1.5), Scalar(-0.5)});
}

}  // namespace modlcp
