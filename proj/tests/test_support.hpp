#pragma once

// Test-only generators and dense reference computations. Nothing here calls
// into the sparse kernels under test.

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "modlcp/problem.hpp"
#include "modlcp/sparse.hpp"
#include "modlcp/splitting.hpp"

namespace modlcp::testing {

using Dense = DenseMatrix<double>;
using Vec = Vector<double>;

inline Dense dense_example1(Index m, double delta) {
  const Index n = m * m;
  Dense a = Dense::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    a(i, i) = 4.0 + delta;
    const Index local = i % m;
    if (local > 0) a(i, i - 1) = -1.0;
    if (local + 1 < m) a(i, i + 1) = -1.0;
    if (i >= m) a(i, i - m) = -1.0;
    if (i + m < n) a(i, i + m) = -1.0;
  }
  return a;
}

inline Dense dense_example2(Index m, double delta) {
  const Index n = m * m;
  Dense a = Dense::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    a(i, i) = 4.0 + delta;
    const Index local = i % m;
    if (local > 0) a(i, i - 1) = -1.5;
    if (local + 1 < m) a(i, i + 1) = -0.5;
    if (i >= m) a(i, i - m) = -1.5;
    if (i + m < n) a(i, i + m) = -0.5;
  }
  return a;
}

/// Strictly diagonally dominant, positive diagonal, random off-diagonal signs
/// and sparsity: an H+-matrix and therefore a P-matrix.
inline Dense random_h_plus(Index n, std::mt19937& rng, double density = 0.6) {
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 2.0);
  Dense a = Dense::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (i == j || unit(rng) > density) continue;
      a(i, j) = (unit(rng) < 0.5 ? -1.0 : 1.0) * mag(rng);
      off += std::abs(a(i, j));
    }
    a(i, i) = off + margin(rng);
  }
  return a;
}

/// Diagonally dominant Z-matrix with positive diagonal: an M-matrix.
inline Dense random_m_matrix(Index n, std::mt19937& rng) {
  Dense a = random_h_plus(n, rng);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) a(i, j) = -std::abs(a(i, j));
  return a;
}

/// B B' + c I: symmetric positive definite, hence P, usually not an H-matrix.
inline Dense random_spd(Index n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Dense b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = g(rng);
  return b * b.transpose() + 0.5 * Dense::Identity(n, n);
}

inline Vec random_vector(Index n, std::mt19937& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

/// Random P-matrix LCP; alternates between the H+ and SPD generators.
inline LcpProblem<double> random_p_lcp(Index n, std::mt19937& rng, bool h_plus) {
  const Dense a = h_plus ? random_h_plus(n, rng) : random_spd(n, rng);
  return LcpProblem<double>(CsrMatrix<double>::from_dense(a), random_vector(n, rng, -2.0, 2.0));
}

inline double max_abs(const Dense& a) { return a.cwiseAbs().maxCoeff(); }

/// s* = r (z - Omega^-1 w) / 2 built from a solution pair; recover_z(s*) = z.
inline Vec fixed_point_s(const SplittingSpec<double>& spec, const Vec& z, const Vec& w) {
  return spec.r * (z - w.cwiseQuotient(spec.omega.entries())) / 2.0;
}

/// Infinity-norm defect of lhs s - (rhs_s s + rhs_abs |s| + rhs_const), dense.
inline double fixed_point_defect(const IterationOperator<double>& op, const Vec& s) {
  const Vec lhs = op.lhs.to_dense() * s;
  const Vec rhs = op.rhs_s.to_dense() * s + op.rhs_abs.to_dense() * s.cwiseAbs() + op.rhs_const;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace modlcp::testing
