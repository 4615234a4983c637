#pragma once

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modlcp/problem.hpp"
#include "modlcp/splitting.hpp"

namespace modlcp {

/// Thresholds shared by every classification test.
struct CertifyOptions {
  Index dense_limit = 400;   // largest n for dense inverses and the contraction matrix
  Index p_limit = 12;        // largest n for principal-minor enumeration
  double sign_tol = 1e-10;   // entrywise sign tests
  double minor_tol = 1e-12;  // principal minors must exceed this
  double spectral_tol = 1e-10;
  int spectral_max_iters = 100000;
  int sufficient_test_sweeps = 10000;
};

enum class Verdict { Yes, No, Indeterminate, Singular };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Indeterminate: return "indeterminate";
    case Verdict::Singular: return "singular";
  }
  return "?";
}

struct MatrixTest {
  Verdict verdict;
  std::string note;

  bool holds() const noexcept { return verdict == Verdict::Yes; }
};

/// <A>: |a_ii| on the diagonal, -|a_ij| elsewhere.
template <typename Scalar>
CsrMatrix<Scalar> comparison_matrix(const CsrMatrix<Scalar>& a) {
  std::vector<Scalar> vals(a.values().begin(), a.values().end());
  for (Index i = 0; i < a.size(); ++i) {
    for (Index k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k) {
      const Scalar mag = std::abs(vals[k]);
      vals[k] = a.col_indices()[k] == i ? mag : -mag;
    }
  }
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  return CsrMatrix<Scalar>(a.size(), {offsets.begin(), offsets.end()}, {cols.begin(), cols.end()}, std::move(vals));
}

template <typename Scalar>
bool is_z_matrix(const CsrMatrix<Scalar>& a) {
  for (Index i = 0; i < a.size(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] != i && vals[k] > Scalar(0)) return false;
  }
  return true;
}

namespace detail {

// Looks for v > 0 with A v > 0 by running Gauss-Seidel on A v = e. Success
// proves a Z-matrix is an M-matrix; failure proves nothing.
template <typename Scalar>
MatrixTest positive_vector_test(const CsrMatrix<Scalar>& a, const CertifyOptions& opt) {
  const Index n = a.size();
  const Vector<Scalar> d = a.diagonal();
  if ((d.array() <= Scalar(0)).any()) return {Verdict::No, "nonpositive diagonal entry"};
  Vector<Scalar> v = Vector<Scalar>::Zero(n);
  for (int sweep = 0; sweep < opt.sufficient_test_sweeps; ++sweep) {
    for (Index i = 0; i < n; ++i) {
      Scalar sum(1);
      const auto cols = a.row_cols(i);
      const auto vals = a.row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k)
        if (cols[k] != i) sum -= vals[k] * v(cols[k]);
      v(i) = sum / d(i);
    }
    if (!v.allFinite()) break;
    const Vector<Scalar> av = matvec(a, v);
    if ((v.array() > Scalar(0)).all() && (av.array() > Scalar(0)).all())
      return {Verdict::Yes, "positive vector v with A v > 0 found after " + std::to_string(sweep + 1) + " sweeps"};
  }
  return {Verdict::Indeterminate, "sufficient positive-vector test failed; M-property undecided at n=" +
                                      std::to_string(n)};
}

}  // namespace detail

/// Z-matrix with a nonnegative inverse. Dense inverse up to `dense_limit`,
/// the positive-vector sufficient test beyond it.
template <typename Scalar>
MatrixTest test_m_matrix(const CsrMatrix<Scalar>& a, const CertifyOptions& opt = {}) {
  if (!is_z_matrix(a)) return {Verdict::No, "not a Z-matrix"};
  if (a.size() > opt.dense_limit) return detail::positive_vector_test(a, opt);
  Eigen::FullPivLU<DenseMatrix<Scalar>> lu(a.to_dense());
  if (!lu.isInvertible()) return {Verdict::Singular, "matrix is singular"};
  const Scalar smallest = lu.inverse().minCoeff();
  if (smallest >= -Scalar(opt.sign_tol)) return {Verdict::Yes, ""};
  return {Verdict::No, "inverse has a negative entry (" + std::to_string(double(smallest)) + ")"};
}

template <typename Scalar>
bool is_m_matrix(const CsrMatrix<Scalar>& a, const CertifyOptions& opt = {}) {
  return test_m_matrix(a, opt).holds();
}

/// <A> is an M-matrix.
template <typename Scalar>
MatrixTest test_h_matrix(const CsrMatrix<Scalar>& a, const CertifyOptions& opt = {}) {
  return test_m_matrix(comparison_matrix(a), opt);
}

/// H-matrix with a positive diagonal.
template <typename Scalar>
MatrixTest test_h_plus_matrix(const CsrMatrix<Scalar>& a, const CertifyOptions& opt = {}) {
  if ((a.diagonal().array() <= Scalar(0)).any()) return {Verdict::No, "nonpositive diagonal entry"};
  return test_h_matrix(a, opt);
}

/// Every principal minor exceeds `minor_tol`. Cost is 2^n determinants.
template <typename Scalar>
bool is_p_matrix(const DenseMatrix<Scalar>& a, const CertifyOptions& opt = {}) {
  const Index n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("is_p_matrix: matrix is not square");
  if (n > opt.p_limit)
    throw InvalidArgument("is_p_matrix: n=" + std::to_string(n) + " exceeds the limit " + std::to_string(opt.p_limit));
  std::vector<Index> idx;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    idx.clear();
    for (Index i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
    const DenseMatrix<Scalar> sub = a(idx, idx);
    if (!(sub.partialPivLu().determinant() > Scalar(opt.minor_tol))) return false;
  }
  return true;
}

template <typename Scalar>
bool is_p_matrix(const CsrMatrix<Scalar>& a, const CertifyOptions& opt = {}) {
  if (a.size() > opt.p_limit)
    throw InvalidArgument("is_p_matrix: n=" + std::to_string(a.size()) + " exceeds the limit " +
                          std::to_string(opt.p_limit));
  return is_p_matrix(DenseMatrix<Scalar>(a.to_dense()), opt);
}

/// T = |lhs^-1| (|rhs_s| + |rhs_abs|) of the unscaled iteration. A spectral
/// radius below one makes the modulus iteration a contraction.
template <typename Scalar>
DenseMatrix<Scalar> contraction_matrix(const SplittingSpec<Scalar>& spec, const CertifyOptions& opt = {}) {
  const Index n = spec.A.size();
  if (n > opt.dense_limit)
    throw InvalidArgument("contraction_matrix: n=" + std::to_string(n) + " exceeds the dense limit " +
                          std::to_string(opt.dense_limit));
  const auto op = generic_operator(spec, Vector<Scalar>::Zero(n).eval());
  Eigen::FullPivLU<DenseMatrix<Scalar>> lu(op.lhs.to_dense());
  if (!lu.isInvertible()) throw SingularMatrix("contraction_matrix: iteration lhs is singular");
  return lu.inverse().cwiseAbs() * (op.rhs_s.to_dense().cwiseAbs() + op.rhs_abs.to_dense().cwiseAbs());
}

template <typename Scalar>
struct SpectralEstimate {
  Scalar value;  // power-iteration estimate
  Scalar bound;  // max_i (T v)_i / v_i, an upper bound on rho(T) for v > 0
  int iterations;
  bool converged;
  std::string note;
};

/// Dominant eigenvalue of an entrywise nonnegative matrix.
///
/// Power iteration from the all-ones vector on T + cI, c = ||T||_inf; the
/// shift keeps the Perron root strictly dominant for periodic T and does not
/// move the eigenvector. The estimate is the Rayleigh quotient; the bound is
/// the Collatz-Wielandt ratio at the final iterate.
template <typename Scalar>
SpectralEstimate<Scalar> spectral_radius(const DenseMatrix<Scalar>& t, Scalar tol = Scalar(1e-10),
                                         int max_iters = 100000) {
  const Index n = t.rows();
  if (t.cols() != n || n < 1) throw DimensionMismatch("spectral_radius: matrix must be square and nonempty");
  if ((t.array() < Scalar(0)).any()) throw InvalidArgument("spectral_radius: matrix has a negative entry");

  const Scalar shift = t.rowwise().sum().maxCoeff();
  if (shift == Scalar(0)) return {Scalar(0), Scalar(0), 0, true, ""};

  Vector<Scalar> v = Vector<Scalar>::Ones(n) / std::sqrt(Scalar(n));
  Scalar previous = std::numeric_limits<Scalar>::infinity();
  SpectralEstimate<Scalar> out{Scalar(0), Scalar(0), 0, false, ""};
  for (int k = 1; k <= max_iters; ++k) {
    const Vector<Scalar> tv = t * v;
    const Scalar estimate = v.dot(tv);  // v has unit norm
    v = (tv + shift * v).normalized();
    out.value = estimate;
    out.iterations = k;
    if (std::abs(estimate - previous) < tol) {
      out.converged = true;
      break;
    }
    previous = estimate;
  }

  const Scalar floor = v.maxCoeff() * Scalar(1e-12);
  const Vector<Scalar> vp = v.cwiseMax(floor);
  out.bound = (t * vp).cwiseQuotient(vp).maxCoeff();
  if (!out.converged) {
    out.note = "power iteration did not converge in " + std::to_string(max_iters) +
               " iterations; value is the Collatz-Wielandt bound";
    out.value = out.bound;
  }
  return out;
}

/// Verdicts on the two sufficient modulus-parameter domains for a splitting
/// of an H+-matrix:
///   case 1: Omega >= D;
///   case 2: Omega < D and <A> + 2 Omega - D - |B| is an M-matrix, B = L + U.
/// Either case certifies convergence only when the splitting is H-compatible.
template <typename Scalar>
struct OmegaDomainReport {
  bool h_plus = false;
  bool h_compatible = false;
  bool case1 = false;
  bool case2 = false;
  // The same M-test on 2 Omega - D - |B| without the <A> term.
  std::optional<bool> case2_without_comparison;
  std::vector<std::string> notes;

  bool certified() const noexcept { return h_plus && h_compatible && (case1 || case2); }
};

namespace detail {

template <typename Scalar>
CsrMatrix<Scalar> splitting_lhs_part(const SplittingSpec<Scalar>& spec) {
  if (spec.family == Family::Baseline) return spec.M;
  return spec.M + (CsrMatrix<Scalar>::identity(spec.A.size()) - spec.L);
}

template <typename Scalar>
CsrMatrix<Scalar> splitting_rhs_part(const SplittingSpec<Scalar>& spec) {
  if (spec.family == Family::Baseline) return spec.N;
  return spec.N + (CsrMatrix<Scalar>::identity(spec.A.size()) - spec.L);
}

}  // namespace detail

/// <A> == <M'> - |N'| entrywise, where A = M' - N' is the splitting the
/// iteration actually inverts (M' = M + I - L for the new family).
template <typename Scalar>
bool is_h_compatible(const SplittingSpec<Scalar>& spec, Scalar tol = Scalar(1e-10)) {
  const auto lhs = detail::splitting_lhs_part(spec);
  const auto rhs = detail::splitting_rhs_part(spec);
  const auto reconstructed = comparison_matrix(lhs) - cwise_abs(rhs);
  return max_abs_difference(reconstructed, comparison_matrix(spec.A)) <= tol;
}

template <typename Scalar>
OmegaDomainReport<Scalar> check_omega_domain(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega,
                                             const CertifyOptions& opt = {}) {
  if (omega.size() != a.size()) throw DimensionMismatch("omega has the wrong dimension");
  OmegaDomainReport<Scalar> rep;
  const MatrixTest hp = test_h_plus_matrix(a, opt);
  rep.h_plus = hp.holds();
  if (!rep.h_plus) rep.notes.push_back("matrix is not certified H+ (" + std::string(to_string(hp.verdict)) +
                                       (hp.note.empty() ? "" : ": " + hp.note) + ")");

  const Vector<Scalar> d = a.diagonal();
  const Vector<Scalar>& w = omega.entries();
  const bool all_ge = (w.array() >= d.array()).all();
  const bool all_lt = (w.array() < d.array()).all();
  rep.case1 = all_ge;
  if (all_lt) {
    const auto b_abs = cwise_abs(strictly_lower(a) + strictly_upper(a));
    const auto two_omega_minus_d = CsrMatrix<Scalar>::diagonal((Scalar(2) * w - d).eval());
    const MatrixTest with_cmp = test_m_matrix(comparison_matrix(a) + two_omega_minus_d - b_abs, opt);
    const MatrixTest without_cmp = test_m_matrix(two_omega_minus_d - b_abs, opt);
    rep.case2 = with_cmp.holds();
    rep.case2_without_comparison = without_cmp.holds();
    if (with_cmp.verdict == Verdict::Indeterminate) rep.notes.push_back("case 2 M-test indeterminate: " + with_cmp.note);
    if (!rep.case2) rep.notes.push_back("case 2: <A> + 2 Omega - D - |B| is not certified as an M-matrix");
  } else if (!all_ge) {
    rep.notes.push_back("neither case applies: Omega - D has mixed signs");
  }
  return rep;
}

/// check_omega_domain plus the H-compatibility hypothesis for the splitting.
template <typename Scalar>
OmegaDomainReport<Scalar> check_omega_domain(const SplittingSpec<Scalar>& spec, const CertifyOptions& opt = {}) {
  auto rep = check_omega_domain(spec.A, spec.omega, opt);
  rep.h_compatible = is_h_compatible(spec);
  if (!rep.h_compatible)
    rep.notes.push_back(std::string(display_name(spec.variant)) +
                        " splitting is not H-compatible (<A> != <M'> - |N'>); the Omega domain does not apply");
  return rep;
}

/// Brute-force LCP solve by enumerating every complementary index set.
/// Intended as ground truth for n <= 16; throws NoSolution or
/// MultipleSolutions when the accepted set is not a singleton.
template <typename Scalar>
Vector<Scalar> oracle_solve(const LcpProblem<Scalar>& p, Scalar tol = Scalar(1e-10)) {
  const Index n = p.size();
  if (n > 16) throw InvalidArgument("oracle_solve: n=" + std::to_string(n) + " exceeds 16");
  const DenseMatrix<Scalar> a = p.matrix().to_dense();
  const Vector<Scalar>& q = p.q();

  std::vector<Vector<Scalar>> accepted;
  std::vector<Index> idx;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    idx.clear();
    for (Index i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
    Vector<Scalar> z = Vector<Scalar>::Zero(n);
    if (!idx.empty()) {
      Eigen::FullPivLU<DenseMatrix<Scalar>> lu(a(idx, idx));
      if (!lu.isInvertible()) continue;
      const Vector<Scalar> za = lu.solve(-q(idx));
      if ((za.array() < -tol).any()) continue;
      z(idx) = za;
    }
    const Vector<Scalar> w = a * z + q;
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i)
      if (!(mask & (std::uint64_t{1} << i)) && w(i) < -tol) ok = false;
    if (!ok) continue;
    z = z.cwiseMax(Scalar(0));
    const bool duplicate = std::any_of(accepted.begin(), accepted.end(), [&](const Vector<Scalar>& y) {
      return (y - z).cwiseAbs().maxCoeff() <= Scalar(1e-8);
    });
    if (!duplicate) accepted.push_back(std::move(z));
  }
  if (accepted.empty()) throw NoSolution("oracle_solve: no complementary index set yields a solution");
  if (accepted.size() > 1)
    throw MultipleSolutions("oracle_solve: " + std::to_string(accepted.size()) + " distinct solutions");
  return accepted.front();
}

/// Everything certify knows about one problem and splitting.
template <typename Scalar>
struct CertReport {
  bool is_z = false;
  bool is_m = false;
  bool is_h = false;
  bool is_h_plus = false;
  std::optional<bool> is_p;           // only when n <= p_limit
  std::optional<Scalar> rho_t;        // only when n <= dense_limit
  std::optional<Scalar> rho_t_bound;  // certified upper bound
  OmegaDomainReport<Scalar> omega_domain;
  std::vector<std::string> notes;

  bool spectral_certified() const { return rho_t_bound && *rho_t_bound < Scalar(1); }
  bool convergence_certified() const { return omega_domain.certified() || spectral_certified(); }
};

template <typename Scalar>
CertReport<Scalar> certify(const SplittingSpec<Scalar>& spec, const CertifyOptions& opt = {}) {
  CertReport<Scalar> rep;
  const auto& a = spec.A;
  const Index n = a.size();
  rep.is_z = is_z_matrix(a);
  const MatrixTest m = test_m_matrix(a, opt);
  rep.is_m = m.holds();
  if (rep.is_z && m.verdict != Verdict::Yes && m.verdict != Verdict::No)
    rep.notes.push_back("M-test: " + std::string(to_string(m.verdict)) + (m.note.empty() ? "" : " (" + m.note + ")"));
  const MatrixTest h = test_h_matrix(a, opt);
  rep.is_h = h.holds();
  if (h.verdict == Verdict::Indeterminate || h.verdict == Verdict::Singular)
    rep.notes.push_back("H-test: " + std::string(to_string(h.verdict)) + (h.note.empty() ? "" : " (" + h.note + ")"));
  rep.is_h_plus = rep.is_h && (a.diagonal().array() > Scalar(0)).all();

  if (n <= opt.p_limit) {
    rep.is_p = is_p_matrix(a, opt);
  } else {
    rep.notes.push_back("P-test skipped: n=" + std::to_string(n) + " exceeds p_limit=" + std::to_string(opt.p_limit));
  }

  if (n <= opt.dense_limit) {
    try {
      const auto est = spectral_radius(contraction_matrix(spec, opt), Scalar(opt.spectral_tol), opt.spectral_max_iters);
      rep.rho_t = est.value;
      rep.rho_t_bound = est.bound;
      if (!est.note.empty()) rep.notes.push_back(est.note);
    } catch (const SingularMatrix& e) {
      rep.notes.push_back(e.what());
    }
  } else {
    rep.notes.push_back("spectral radius skipped: n=" + std::to_string(n) + " exceeds dense_limit=" +
                        std::to_string(opt.dense_limit));
  }

  rep.omega_domain = check_omega_domain(spec, opt);
  return rep;
}

}  // namespace modlcp
