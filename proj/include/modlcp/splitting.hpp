#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "modlcp/sparse.hpp"

namespace modlcp {

/// Method variants. The NAM* variants iterate on
///   (M + Omega + I - L) s+ = (N + I - L) s + (Omega - A)|s| - r q,
/// the baselines on
///   (Omega + M) s+ = N s + (Omega - A)|s| - r q.
enum class Variant { NamModulus, NamModified, NamJacobi, Namgs, Namsor, Namaor, Mgs, Msor, Maor };

enum class Family { NewAccelerated, Baseline };

inline constexpr std::array<Variant, 9> kAllVariants = {
    Variant::NamModulus, Variant::NamModified, Variant::NamJacobi, Variant::Namgs, Variant::Namsor,
    Variant::Namaor,     Variant::Mgs,         Variant::Msor,      Variant::Maor};

/// Command-line spelling of a variant.
constexpr std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::NamModulus: return "nam-mod";
    case Variant::NamModified: return "nam-modmod";
    case Variant::NamJacobi: return "nam-jacobi";
    case Variant::Namgs: return "namgs";
    case Variant::Namsor: return "namsor";
    case Variant::Namaor: return "namaor";
    case Variant::Mgs: return "mgs";
    case Variant::Msor: return "msor";
    case Variant::Maor: return "maor";
  }
  return "?";
}

/// Table label, e.g. "NAMGS".
constexpr std::string_view display_name(Variant v) {
  switch (v) {
    case Variant::NamModulus: return "NAM-modulus";
    case Variant::NamModified: return "NAM-modified";
    case Variant::NamJacobi: return "NAM-Jacobi";
    case Variant::Namgs: return "NAMGS";
    case Variant::Namsor: return "NAMSOR";
    case Variant::Namaor: return "NAMAOR";
    case Variant::Mgs: return "MGS";
    case Variant::Msor: return "MSOR";
    case Variant::Maor: return "MAOR";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : kAllVariants)
    if (to_string(v) == name) return v;
  return std::nullopt;
}

constexpr Family family_of(Variant v) {
  switch (v) {
    case Variant::Mgs:
    case Variant::Msor:
    case Variant::Maor: return Family::Baseline;
    default: return Family::NewAccelerated;
  }
}

constexpr bool needs_alpha(Variant v) {
  return v == Variant::NamModified || v == Variant::Namsor || v == Variant::Namaor || v == Variant::Msor ||
         v == Variant::Maor;
}

constexpr bool needs_beta(Variant v) { return v == Variant::Namaor || v == Variant::Maor; }

/// Whether the variant's modulus parameter is fixed by the method itself
/// (I or alpha*I) rather than chosen by the caller.
constexpr bool fixes_omega(Variant v) { return v == Variant::NamModulus || v == Variant::NamModified; }

/// The variants whose step matrix is lower triangular.
constexpr bool has_triangular_lhs(Variant v) { return v != Variant::NamModulus && v != Variant::NamModified; }

/// The SOR/AOR variants are assembled multiplied through by alpha.
constexpr bool is_alpha_scaled(Variant v) {
  return v == Variant::Namsor || v == Variant::Namaor || v == Variant::Msor || v == Variant::Maor;
}

/// A = M - N together with the modulus parameters of one method variant.
template <typename Scalar>
struct SplittingSpec {
  Variant variant;
  Family family;
  CsrMatrix<Scalar> A;  // system matrix
  CsrMatrix<Scalar> M;
  CsrMatrix<Scalar> N;
  CsrMatrix<Scalar> L;  // negated strictly lower part of A
  DiagonalMatrix<Scalar> omega;
  Scalar r;
  Scalar alpha;
  Scalar beta;
};

/// One sweep is lhs * s+ = rhs_s * s + rhs_abs * |s| + rhs_const, and
/// z = (|s| + s) / r.
template <typename Scalar>
struct IterationOperator {
  CsrMatrix<Scalar> lhs;
  CsrMatrix<Scalar> rhs_s;
  CsrMatrix<Scalar> rhs_abs;
  Vector<Scalar> rhs_const;
  bool lhs_is_lower_triangular;
  Scalar r;
};

namespace detail {

template <typename Scalar>
void require_nonzero_diagonal(const CsrMatrix<Scalar>& a) {
  for (Index i = 0; i < a.size(); ++i)
    if (a.coeff(i, i) == Scalar(0)) throw ZeroDiagonal(i);
}

template <typename Scalar>
void require_omega(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega) {
  if (omega.size() != a.size()) throw DimensionMismatch("omega has the wrong dimension");
  if (!omega.is_positive()) throw InvalidArgument("omega must have strictly positive entries");
}

template <typename Scalar>
void require_alpha(Scalar alpha) {
  if (!(alpha > Scalar(0))) throw InvalidArgument("alpha must be > 0");
}

template <typename Scalar>
void require_beta(Scalar beta) {
  if (!(beta >= Scalar(0))) throw InvalidArgument("beta must be >= 0");
}

template <typename Scalar>
SplittingSpec<Scalar> dlu_splitting(Variant variant, const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega,
                                    Scalar alpha, Scalar beta) {
  require_nonzero_diagonal(a);
  require_omega(a, omega);
  require_alpha(alpha);
  require_beta(beta);
  const auto [d, l, u] = split_dlu(a);
  const auto dm = CsrMatrix<Scalar>::diagonal(d);
  // M = (D - beta L) / alpha, N = ((1 - alpha) D + (alpha - beta) L + alpha U) / alpha.
  // Jacobi, Gauss-Seidel and SOR are the (1,0), (1,1) and (alpha,alpha) cases.
  const Scalar inv = Scalar(1) / alpha;
  CsrMatrix<Scalar> m = combine(inv, dm, -beta * inv, l);
  CsrMatrix<Scalar> n = combine(inv - Scalar(1), dm, Scalar(1), combine(Scalar(1) - beta * inv, l, Scalar(1), u));
  return {variant, family_of(variant), a, std::move(m), std::move(n), l, omega, Scalar(2), alpha, beta};
}

}  // namespace detail

/// M = A, N = 0, Omega = I, r = 1.
template <typename Scalar>
SplittingSpec<Scalar> make_nam_modulus(const CsrMatrix<Scalar>& a) {
  return {Variant::NamModulus, Family::NewAccelerated, a, a, CsrMatrix<Scalar>::zero(a.size()),
          -strictly_lower(a), DiagonalMatrix<Scalar>::identity(a.size()), Scalar(1), Scalar(1), Scalar(0)};
}

/// M = A, N = 0, Omega = alpha I, r = 1.
template <typename Scalar>
SplittingSpec<Scalar> make_nam_modified(const CsrMatrix<Scalar>& a, Scalar alpha) {
  detail::require_alpha(alpha);
  return {Variant::NamModified, Family::NewAccelerated, a, a, CsrMatrix<Scalar>::zero(a.size()),
          -strictly_lower(a), DiagonalMatrix<Scalar>::constant(a.size(), alpha), Scalar(1), alpha, Scalar(0)};
}

/// M = D, N = L + U, r = 2.
template <typename Scalar>
SplittingSpec<Scalar> make_nam_jacobi(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega) {
  return detail::dlu_splitting(Variant::NamJacobi, a, omega, Scalar(1), Scalar(0));
}

/// M = D - L, N = U, r = 2.
template <typename Scalar>
SplittingSpec<Scalar> make_namgs(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega) {
  return detail::dlu_splitting(Variant::Namgs, a, omega, Scalar(1), Scalar(1));
}

/// M = D/alpha - L, N = (1/alpha - 1) D + U, r = 2.
template <typename Scalar>
SplittingSpec<Scalar> make_namsor(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega, Scalar alpha) {
  detail::require_alpha(alpha);
  return detail::dlu_splitting(Variant::Namsor, a, omega, alpha, alpha);
}

/// M = (D - beta L)/alpha, N = ((1 - alpha) D + (alpha - beta) L + alpha U)/alpha, r = 2.
template <typename Scalar>
SplittingSpec<Scalar> make_namaor(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega, Scalar alpha,
                                  Scalar beta) {
  detail::require_alpha(alpha);
  return detail::dlu_splitting(Variant::Namaor, a, omega, alpha, beta);
}

/// Baseline modulus-based splittings: MGS (alpha, beta ignored), MSOR (beta
/// taken equal to alpha) and MAOR.
template <typename Scalar>
SplittingSpec<Scalar> make_baseline(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega, Variant variant,
                                    Scalar alpha = Scalar(1), Scalar beta = Scalar(1)) {
  switch (variant) {
    case Variant::Mgs: return detail::dlu_splitting(Variant::Mgs, a, omega, Scalar(1), Scalar(1));
    case Variant::Msor:
      detail::require_alpha(alpha);
      return detail::dlu_splitting(Variant::Msor, a, omega, alpha, alpha);
    case Variant::Maor:
      detail::require_alpha(alpha);
      return detail::dlu_splitting(Variant::Maor, a, omega, alpha, beta);
    default: throw InvalidArgument("make_baseline: not a baseline variant: " + std::string(to_string(variant)));
  }
}

/// Builds any variant. `omega` is ignored by the variants that fix it.
template <typename Scalar>
SplittingSpec<Scalar> make_splitting(Variant variant, const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& omega,
                                     Scalar alpha = Scalar(1), Scalar beta = Scalar(1)) {
  switch (variant) {
    case Variant::NamModulus: return make_nam_modulus(a);
    case Variant::NamModified: return make_nam_modified(a, alpha);
    case Variant::NamJacobi: return make_nam_jacobi(a, omega);
    case Variant::Namgs: return make_namgs(a, omega);
    case Variant::Namsor: return make_namsor(a, omega, alpha);
    case Variant::Namaor: return make_namaor(a, omega, alpha, beta);
    case Variant::Mgs:
    case Variant::Msor:
    case Variant::Maor: return make_baseline(a, omega, variant, alpha, beta);
  }
  throw InvalidArgument("unknown variant");
}

template <typename Scalar>
SplittingSpec<Scalar> with_r(SplittingSpec<Scalar> spec, Scalar r) {
  if (!(r > Scalar(0))) throw InvalidArgument("r must be > 0");
  spec.r = r;
  return spec;
}

/// Omega = D, the default modulus parameter.
template <typename Scalar>
DiagonalMatrix<Scalar> diagonal_omega(const CsrMatrix<Scalar>& a) {
  return DiagonalMatrix<Scalar>(a.diagonal());
}

/// Assembles the operator straight from M, N, L, Omega and r, without any
/// alpha scaling.
template <typename Scalar>
IterationOperator<Scalar> generic_operator(const SplittingSpec<Scalar>& spec, const Vector<Scalar>& q) {
  if (q.size() != spec.A.size()) throw DimensionMismatch("q has the wrong length");
  const Index n = spec.A.size();
  const auto eye = CsrMatrix<Scalar>::identity(n);
  IterationOperator<Scalar> op{
      spec.M + spec.omega, spec.N, spec.omega - spec.A, -spec.r * q, has_triangular_lhs(spec.variant), spec.r};
  if (spec.family == Family::NewAccelerated) {
    op.lhs = op.lhs + (eye - spec.L);
    op.rhs_s = op.rhs_s + (eye - spec.L);
  }
  return op;
}

/// The operator used by the solver. SOR/AOR variants are assembled
/// multiplied through by alpha, which avoids dividing D by alpha; every other
/// variant goes through generic_operator.
template <typename Scalar>
IterationOperator<Scalar> make_operator(const SplittingSpec<Scalar>& spec, const Vector<Scalar>& q) {
  if (!is_alpha_scaled(spec.variant)) return generic_operator(spec, q);
  if (q.size() != spec.A.size()) throw DimensionMismatch("q has the wrong length");

  const Scalar a = spec.alpha;
  const Scalar b = spec.beta;
  const Scalar one(1);
  const auto [d, l, u] = split_dlu(spec.A);
  const auto dm = CsrMatrix<Scalar>::diagonal(d);
  const auto aw = CsrMatrix<Scalar>::diagonal(spec.omega.scaled(a));
  const auto rhs_abs = combine(a, CsrMatrix<Scalar>::diagonal(spec.omega), -a, spec.A);
  const Vector<Scalar> rhs_const = -(a * spec.r) * q;

  if (spec.family == Family::NewAccelerated) {
    const auto ai = CsrMatrix<Scalar>::diagonal(Vector<Scalar>::Constant(spec.A.size(), a));
    // lhs = D - (alpha + beta) L + alpha Omega + alpha I
    // rhs_s = (1 - alpha) D - beta L + alpha U + alpha I
    auto lhs = combine(one, dm, -(a + b), l) + aw + ai;
    auto rhs_s = combine(one - a, dm, -b, l) + (a * u + ai);
    return {std::move(lhs), std::move(rhs_s), rhs_abs, rhs_const, true, spec.r};
  }
  // lhs = D - beta L + alpha Omega, rhs_s = (1 - alpha) D + (alpha - beta) L + alpha U
  auto lhs = combine(one, dm, -b, l) + aw;
  auto rhs_s = combine(one - a, dm, a - b, l) + a * u;
  return {std::move(lhs), std::move(rhs_s), rhs_abs, rhs_const, true, spec.r};
}

/// Factor by which make_operator scales the generic operator.
template <typename Scalar>
Scalar operator_scale(const SplittingSpec<Scalar>& spec) {
  return is_alpha_scaled(spec.variant) ? spec.alpha : Scalar(1);
}

}  // namespace modlcp
