#pragma once

#include <Eigen/LU>

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modlcp/problem.hpp"
#include "modlcp/splitting.hpp"

namespace modlcp {

enum class Status { Converged, MaxIters, Diverged };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Converged: return "CONVERGED";
    case Status::MaxIters: return "MAX_ITERS";
    case Status::Diverged: return "DIVERGED";
  }
  return "?";
}

enum class StartPolicy {
  Alternating,  // s0 = (1, 0, 1, 0, ...)
  Zero,
  Custom,
};

template <typename Scalar>
struct SolverConfig {
  Scalar epsilon = Scalar(1e-5);
  int max_iters = 10000;
  StartPolicy start = StartPolicy::Alternating;
  Vector<Scalar> custom_start;
  bool record_history = false;
  // A residual above this (or any non-finite value) stops the run as DIVERGED.
  Scalar divergence_threshold = Scalar(1e12);
};

template <typename Scalar>
struct SolveReport {
  Status status = Status::MaxIters;
  int iterations = 0;
  Scalar final_residual = std::numeric_limits<Scalar>::quiet_NaN();
  std::vector<Scalar> residual_history;  // entry k is Res(z^(k)), k = 0..iterations
  Vector<Scalar> z;
  Vector<Scalar> s;
  std::chrono::duration<double> wall_time{0};
};

/// z = (|s| + s) / r; never negative.
template <typename Scalar, typename Derived>
Vector<Scalar> recover_z(const Eigen::MatrixBase<Derived>& s, Scalar r) {
  if (!(r > Scalar(0))) throw InvalidArgument("r must be > 0");
  return (s.cwiseAbs() + s) / r;
}

namespace detail {

template <typename Scalar, typename Derived>
Vector<Scalar> step_rhs(const IterationOperator<Scalar>& op, const Eigen::MatrixBase<Derived>& s) {
  if (s.size() != op.lhs.size()) throw DimensionMismatch("step: s has the wrong length");
  return matvec(op.rhs_s, s) + matvec(op.rhs_abs, s.cwiseAbs()) + op.rhs_const;
}

}  // namespace detail

/// One sweep by forward substitution. Requires a lower-triangular lhs.
template <typename Scalar, typename Derived>
Vector<Scalar> step(const IterationOperator<Scalar>& op, const Eigen::MatrixBase<Derived>& s) {
  if (!op.lhs_is_lower_triangular) throw NotLowerTriangular("step: operator lhs is not lower triangular");
  return lower_triangular_solve(op.lhs, detail::step_rhs(op, s));
}

/// Sweeps with a general lhs, factorized once at construction.
template <typename Scalar>
class DenseStepper {
 public:
  static constexpr double kPivotTolerance = 1e-14;

  explicit DenseStepper(const IterationOperator<Scalar>& op) : op_(op), lu_(op.lhs.to_dense()) {
    const auto pivots = lu_.matrixLU().diagonal().cwiseAbs();
    if (pivots.minCoeff() < Scalar(kPivotTolerance))
      throw SingularMatrix("dense step: lhs factorization broke down (pivot " + std::to_string(double(pivots.minCoeff())) +
                           ")");
  }

  template <typename Derived>
  Vector<Scalar> operator()(const Eigen::MatrixBase<Derived>& s) const {
    return lu_.solve(detail::step_rhs(op_, s));
  }

 private:
  IterationOperator<Scalar> op_;
  Eigen::PartialPivLU<DenseMatrix<Scalar>> lu_;
};

/// One sweep through a dense LU of lhs. Prefer DenseStepper when sweeping
/// repeatedly.
template <typename Scalar, typename Derived>
Vector<Scalar> dense_step(const IterationOperator<Scalar>& op, const Eigen::MatrixBase<Derived>& s) {
  return DenseStepper<Scalar>(op)(s);
}

template <typename Scalar>
Vector<Scalar> initial_s(const SolverConfig<Scalar>& cfg, Index n) {
  switch (cfg.start) {
    case StartPolicy::Alternating: return alternating_start<Scalar>(n);
    case StartPolicy::Zero: return Vector<Scalar>::Zero(n);
    case StartPolicy::Custom:
      if (cfg.custom_start.size() != n) throw DimensionMismatch("custom start vector has the wrong length");
      return cfg.custom_start;
  }
  throw InvalidArgument("unknown start policy");
}

/// Runs the modulus iteration for a prebuilt operator.
///
/// The residual of z^(k) is checked before every update, so a start that is
/// already a solution reports zero iterations.
template <typename Scalar>
SolveReport<Scalar> solve(const LcpProblem<Scalar>& p, const IterationOperator<Scalar>& op,
                          const SolverConfig<Scalar>& cfg) {
  if (!(cfg.epsilon > Scalar(0))) throw InvalidArgument("epsilon must be > 0");
  if (cfg.max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (op.lhs.size() != p.size()) throw DimensionMismatch("operator and problem dimensions differ");

  const auto started = std::chrono::steady_clock::now();
  std::optional<DenseStepper<Scalar>> dense;
  if (!op.lhs_is_lower_triangular) dense.emplace(op);
  auto advance = [&](const Vector<Scalar>& s) { return dense ? (*dense)(s) : step(op, s); };

  SolveReport<Scalar> report;
  report.s = initial_s(cfg, p.size());
  for (int k = 0;; ++k) {
    report.z = recover_z(report.s, op.r);
    const Scalar res = residual(p, report.z);
    report.iterations = k;
    report.final_residual = res;
    if (cfg.record_history) report.residual_history.push_back(res);

    if (!std::isfinite(res) || !report.s.allFinite() || res > cfg.divergence_threshold) {
      report.status = Status::Diverged;
      break;
    }
    if (res < cfg.epsilon) {
      report.status = Status::Converged;
      break;
    }
    if (k == cfg.max_iters) {
      report.status = Status::MaxIters;
      break;
    }
    report.s = advance(report.s);
  }
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

template <typename Scalar>
SolveReport<Scalar> solve(const LcpProblem<Scalar>& p, const SplittingSpec<Scalar>& spec,
                          const SolverConfig<Scalar>& cfg) {
  return solve(p, make_operator(spec, p.q()), cfg);
}

}  // namespace modlcp
