#pragma once

#include <string>

#include "modlcp/benchmark.hpp"
#include "modlcp/certify.hpp"
#include "modlcp/solver.hpp"

namespace modlcp {

/// {status, iterations, final_residual, wall_time, [residual_history]}.
std::string to_json(const SolveReport<double>& report, bool include_history);

/// Matrix-class flags, spectral estimates and the Omega-domain verdict.
std::string to_json(const CertReport<double>& report, const std::string& method);

/// One solve row: {method, n, alpha, IT, CPU, Res, status[, residual_history]}.
std::string to_json(const bench::CellResult& cell, const bench::MethodSpec& method, bool include_history);

}  // namespace modlcp
