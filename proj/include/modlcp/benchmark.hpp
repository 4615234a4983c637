#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modlcp/problem.hpp"
#include "modlcp/solver.hpp"
#include "modlcp/splitting.hpp"

namespace modlcp::bench {

/// How the modulus parameter is chosen for a run.
struct OmegaPolicy {
  enum class Kind { DiagOfA, Identity, Scalar, File };
  Kind kind = Kind::DiagOfA;
  double value = 0.0;          // Kind::Scalar
  std::filesystem::path path;  // Kind::File

  static OmegaPolicy diag() { return {}; }
  static OmegaPolicy identity() { return {Kind::Identity, 0.0, {}}; }
  static OmegaPolicy scalar(double v) { return {Kind::Scalar, v, {}}; }
  static OmegaPolicy file(std::filesystem::path p) { return {Kind::File, 0.0, std::move(p)}; }

  bool operator==(const OmegaPolicy&) const = default;
};

/// Parses "diag", "identity", "scalar:REAL" or "file:PATH".
OmegaPolicy parse_omega_policy(const std::string& text);
std::string to_string(const OmegaPolicy& policy);
DiagonalMatrix<double> resolve_omega(const OmegaPolicy& policy, const CsrMatrix<double>& a);

/// One method column of a run or table.
struct MethodSpec {
  Variant variant = Variant::Namgs;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<OmegaPolicy> omega;  // falls back to the run's policy
  std::optional<double> r;

  /// Throws InvalidArgument when alpha/beta are required but missing.
  void validate() const;
  std::string label() const;
};

/// Parses "name[/key=value...]" with keys alpha, beta, omega, r, e.g.
/// "msor/alpha=0.85/omega=scalar:5.5".
MethodSpec parse_method_spec(const std::string& text);

SplittingSpec<double> build_splitting(const MethodSpec& method, const CsrMatrix<double>& a,
                                      const OmegaPolicy& default_omega);

enum class ProblemKind { Example1, Example2, Files };

struct ProblemSource {
  ProblemKind kind = ProblemKind::Example1;
  Index m = 10;
  double delta = 4.0;
  std::filesystem::path matrix_path;
  std::filesystem::path q_path;
};

LcpProblem<double> load_problem(const ProblemSource& source);

/// Benchmark block size for dimension n = m^2; throws unless n is a square.
Index block_size_for(Index n);

struct CellResult {
  Index n = 0;
  Status status = Status::MaxIters;
  int iterations = 0;
  double residual = 0.0;
  double seconds = 0.0;  // median wall time over repeats
  std::vector<double> history;
  std::string error;  // set when the run threw

  bool ok() const { return error.empty() && status == Status::Converged; }
};

/// Solves `repeats` times; IT and Res come from the first run, time is the
/// median. Exceptions are captured in `error`.
CellResult run_cell(const LcpProblem<double>& problem, const MethodSpec& method, const OmegaPolicy& default_omega,
                    const SolverConfig<double>& cfg, int repeats);

struct TableRow {
  MethodSpec method;
  std::vector<CellResult> cells;
};

struct Table {
  std::string title;
  std::vector<Index> ns;
  std::vector<TableRow> rows;
};

struct TableSweep {
  ProblemKind example = ProblemKind::Example1;
  double delta = 4.0;
  std::vector<Index> ns;
  std::vector<MethodSpec> methods;
  OmegaPolicy omega;
  SolverConfig<double> solver;
  int repeats = 3;
};

Table run_table(const TableSweep& sweep);

/// Markdown with IT / CPU / Res rows per method; residuals as "9.7e-06".
std::string format_markdown(const Table& table);
/// CSV with the same rows; numbers at full precision.
std::string format_csv(const Table& table);

/// Parsed numeric CSV cell (nullopt for failed cells).
struct CsvRow {
  std::string method;
  std::string metric;
  std::vector<std::optional<double>> values;
};
std::vector<CsvRow> parse_csv(const std::string& text);

/// Text for a failed cell: an em dash followed by the status, e.g. "(DIVERGED)".
std::string failed_cell_text(const CellResult& cell);

/// Published iteration counts for the two benchmark families (delta = 4).
struct PublishedRow {
  Variant variant;
  double alpha;
  std::vector<int> iterations;  // one per kPublishedNs entry
};
inline constexpr std::array<Index, 6> kPublishedNs = {100, 900, 2500, 3600, 6400, 10000};
std::span<const PublishedRow> published_rows(ProblemKind example);
std::optional<int> published_iterations(ProblemKind example, Variant variant, Index n);

/// Method lineup of the published tables (MGS, NAMGS, MSOR, NAMSOR).
std::vector<MethodSpec> published_methods(ProblemKind example);

struct Calibration {
  OmegaPolicy omega;
  int iterations = 0;
  int target = 0;
};

/// Default Omega grid: D, I, then 0.25 k I for k = 1..40.
std::vector<OmegaPolicy> default_omega_grid();

/// Picks the grid entry whose converged iteration count is closest to
/// `target`; ties go to the earlier grid entry.
Calibration calibrate_omega(const LcpProblem<double>& problem, MethodSpec method, int target,
                            const std::vector<OmegaPolicy>& grid, const SolverConfig<double>& cfg);

}  // namespace modlcp::bench
