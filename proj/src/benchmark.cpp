#include "modlcp/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include "modlcp/matrix_market.hpp"

namespace modlcp::bench {
namespace {

std::string number(double v, int precision = 6) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("invalid " + what + " '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

const char* kDash = "\xE2\x80\x94";  // em dash marks a failed cell

}  // namespace

OmegaPolicy parse_omega_policy(const std::string& text) {
  if (text == "diag") return OmegaPolicy::diag();
  if (text == "identity") return OmegaPolicy::identity();
  if (text.rfind("scalar:", 0) == 0) {
    const double v = parse_double(text.substr(7), "omega scalar");
    if (!(v > 0.0)) throw InvalidArgument("omega scalar must be > 0");
    return OmegaPolicy::scalar(v);
  }
  if (text.rfind("file:", 0) == 0 && text.size() > 5) return OmegaPolicy::file(text.substr(5));
  throw InvalidArgument("invalid omega policy '" + text + "' (expected diag, identity, scalar:REAL or file:PATH)");
}

std::string to_string(const OmegaPolicy& policy) {
  switch (policy.kind) {
    case OmegaPolicy::Kind::DiagOfA: return "diag";
    case OmegaPolicy::Kind::Identity: return "identity";
    case OmegaPolicy::Kind::Scalar: return "scalar:" + number(policy.value, 17);
    case OmegaPolicy::Kind::File: return "file:" + policy.path.string();
  }
  return "?";
}

DiagonalMatrix<double> resolve_omega(const OmegaPolicy& policy, const CsrMatrix<double>& a) {
  switch (policy.kind) {
    case OmegaPolicy::Kind::DiagOfA: return diagonal_omega(a);
    case OmegaPolicy::Kind::Identity: return DiagonalMatrix<double>::identity(a.size());
    case OmegaPolicy::Kind::Scalar: return DiagonalMatrix<double>::constant(a.size(), policy.value);
    case OmegaPolicy::Kind::File: {
      auto v = read_vector(policy.path);
      if (v.size() != a.size())
        throw DimensionMismatch("omega file has " + std::to_string(v.size()) + " entries, matrix has n=" +
                                std::to_string(a.size()));
      return DiagonalMatrix<double>(std::move(v));
    }
  }
  throw InvalidArgument("unknown omega policy");
}

void MethodSpec::validate() const {
  const std::string name(to_string(variant));
  if (needs_alpha(variant) && !alpha) throw InvalidArgument("method " + name + " requires --alpha");
  if (needs_beta(variant) && !beta) throw InvalidArgument("method " + name + " requires --beta");
  if (alpha && !(*alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
  if (beta && !(*beta >= 0.0)) throw InvalidArgument("beta must be >= 0");
  if (r && !(*r > 0.0)) throw InvalidArgument("r must be > 0");
}

std::string MethodSpec::label() const {
  std::string out(display_name(variant));
  if (needs_alpha(variant) && alpha) out += " alpha=" + number(*alpha);
  if (needs_beta(variant) && beta) out += " beta=" + number(*beta);
  if (omega) out += " omega=" + bench::to_string(*omega);
  if (r) out += " r=" + number(*r);
  return out;
}

MethodSpec parse_method_spec(const std::string& text) {
  const auto parts = split(text, '/');
  if (parts.empty() || parts.front().empty()) throw InvalidArgument("empty method spec");
  MethodSpec spec;
  const auto variant = parse_variant(parts.front());
  if (!variant) throw InvalidArgument("unknown method '" + parts.front() + "'");
  spec.variant = *variant;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw InvalidArgument("expected key=value in method spec, got '" + parts[i] + "'");
    const std::string key = parts[i].substr(0, eq);
    const std::string value = parts[i].substr(eq + 1);
    if (key == "alpha") {
      spec.alpha = parse_double(value, "alpha");
    } else if (key == "beta") {
      spec.beta = parse_double(value, "beta");
    } else if (key == "omega") {
      spec.omega = parse_omega_policy(value);
    } else if (key == "r") {
      spec.r = parse_double(value, "r");
    } else {
      throw InvalidArgument("unknown method parameter '" + key + "'");
    }
  }
  if (spec.variant == Variant::Namgs || spec.variant == Variant::Mgs || spec.variant == Variant::NamJacobi ||
      spec.variant == Variant::NamModulus) {
    spec.alpha = spec.alpha.value_or(1.0);
  }
  return spec;
}

SplittingSpec<double> build_splitting(const MethodSpec& method, const CsrMatrix<double>& a,
                                      const OmegaPolicy& default_omega) {
  method.validate();
  const auto omega = resolve_omega(method.omega.value_or(default_omega), a);
  auto spec = make_splitting(method.variant, a, omega, method.alpha.value_or(1.0), method.beta.value_or(1.0));
  if (method.r) spec = with_r(std::move(spec), *method.r);
  return spec;
}

Index block_size_for(Index n) {
  const auto m = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (m * m != n) throw InvalidArgument("n=" + std::to_string(n) + " is not a perfect square");
  return m;
}

LcpProblem<double> load_problem(const ProblemSource& source) {
  switch (source.kind) {
    case ProblemKind::Example1: return gen_example1<double>(source.m, source.delta);
    case ProblemKind::Example2: return gen_example2<double>(source.m, source.delta);
    case ProblemKind::Files:
      return LcpProblem<double>(read_matrix_market(source.matrix_path), read_vector(source.q_path));
  }
  throw InvalidArgument("unknown problem source");
}

CellResult run_cell(const LcpProblem<double>& problem, const MethodSpec& method, const OmegaPolicy& default_omega,
                    const SolverConfig<double>& cfg, int repeats) {
  CellResult cell;
  cell.n = problem.size();
  try {
    const auto spec = build_splitting(method, problem.matrix(), default_omega);
    const auto op = make_operator(spec, problem.q());
    std::vector<double> times;
    for (int k = 0; k < std::max(repeats, 1); ++k) {
      const auto report = solve(problem, op, cfg);
      times.push_back(report.wall_time.count());
      if (k == 0) {
        cell.status = report.status;
        cell.iterations = report.iterations;
        cell.residual = report.final_residual;
        cell.history = report.residual_history;
      }
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    cell.seconds = times[times.size() / 2];
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

Table run_table(const TableSweep& sweep) {
  if (sweep.ns.empty()) throw InvalidArgument("table sweep has no problem sizes");
  if (sweep.methods.empty()) throw InvalidArgument("table sweep has no methods");
  if (sweep.example == ProblemKind::Files) throw InvalidArgument("tables sweep the benchmark families only");
  for (const auto& m : sweep.methods) m.validate();

  Table table;
  table.title = sweep.example == ProblemKind::Example1 ? "Example 1" : "Example 2";
  table.title += ", delta=" + number(sweep.delta);
  table.ns = sweep.ns;
  for (const auto& m : sweep.methods) table.rows.push_back({m, {}});
  for (const Index n : sweep.ns) {
    const ProblemSource source{sweep.example, block_size_for(n), sweep.delta, {}, {}};
    const auto problem = load_problem(source);
    for (auto& row : table.rows) row.cells.push_back(run_cell(problem, row.method, sweep.omega, sweep.solver, sweep.repeats));
  }
  return table;
}

std::string failed_cell_text(const CellResult& cell) {
  const std::string status = cell.error.empty() ? std::string(modlcp::to_string(cell.status)) : "ERROR";
  return std::string(kDash) + "(" + status + ")";
}

std::string format_markdown(const Table& table) {
  std::ostringstream out;
  out << "### " << table.title << "\n\n";
  out << "| Method | n |";
  for (const Index n : table.ns) out << ' ' << n << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < table.ns.size(); ++i) out << "---|";
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    out << "| " << row.method.label() << " | IT |";
    for (const auto& c : row.cells) out << ' ' << (c.ok() ? std::to_string(c.iterations) : failed_cell_text(c)) << " |";
    out << "\n| | CPU |";
    for (const auto& c : row.cells) {
      std::snprintf(buf, sizeof buf, "%.4f", c.seconds);
      out << ' ' << (c.ok() ? buf : kDash) << " |";
    }
    out << "\n| | Res |";
    for (const auto& c : row.cells) {
      std::snprintf(buf, sizeof buf, "%.1e", c.residual);
      out << ' ' << (c.ok() ? buf : kDash) << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::string format_csv(const Table& table) {
  std::ostringstream out;
  out << "method,metric";
  for (const Index n : table.ns) out << ',' << n;
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    const std::string label = row.method.label();
    out << label << ",IT";
    for (const auto& c : row.cells) out << ',' << (c.ok() ? std::to_string(c.iterations) : failed_cell_text(c));
    out << '\n' << label << ",CPU";
    for (const auto& c : row.cells) {
      std::snprintf(buf, sizeof buf, "%.17g", c.seconds);
      out << ',' << (c.ok() ? buf : kDash);
    }
    out << '\n' << label << ",Res";
    for (const auto& c : row.cells) {
      std::snprintf(buf, sizeof buf, "%.17g", c.residual);
      out << ',' << (c.ok() ? buf : kDash);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() < 2) throw InvalidArgument("malformed CSV row '" + line + "'");
    CsvRow row{fields[0], fields[1], {}};
    for (std::size_t i = 2; i < fields.size(); ++i) {
      if (fields[i].rfind(kDash, 0) == 0) {
        row.values.push_back(std::nullopt);
      } else {
        row.values.push_back(parse_double(fields[i], "CSV cell"));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

const std::vector<PublishedRow>& table1() {
  static const std::vector<PublishedRow> rows = {
      {Variant::Mgs, 1.0, {36, 40, 41, 41, 42, 42}},
      {Variant::Namgs, 1.0, {16, 17, 17, 17, 18, 18}},
      {Variant::Msor, 0.85, {15, 17, 18, 18, 18, 19}},
      {Variant::Namsor, 0.91, {12, 12, 13, 13, 13, 13}},
  };
  return rows;
}

const std::vector<PublishedRow>& table2() {
  static const std::vector<PublishedRow> rows = {
      {Variant::Mgs, 1.0, {24, 26, 26, 26, 27, 27}},
      {Variant::Namgs, 1.0, {12, 12, 13, 13, 13, 13}},
      {Variant::Msor, 0.88, {14, 14, 15, 15, 15, 15}},
      {Variant::Namsor, 0.88, {8, 9, 9, 9, 9, 9}},
  };
  return rows;
}

}  // namespace

std::span<const PublishedRow> published_rows(ProblemKind example) {
  switch (example) {
    case ProblemKind::Example1: return table1();
    case ProblemKind::Example2: return table2();
    case ProblemKind::Files: break;
  }
  return {};
}

std::optional<int> published_iterations(ProblemKind example, Variant variant, Index n) {
  const auto it_n = std::find(kPublishedNs.begin(), kPublishedNs.end(), n);
  if (it_n == kPublishedNs.end()) return std::nullopt;
  for (const auto& row : published_rows(example))
    if (row.variant == variant) return row.iterations[static_cast<std::size_t>(it_n - kPublishedNs.begin())];
  return std::nullopt;
}

std::vector<MethodSpec> published_methods(ProblemKind example) {
  std::vector<MethodSpec> methods;
  for (const auto& row : published_rows(example)) {
    MethodSpec m;
    m.variant = row.variant;
    m.alpha = row.alpha;
    methods.push_back(m);
  }
  return methods;
}

std::vector<OmegaPolicy> default_omega_grid() {
  std::vector<OmegaPolicy> grid = {OmegaPolicy::diag(), OmegaPolicy::identity()};
  for (int k = 1; k <= 40; ++k) grid.push_back(OmegaPolicy::scalar(0.25 * k));
  return grid;
}

Calibration calibrate_omega(const LcpProblem<double>& problem, MethodSpec method, int target,
                            const std::vector<OmegaPolicy>& grid, const SolverConfig<double>& cfg) {
  std::optional<Calibration> best;
  for (const auto& policy : grid) {
    method.omega = policy;
    const auto cell = run_cell(problem, method, policy, cfg, 1);
    if (!cell.ok()) continue;
    if (!best || std::abs(cell.iterations - target) < std::abs(best->iterations - target))
      best = Calibration{policy, cell.iterations, target};
  }
  if (!best) throw Error("omega calibration: no grid entry converged for " + method.label());
  return *best;
}

}  // namespace modlcp::bench
