// Command-line harness: solve one problem, sweep benchmark tables, certify
// convergence, and export the benchmark problems.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "modlcp/benchmark.hpp"
#include "modlcp/certify.hpp"
#include "modlcp/matrix_market.hpp"
#include "modlcp/report_json.hpp"

namespace {

using namespace modlcp;
using namespace modlcp::bench;

enum ExitCode : int {
  kConverged = 0,
  kUsage = 1,
  kMaxIters = 2,
  kDiverged = 3,
  kNotCertified = 4,
};

struct ProblemFlags {
  int example = 0;
  std::string matrix;
  std::string q;
  long long m = 0;
  long long n = 0;
  double delta = 4.0;
  CLI::Option* example_opt = nullptr;
  CLI::Option* matrix_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  void add_to(CLI::App& app, bool allow_files) {
    example_opt = app.add_option("--example", example, "Benchmark family (1 or 2)")->check(CLI::IsMember({1, 2}));
    if (allow_files) {
      matrix_opt = app.add_option("--matrix", matrix, "System matrix in Matrix Market format");
      app.add_option("--q", q, "Vector q (Matrix Market array or one value per line)");
    }
    m_opt = app.add_option("--m", m, "Block size; n = m^2");
    n_opt = app.add_option("--n", n, "Dimension; must be a perfect square for the benchmark families");
    app.add_option("--delta", delta, "Diagonal shift of the benchmark matrix")->capture_default_str();
  }

  ProblemSource resolve() const {
    const bool has_example = example_opt->count() > 0;
    const bool has_files = matrix_opt && matrix_opt->count() > 0;
    if (has_example == has_files) throw InvalidArgument("give exactly one of --example or --matrix/--q");
    ProblemSource src;
    if (has_files) {
      if (q.empty()) throw InvalidArgument("--matrix requires --q");
      src.kind = ProblemKind::Files;
      src.matrix_path = matrix;
      src.q_path = q;
      return src;
    }
    src.kind = example == 1 ? ProblemKind::Example1 : ProblemKind::Example2;
    src.delta = delta;
    if (m_opt->count() && n_opt->count()) throw InvalidArgument("give at most one of --m and --n");
    src.m = n_opt->count() ? block_size_for(n) : (m_opt->count() ? m : 10);
    return src;
  }
};

struct MethodFlags {
  std::string method = "namgs";
  double alpha = 1.0;
  double beta = 1.0;
  double r = 2.0;
  std::string omega = "diag";
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* r_opt = nullptr;

  void add_to(CLI::App& app) {
    app.add_option("--method", method,
                   "mgs, msor, maor, nam-mod, nam-modmod, nam-jacobi, namgs, namsor or namaor")->capture_default_str();
    alpha_opt = app.add_option("--alpha", alpha, "Relaxation parameter (SOR/AOR family, nam-modmod)");
    beta_opt = app.add_option("--beta", beta, "Second relaxation parameter (AOR family)");
    app.add_option("--omega", omega, "diag, identity, scalar:REAL or file:PATH")->capture_default_str();
    r_opt = app.add_option("--r", r, "Override the modulus scaling r");
  }

  MethodSpec resolve() const {
    MethodSpec spec = parse_method_spec(method);
    if (alpha_opt->count()) spec.alpha = alpha;
    if (beta_opt->count()) spec.beta = beta;
    if (r_opt->count()) spec.r = r;
    spec.validate();
    return spec;
  }
};

struct SolverFlags {
  double eps = 1e-5;
  int max_iters = 10000;
  int repeats = 3;
  std::string format = "md";
  bool history = false;

  void add_to(CLI::App& app, std::vector<std::string> formats) {
    app.add_option("--eps", eps, "Stopping tolerance on the residual")->capture_default_str();
    app.add_option("--max-iters", max_iters, "Iteration limit")->capture_default_str();
    app.add_option("--repeats", repeats, "Timed repeats per run (median reported)")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember(formats));
  }

  SolverConfig<double> config() const {
    SolverConfig<double> cfg;
    cfg.epsilon = eps;
    cfg.max_iters = max_iters;
    cfg.record_history = history;
    return cfg;
  }
};

std::string fixed(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

int run_solve(const ProblemFlags& pf, const MethodFlags& mf, const SolverFlags& sf) {
  const auto problem = load_problem(pf.resolve());
  const MethodSpec method = mf.resolve();
  const OmegaPolicy omega = parse_omega_policy(mf.omega);
  const CellResult cell = run_cell(problem, method, omega, sf.config(), sf.repeats);
  if (!cell.error.empty()) {
    std::cerr << "error: " << cell.error << '\n';
    return kUsage;
  }

  const std::string alpha = method.alpha ? fixed(*method.alpha, "%g") : "";
  if (sf.format == "json") {
    std::cout << to_json(cell, method, sf.history) << '\n';
  } else if (sf.format == "csv") {
    std::cout << "method,n,alpha,IT,CPU,Res,status\n"
              << to_string(method.variant) << ',' << cell.n << ',' << alpha << ',' << cell.iterations << ','
              << fixed(cell.seconds, "%.17g") << ',' << fixed(cell.residual, "%.17g") << ','
              << to_string(cell.status) << '\n';
  } else {
    std::cout << "| Method | n | alpha | IT | CPU | Res | Status |\n|---|---|---|---|---|---|---|\n"
              << "| " << display_name(method.variant) << " | " << cell.n << " | " << alpha << " | " << cell.iterations
              << " | " << fixed(cell.seconds, "%.4f") << " | " << fixed(cell.residual, "%.1e") << " | "
              << to_string(cell.status) << " |\n";
  }
  if (sf.history && sf.format != "json") {
    std::cout << "\nk,residual\n";
    for (std::size_t k = 0; k < cell.history.size(); ++k) std::cout << k << ',' << fixed(cell.history[k], "%.17g") << '\n';
  }

  switch (cell.status) {
    case Status::Converged: return kConverged;
    case Status::MaxIters: return kMaxIters;
    case Status::Diverged: return kDiverged;
  }
  return kUsage;
}

struct TableFlags {
  int example = 1;
  double delta = 4.0;
  std::vector<long long> ns;
  std::vector<std::string> methods;
  std::string omega = "diag";
  bool calibrate = false;
};

int run_table_cmd(const TableFlags& tf, const SolverFlags& sf) {
  TableSweep sweep;
  sweep.example = tf.example == 1 ? ProblemKind::Example1 : ProblemKind::Example2;
  sweep.delta = tf.delta;
  if (tf.ns.empty()) {
    sweep.ns.assign(kPublishedNs.begin(), kPublishedNs.end());
  } else {
    sweep.ns.assign(tf.ns.begin(), tf.ns.end());
  }
  if (tf.methods.empty()) {
    sweep.methods = published_methods(sweep.example);
  } else {
    for (const auto& m : tf.methods) sweep.methods.push_back(parse_method_spec(m));
  }
  sweep.omega = parse_omega_policy(tf.omega);
  sweep.solver = sf.config();
  sweep.solver.record_history = false;
  sweep.repeats = sf.repeats;

  if (tf.calibrate) {
    // One Omega per method, fitted at the smallest published size.
    const Index n0 = kPublishedNs.front();
    const auto problem = load_problem({sweep.example, block_size_for(n0), sweep.delta, {}, {}});
    for (auto& m : sweep.methods) {
      if (m.omega) continue;
      const auto target = published_iterations(sweep.example, m.variant, n0);
      if (!target) continue;
      const auto cal = calibrate_omega(problem, m, *target, default_omega_grid(), sweep.solver);
      m.omega = cal.omega;
      std::cerr << "calibrated " << display_name(m.variant) << ": omega=" << to_string(cal.omega) << " IT=" << cal.iterations
                << " (published " << cal.target << ")\n";
    }
  }

  const Table table = run_table(sweep);
  std::cout << (sf.format == "csv" ? format_csv(table) : format_markdown(table));
  return kConverged;
}

int run_certify(const ProblemFlags& pf, const MethodFlags& mf, long long dense_limit, long long p_limit) {
  const auto problem = load_problem(pf.resolve());
  const MethodSpec method = mf.resolve();
  CertifyOptions opt;
  opt.dense_limit = dense_limit;
  opt.p_limit = p_limit;
  const auto spec = build_splitting(method, problem.matrix(), parse_omega_policy(mf.omega));
  const auto report = certify(spec, opt);
  std::cout << to_json(report, method.label()) << '\n';
  return report.convergence_certified() ? kConverged : kNotCertified;
}

int run_gen(const ProblemFlags& pf, const std::string& out_dir) {
  const auto source = pf.resolve();
  if (source.kind == ProblemKind::Files) throw InvalidArgument("gen writes the benchmark families only");
  const auto problem = load_problem(source);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_matrix_market(problem.matrix(), dir / "A.mtx");
  write_vector(problem.q(), dir / "q.mtx");
  std::cout << "wrote " << (dir / "A.mtx").string() << " and " << (dir / "q.mtx").string() << " (n=" << problem.size()
            << ")\n";
  return kConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modulus-based iteration methods for linear complementarity problems"};
  app.set_config("--config", "", "Read options from a TOML/INI file (flags take precedence)");
  app.require_subcommand(1);

  ProblemFlags solve_problem, certify_problem, gen_problem;
  MethodFlags solve_method, certify_method;
  SolverFlags solve_flags, table_flags;
  TableFlags table;
  long long dense_limit = 400, p_limit = 12;
  std::string out_dir = ".";

  auto* solve_cmd = app.add_subcommand("solve", "Run one method on one problem");
  solve_problem.add_to(*solve_cmd, true);
  solve_method.add_to(*solve_cmd);
  solve_flags.add_to(*solve_cmd, {"md", "csv", "json"});
  solve_cmd->add_flag("--history", solve_flags.history, "Dump the residual trajectory");

  auto* table_cmd = app.add_subcommand("table", "Sweep methods over problem sizes");
  table_cmd->add_option("--example", table.example, "Benchmark family (1 or 2)")->capture_default_str()->check(CLI::IsMember({1, 2}));
  table_cmd->add_option("--delta", table.delta, "Diagonal shift")->capture_default_str();
  table_cmd->add_option("--ns", table.ns, "Problem sizes (perfect squares); default: published sizes")->delimiter(',');
  table_cmd->add_option("--methods", table.methods,
                        "Method specs name[/alpha=A][/beta=B][/omega=POLICY]; default: published lineup")
      ->delimiter(',');
  table_cmd->add_option("--omega", table.omega, "Default omega policy")->capture_default_str();
  table_cmd->add_flag("--calibrate", table.calibrate,
                      "Fit omega per method against the published iteration count at n=100");
  table_flags.add_to(*table_cmd, {"md", "csv"});

  auto* certify_cmd = app.add_subcommand("certify", "Classify the matrix and check convergence conditions");
  certify_problem.add_to(*certify_cmd, true);
  certify_method.add_to(*certify_cmd);
  certify_cmd->add_option("--dense-limit", dense_limit, "Largest n for dense tests")->capture_default_str();
  certify_cmd->add_option("--p-limit", p_limit, "Largest n for principal-minor enumeration")->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen", "Write a benchmark problem as A.mtx and q.mtx");
  gen_problem.add_to(*gen_cmd, false);
  gen_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_problem, solve_method, solve_flags);
    if (*table_cmd) return run_table_cmd(table, table_flags);
    if (*certify_cmd) return run_certify(certify_problem, certify_method, dense_limit, p_limit);
    if (*gen_cmd) return run_gen(gen_problem, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "run with --help for usage\n";
    return kUsage;
  }
  return kUsage;
}
