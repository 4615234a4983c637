// Runs the built command-line tool and checks exit codes and output.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

#include "modlcp/benchmark.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MODLCP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "modlcp_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, SolveNamgsConverges) {
  const auto r = run("solve --example 1 --m 10 --delta 4 --method namgs --omega diag --format json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "CONVERGED");
  EXPECT_LT(j["Res"].get<double>(), 1e-5);
  EXPECT_EQ(j["n"], 100);
}

TEST(Cli, SolveNamsorOnSecondFamily) {
  const auto r = run("solve --example 2 --m 10 --delta 4 --method namsor --alpha 0.88 --omega diag --format json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["alpha"], 0.88);
}

TEST(Cli, MissingAlphaIsUsageError) {
  EXPECT_EQ(run("solve --example 1 --m 4 --method namsor").exit_code, 1);
  EXPECT_EQ(run("solve --example 1 --m 4 --method namaor --alpha 0.9").exit_code, 1);
}

TEST(Cli, BadArgumentsAreUsageErrors) {
  EXPECT_EQ(run("solve --example 3 --m 4").exit_code, 1);
  EXPECT_EQ(run("solve --m 4").exit_code, 1);
  EXPECT_EQ(run("solve --example 1 --n 99").exit_code, 1);
  EXPECT_EQ(run("solve --example 1 --m 4 --method sor").exit_code, 1);
  EXPECT_EQ(run("solve --example 1 --m 4 --omega half").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
}

TEST(Cli, MaxItersAndDivergedExitCodes) {
  EXPECT_EQ(run("solve --example 1 --m 4 --method namgs --max-iters 2").exit_code, 2);
  EXPECT_EQ(run("solve --example 1 --m 4 --method msor --alpha 3 --omega identity").exit_code, 3);
}

TEST(Cli, HistoryInJson) {
  const auto r = run("solve --example 1 --m 4 --method mgs --format json --history");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["residual_history"].size(), j["IT"].get<std::size_t>() + 1);
}

TEST(Cli, TableOrderingAndLayout) {
  const auto r = run("table --example 1 --ns 100,900 --methods mgs,namgs --repeats 1 --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto rows = modlcp::bench::parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].metric, "IT");
  ASSERT_EQ(rows[0].values.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) EXPECT_LT(*rows[3].values[c], *rows[0].values[c]);
}

TEST(Cli, TableMarksDivergentCell) {
  const auto r = run("table --example 1 --ns 16 --methods namgs,msor/alpha=3/omega=identity --repeats 1 --format md");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("\xE2\x80\x94(DIVERGED)"), std::string::npos) << r.out;
}

TEST(Cli, EmptySweepIsUsageError) { EXPECT_EQ(run("table --example 1 --ns 100 --methods ''").exit_code, 1); }

TEST(Cli, CertifyDiagonalOmega) {
  const auto r = run("certify --example 1 --m 4 --delta 4 --method namgs --omega diag");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["thm42_case1"].get<bool>());
  EXPECT_LT(j["rho_T"].get<double>(), 1.0);
}

TEST(Cli, CertifySmallOmegaReflectsVerdict) {
  const auto r = run("certify --example 1 --m 4 --delta 4 --method namgs --omega scalar:0.1");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["thm42_case1"].get<bool>());
  EXPECT_EQ(r.exit_code, j["certified"].get<bool>() ? 0 : 4);
}

TEST(Cli, CertifyNonSquareFileIsError) {
  const auto a = scratch("rect.mtx");
  std::ofstream(a) << "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n";
  const auto q = scratch("rect_q.txt");
  std::ofstream(q) << "1\n1\n";
  EXPECT_EQ(run("certify --matrix " + a.string() + " --q " + q.string()).exit_code, 1);
}

TEST(Cli, GenThenSolveFromFiles) {
  const auto dir = scratch("gen");
  ASSERT_EQ(run("gen --example 2 --m 5 --delta 4 --out-dir " + dir.string()).exit_code, 0);
  ASSERT_TRUE(fs::exists(dir / "A.mtx"));
  ASSERT_TRUE(fs::exists(dir / "q.mtx"));
  const auto files = run("solve --matrix " + (dir / "A.mtx").string() + " --q " + (dir / "q.mtx").string() +
                         " --method namgs --format json");
  const auto built = run("solve --example 2 --m 5 --delta 4 --method namgs --format json");
  ASSERT_EQ(files.exit_code, 0);
  ASSERT_EQ(built.exit_code, 0);
  const auto jf = nlohmann::json::parse(files.out), jb = nlohmann::json::parse(built.out);
  EXPECT_EQ(jf["IT"], jb["IT"]);
  EXPECT_EQ(jf["Res"], jb["Res"]);
}

TEST(Cli, ConfigFileFlagsAreOverriddenByCommandLine) {
  const auto cfg = scratch("run.toml");
  std::ofstream(cfg) << "[solve]\nmethod = \"namsor\"\nalpha = 0.88\nexample = 2\nm = 6\n";
  const auto from_file = run("--config " + cfg.string() + " solve --format json");
  ASSERT_EQ(from_file.exit_code, 0) << from_file.out;
  EXPECT_EQ(nlohmann::json::parse(from_file.out)["method"], "namsor");
  const auto overridden = run("--config " + cfg.string() + " solve --method mgs --format json");
  ASSERT_EQ(overridden.exit_code, 0) << overridden.out;
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["method"], "mgs");
}

}  // namespace
