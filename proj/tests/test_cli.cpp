#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flagcert/cli.hpp"

using namespace flagcert;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(FLAGCERT_SOURCE_DIR) / "data";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "flagcert");
  std::ostringstream out, err;
  const int code = run_subcommand(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("flagcert_cli_" + std::to_string(::getpid())) / name;
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST(Cli, EnumerateSeven) {
  fs::path w = workdir("enumerate");
  CliRun r = run({"--workdir", w.string(), "enumerate", "--size", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 4), "776\n");
  EXPECT_EQ(count_lines(w / "classes_7.txt"), 776);
}

TEST(Cli, FlagsSigma1) {
  fs::path w = workdir("flags");
  CliRun r = run({"--workdir", w.string(), "flags", "--type", "sigma1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 3), "71\n");
  EXPECT_EQ(count_lines(w / "flags_sigma1_5.txt"), 71);
  CliRun s = run({"--workdir", w.string(), "flags", "--type", "sigma0"});
  EXPECT_EQ(s.out.substr(0, 3), "20\n");
  EXPECT_EQ(run({"flags", "--type", "sigma7"}).code, kExitUsage);
}

TEST(Cli, GenSdpIsDeterministic) {
  fs::path w = workdir("gen");
  CliRun r = run({"--workdir", w.string(), "--emit_tables", "gen-sdp"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("representatives: 388"), std::string::npos);
  EXPECT_NE(r.out.find("variables: 2611"), std::string::npos);
  EXPECT_EQ(slurp(w / "problem.dat-s"), slurp(kData / "problem.dat-s"));
  EXPECT_TRUE(fs::exists(w / "table_sigma1.txt"));
}

TEST(Cli, CertifyShippedSolution) {
  fs::path w = workdir("certify");
  CliRun r = run({"--workdir", w.string(), "certify", "--problem", (kData / "problem.dat-s").string(), "--solution",
               (kData / "exact_solution.txt").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("bound = 1/27 (scaled 35)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("CERTIFIED"), std::string::npos);
  EXPECT_TRUE(fs::exists(w / "certificate.txt"));
}

TEST(Cli, CertifyRejectsTamperedSolution) {
  fs::path w = workdir("tampered");
  std::string text = slurp(kData / "exact_solution.txt");
  // bump the denominator: every entry shrinks, the bound drops below 35
  const auto eol = text.find('\n');
  text = "denominator 881637696000000" + text.substr(eol);
  std::ofstream(w / "bad.txt") << text;
  CliRun r = run({"--workdir", w.string(), "certify", "--problem", (kData / "problem.dat-s").string(), "--solution",
               (w / "bad.txt").string()});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_NE(r.out.find("NOT CERTIFIED"), std::string::npos) << r.out;
}

TEST(Cli, RoundReproducesShippedSolution) {
  fs::path w = workdir("round");
  CliRun r = run({"--workdir", w.string(), "round", "--problem", (kData / "problem.dat-s").string(), "--numerical",
               (kData / "numerical_solution.sol").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err << r.out;
  EXPECT_EQ(slurp(w / "exact_solution.txt"), slurp(kData / "exact_solution.txt"));
  EXPECT_TRUE(fs::exists(w / "rounding.log"));
}

TEST(Cli, ExtremalSeventeen) {
  CliRun r = run({"extremal", "--n", "17"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("lower bound: 35"), std::string::npos);
  EXPECT_NE(r.out.find("|W3| = 3750"), std::string::npos);
}

TEST(Cli, ExtremalCsv) {
  fs::path w = workdir("csv");
  CliRun r = run({"extremal", "--n", "17", "--csv", (w / "report.csv").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(count_lines(w / "report.csv"), 1 + 14);
}

TEST(Cli, Minimum) {
  CliRun r = run({"minimum", "--n", "10"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("minimum over S_10: 1"), std::string::npos);
  EXPECT_EQ(run({"minimum", "--n", "11"}).code, kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"enumerate", "--size", "nine"}).code, kExitUsage);
  EXPECT_EQ(run({"enumerate", "--size", "12"}).code, kExitUsage);
  EXPECT_EQ(run({"--eps1", "-1", "enumerate", "--size", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"--eps3", "1e-3", "enumerate", "--size", "3"}).code, kExitUsage);
}

TEST(Cli, MissingFiles) {
  fs::path w = workdir("missing");
  CliRun r = run({"--workdir", w.string(), "certify", "--problem", (w / "nope.dat-s").string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("missing file"), std::string::npos) << r.err;
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  fs::path w = workdir("config");
  fs::path from_file = w / "from_file";
  std::ofstream(w / "run.ini") << "workdir = " << from_file.string() << "\n";
  CliRun r = run({"--config", (w / "run.ini").string(), "enumerate", "--size", "4"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(from_file / "classes_4.txt"));
  fs::path from_flag = w / "from_flag";
  CliRun s = run({"--config", (w / "run.ini").string(), "--workdir", from_flag.string(), "enumerate", "--size", "4"});
  EXPECT_EQ(s.code, kExitOk) << s.err;
  EXPECT_TRUE(fs::exists(from_flag / "classes_4.txt"));
}

TEST(Cli, SolveWithoutSolverFails) {
  fs::path w = workdir("nosolver");
  ASSERT_EQ(run({"--workdir", w.string(), "gen-sdp"}).code, kExitOk);
  CliRun r = run({"--workdir", w.string(), "--solver", "/nonexistent/csdp", "solve"});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_NE(r.err.find("solver not found"), std::string::npos) << r.err;
}

TEST(PipelineConfig, Validation) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.validate());
  c.rounding.eps2 = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}
