#include "flagcert/solverio.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#ifndef FLAGCERT_BUNDLED_SOLVER
#define FLAGCERT_BUNDLED_SOLVER ""
#endif

namespace flagcert {

namespace fs = std::filesystem;

NumericalSolution parse_solution(std::istream& in, const SdpaProblem& problem) {
  NumericalSolution sol;
  std::string line;
  if (!std::getline(in, line)) throw SolverError("solution file is empty");
  {
    std::istringstream ys(line);
    double v;
    while (ys >> v) sol.dual.push_back(v);
    if (!ys.eof()) throw SolverError("unparseable dual vector in solution file");
  }
  if (static_cast<int>(sol.dual.size()) != problem.constraints()) {
    throw SolverError("solution has " + std::to_string(sol.dual.size()) + " dual values, expected " +
                      std::to_string(problem.constraints()));
  }
  for (int size : problem.block_sizes) {
    const int n = std::abs(size);
    sol.blocks.push_back(Eigen::MatrixXd::Zero(n, n));
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    int matno, blk, i, j;
    double value;
    if (!(ls >> matno >> blk >> i >> j >> value)) {
      throw SolverError("unparseable solution line " + std::to_string(lineno));
    }
    if (matno != 1 && matno != 2) throw SolverError("bad matrix number on line " + std::to_string(lineno));
    if (blk < 1 || blk > static_cast<int>(sol.blocks.size())) {
      throw SolverError("bad block number on line " + std::to_string(lineno));
    }
    auto& m = sol.blocks[blk - 1];
    if (i < 1 || j < 1 || i > m.rows() || j > m.rows()) {
      throw SolverError("index out of range on line " + std::to_string(lineno));
    }
    if (problem.block_sizes[blk - 1] < 0 && i != j) {
      throw SolverError("off-diagonal entry in a diagonal block on line " + std::to_string(lineno));
    }
    if (matno != 2) continue;
    m(i - 1, j - 1) = value;
    m(j - 1, i - 1) = value;
  }
  double obj = 0.0;
  for (const auto& e : problem.entries) {
    if (e.matrix != 0) continue;
    const double x = sol.blocks[e.block - 1](e.row - 1, e.col - 1);
    obj += (e.row == e.col ? 1.0 : 2.0) * e.value.get_d() * x;
  }
  if (!std::isfinite(obj)) throw SolverError("objective is not finite");
  sol.objective = obj;
  return sol;
}

NumericalSolution parse_solution(const fs::path& path, const SdpaProblem& problem) {
  std::ifstream in(path);
  if (!in) throw SolverError("cannot open solution file " + path.string());
  return parse_solution(in, problem);
}

namespace {

bool is_executable(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

fs::path search_path(const std::string& name) {
  const char* path = std::getenv("PATH");
  if (!path) return {};
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    fs::path candidate = fs::path(dir) / name;
    if (is_executable(candidate)) return candidate;
  }
  return {};
}

}  // namespace

fs::path resolve_solver(const fs::path& configured) {
  fs::path chosen;
  if (const char* env = std::getenv("FLAGCERT_SOLVER"); env && *env) {
    chosen = env;
  } else if (!configured.empty()) {
    chosen = configured;
  }
  if (!chosen.empty()) {
    if (chosen.has_parent_path() ? is_executable(chosen) : !search_path(chosen.string()).empty()) {
      return chosen.has_parent_path() ? chosen : search_path(chosen.string());
    }
    throw SolverError("solver not found: " + chosen.string());
  }
  if (auto csdp = search_path("csdp"); !csdp.empty()) return csdp;
  if (fs::path bundled = FLAGCERT_BUNDLED_SOLVER; !bundled.empty() && is_executable(bundled)) {
    return bundled;
  }
  throw SolverError("solver not found: set FLAGCERT_SOLVER or install csdp");
}

NumericalSolution solve_external(const fs::path& problem_path, const fs::path& solution_path,
                                 const SolverOptions& options) {
  const fs::path solver = resolve_solver(options.solver);
  const SdpaProblem problem = read_sdpa(problem_path);
  std::error_code ec;
  fs::remove(solution_path, ec);

  const std::string s0 = solver.string(), s1 = problem_path.string(), s2 = solution_path.string();
  const pid_t pid = ::fork();
  if (pid < 0) throw SolverError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    if (!options.log.empty()) {
      const int fd = ::open(options.log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      if (fd >= 0) {
        ::dup2(fd, STDOUT_FILENO);
        ::dup2(fd, STDERR_FILENO);
        ::close(fd);
      }
    }
    char* argv[] = {const_cast<char*>(s0.c_str()), const_cast<char*>(s1.c_str()),
                    const_cast<char*>(s2.c_str()), nullptr};
    ::execv(s0.c_str(), argv);
    ::_exit(127);
  }

  const auto deadline = std::chrono::steady_clock::now() + options.timeout;
  int status = 0;
  for (;;) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw SolverError("waitpid failed");
    if (std::chrono::steady_clock::now() > deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      throw SolverError("solver timed out after " + std::to_string(options.timeout.count()) + " s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    throw SolverError(s0 + " exited with status " + std::to_string(code));
  }
  return parse_solution(solution_path, problem);
}

}  // namespace flagcert
