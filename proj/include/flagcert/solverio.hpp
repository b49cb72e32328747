#ifndef FLAGCERT_SOLVERIO_HPP
#define FLAGCERT_SOLVERIO_HPP

#include <Eigen/Dense>

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagcert/sdpgen.hpp"

namespace flagcert {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Primal X of a solved SDPA problem, one dense symmetric matrix per block.
// Diagonal blocks are expanded to dense diagonal matrices.
struct NumericalSolution {
  double objective = 0.0;
  std::vector<double> dual;
  std::vector<Eigen::MatrixXd> blocks;
};

// CSDP layout: y on the first line, then "matno blk i j value" (matno 2 = X).
NumericalSolution parse_solution(std::istream& in, const SdpaProblem& problem);
NumericalSolution parse_solution(const std::filesystem::path& path, const SdpaProblem& problem);

struct SolverOptions {
  std::filesystem::path solver;  // empty: search
  std::chrono::seconds timeout{600};
  std::filesystem::path log;     // solver stdout; empty inherits ours
};

// FLAGCERT_SOLVER, then the configured path, then csdp on PATH, then the
// bundled Python driver. Throws SolverError("solver not found ...").
std::filesystem::path resolve_solver(const std::filesystem::path& configured);

// Runs `solver problem solution` and parses the result.
NumericalSolution solve_external(const std::filesystem::path& problem_path,
                                 const std::filesystem::path& solution_path,
                                 const SolverOptions& options = {});

}  // namespace flagcert

#endif  // FLAGCERT_SOLVERIO_HPP
