#ifndef FLAGCERT_ROUNDING_HPP
#define FLAGCERT_ROUNDING_HPP

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagcert/certify.hpp"
#include "flagcert/flags.hpp"
#include "flagcert/linalg.hpp"
#include "flagcert/sdpgen.hpp"
#include "flagcert/solverio.hpp"

namespace flagcert {

class RoundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RoundingConfig {
  double eps1 = 1e-4;   // small-eigenvalue threshold
  double eps2 = 1e-4;   // tight-constraint threshold (unscaled)
  double eps3 = 1e-6;   // free entries keep -log10(eps3) decimals
  int max_retries = 10;
  long denom_bound = 10000;
  // Residual allowed when guessing null vectors. The solver's null space is
  // only accurate to a few digits on this problem, far worse than 10*eps3.
  double guess_tolerance = 1e-2;

  void validate() const;
};

// Eigenvectors (unit length) with eigenvalue < eps1, ascending by eigenvalue.
std::vector<Eigen::VectorXd> null_basis(const Eigen::MatrixXd& q, double eps1);

// Smallest-denominator continued-fraction convergent p/q of x with
// q <= denom_bound and |x - p/q| < tolerance; throws RoundingError otherwise.
Rational guess_rational(double x, long denom_bound, double tolerance);

// Pivoted normalization of the vector set, then each vector is guessed with
// the smallest common denominator q <= denom_bound that puts every entry
// within tolerance. Vectors that vanish during the sweep are dropped.
std::vector<RationalVector> rationalize_basis(std::span<const Eigen::VectorXd> vectors,
                                              long denom_bound, double tolerance);

// Indices whose scaled slack (M f(H) - c_H) is below 35 + eps2 * M.
std::vector<int> tight_constraints(std::span<const double> slacks, double eps2);

// Limit vectors p(F, (T3, phi)) over placements phi of sigma into the three
// parts, exact; duplicates removed. With `complemented` the host is the
// union of three cliques instead.
std::vector<RationalVector> extremal_null_vectors(const TypeGraph& sigma, const FlagBasis& basis,
                                                  bool complemented = false);

// The same vectors mapped into the coordinates of the two reduced blocks:
// class sums for sigma0, and sigma1 plus barred sigma2 vectors for block 1.
std::vector<RationalVector> reduced_extremal_vectors(const FlagTables& tables, int block);

// Span of exact and guessed vectors, in reduced row echelon form.
std::vector<RationalVector> merge_null_vectors(std::vector<RationalVector> exact,
                                               std::vector<RationalVector> guessed);

// Linear system A y = b over the rounded unknowns; free unknowns are fixed to
// truncated numerical values, pivot unknowns solved exactly.
struct LinearSystem {
  RationalMatrix a;
  RationalVector b;
  std::vector<int> pivot_columns;
  std::vector<int> free_columns;
  RationalVector free_values;
};

// Decimal truncation of x to `digits` places, as an exact rational.
Rational truncate_decimal(double x, int digits);

// Solves the system with leftmost pivots. Returns false if inconsistent.
// On success fills pivot/free columns and values and writes the solution.
bool solve_linear_system(LinearSystem& system, std::span<const double> numerical, int digits,
                         RationalVector& solution);

// Number of decimals kept when truncating to a multiple of eps3.
int decimal_digits(double eps3);

// sum_b <coefficients[b], Q_b> = rhs
struct BlockEquation {
  std::vector<RationalMatrix> coefficients;
  Rational rhs;
};

struct BuildInputs {
  std::vector<Eigen::MatrixXd> numeric;                  // numerical Q_b
  std::vector<std::vector<RationalVector>> null_vectors;  // exact, per block (type 1)
  std::vector<BlockEquation> equations;                   // type 2
  int digits = 6;                                         // decimals kept on free entries
};

struct BuildOutcome {
  std::string outcome;  // "ok", "inconsistent", "psd"
  std::string detail;
  std::vector<RationalMatrix> blocks;
  std::vector<int> null_dimensions;
  int pivots = 0;
  int free = 0;
  double recenter_step = 0;
};

// Writes Q_b = L_b S_b L_b^T with L_b spanning the complement of the null
// vectors, so type 1 equations hold by construction. The numerical S is first
// moved onto the type 2 equations in the cone's local metric, then the free
// unknowns are truncated and the pivot unknowns solved exactly. Each S_b is
// checked PSD exactly.
BuildOutcome build_and_solve(const BuildInputs& inputs);

using ExactSolution = SolutionVectorFile;

struct RoundingAttempt {
  double eps1 = 0, eps2 = 0;
  std::vector<int> null_dimensions;
  int tight = 0;
  int equations = 0;
  int pivots = 0;
  double recenter_step = 0;
  std::string outcome;  // "ok", "inconsistent", "psd", "bound"
  std::string detail;
};

struct RoundingResult {
  bool success = false;
  ExactSolution solution;
  std::vector<RationalMatrix> blocks;
  std::vector<RoundingAttempt> attempts;
};

RoundingResult round_solution(const ReducedProblem& problem, const FlagTables& tables,
                              const NumericalSolution& numeric, const RoundingConfig& config = {});

void write_rounding_log(const RoundingResult& result, const RoundingConfig& config, std::ostream& out);

}  // namespace flagcert

#endif  // FLAGCERT_ROUNDING_HPP
