#ifndef FLAGCERT_CERTIFY_HPP
#define FLAGCERT_CERTIFY_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagcert/linalg.hpp"
#include "flagcert/sdpgen.hpp"

namespace flagcert {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integers over a common positive denominator: the upper triangle (row-major,
// diagonal included) of B, then that of Q1. `order` is the hex SHA-256 of the
// sigma0-class and sigma1-flag canonical forms the layout refers to.
struct SolutionVectorFile {
  Integer denominator = 1;
  std::vector<Integer> numerators;
  std::string order;
};

// C(d0+1, 2) + C(d1+1, 2).
int solution_entry_count(int dim0, int dim1);
std::string ordering_digest(const FlagTables& tables);

SolutionVectorFile load_solution(std::istream& in);
SolutionVectorFile load_solution(const std::filesystem::path& path);
void write_solution(const SolutionVectorFile& s, std::ostream& out);
void write_solution(const SolutionVectorFile& s, const std::filesystem::path& path);

// Smallest common denominator of the symmetric blocks.
SolutionVectorFile make_solution_vector(std::span<const RationalMatrix> blocks, std::string order = {});

struct ReconstructedMatrices {
  RationalMatrix b;   // reduced sigma0 block
  RationalMatrix q0;  // full sigma0 matrix implied by b (empty without tables)
  RationalMatrix q1;
  RationalMatrix q2;  // q2[bar i][bar j] = q1[i][j] (empty without tables)
};
ReconstructedMatrices reconstruct(const SolutionVectorFile& s, int dim0, int dim1,
                                  const FlagTables* tables = nullptr);

struct Inspection {
  int representative = 0;
  bool property_a = false;
  bool property_b = false;
};

struct Certificate {
  Rational bound_scaled;
  Rational bound;
  std::vector<Rational> slacks;  // per representative: M f(H) - c_H
  std::vector<int> tight_set;    // indices into the representative list
  std::vector<LdltWitness> psd_witnesses;
  std::vector<Inspection> inspections;

  bool psd() const;
  // PSD blocks and bound_scaled >= 35.
  bool certified() const;
};

// Slack and minimum over all representatives, exact.
void compute_bound(const ReducedProblem& problem, const RationalMatrix& b, const RationalMatrix& q1,
                   Certificate& cert);
// Integer form: slack * D = rhs * D - sum a * numerator.
std::vector<Rational> exact_slacks(const ReducedProblem& problem, const SolutionVectorFile& s);

LdltWitness psd_check(const RationalMatrix& m);

// Property A: no K4 and co-K4 share a vertex. Property B: two K4s sharing a
// vertex span a clique, two co-K4s sharing a vertex span an independent set.
bool property_a(const Graph& g);
bool property_b(const Graph& g);
std::vector<Inspection> inspect_tight_set(const ReducedProblem& problem, const ClassCatalog& classes,
                                          std::span<const int> tight);

Certificate certify(const ReducedProblem& problem, const ClassCatalog& classes,
                    const SolutionVectorFile& s);

// The eight representatives whose class is a 7-vertex induced subgraph of a
// complete tripartite graph or of its complement.
std::vector<int> turan_representatives(const ReducedProblem& problem, const ClassCatalog& classes);

void write_certificate(const Certificate& cert, const ReducedProblem& problem,
                       const ClassCatalog& classes, std::ostream& out);

}  // namespace flagcert

#endif  // FLAGCERT_CERTIFY_HPP
