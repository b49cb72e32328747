#ifndef FLAGCERT_SDPGEN_HPP
#define FLAGCERT_SDPGEN_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flagcert/density.hpp"
#include "flagcert/flags.hpp"
#include "flagcert/graph.hpp"
#include "flagcert/rational.hpp"

namespace flagcert {

// Objective scale: 27 * 35, so 1/27 becomes 35 and M f(H) is integral for
// every 7-vertex H.
inline constexpr long kObjectiveScale = 945;
inline constexpr long kScaledTarget = 35;

struct ScalingConfig {
  Integer objective_scale = kObjectiveScale;
  // One per SDP block coming from a type (reduced sigma0, folded sigma1).
  std::vector<Integer> table_scales;
};

// A class H and its complement; `representative` has the smaller index.
struct ClassPair {
  int representative = 0;
  int partner = 0;
};

std::vector<ClassPair> reduce_classes(const ClassCatalog& classes);

// Complement pairs of a self-complementary-type basis: classes[c] = {F, F̄}
// with F < F̄, ordered by F; class_of[F] = c. Throws on a self-paired flag.
struct FlagPairing {
  std::vector<std::array<int, 2>> classes;
  std::vector<int> class_of;

  int size() const { return static_cast<int>(classes.size()); }
};
FlagPairing pair_flags(const FlagBasis& basis);

// B~[a][b] = sum of D over the four (F, F') with F in class a, F' in class b.
RationalMatrix reduce_sigma0_block(const RationalMatrix& d, const FlagPairing& pairing);
// D~[i][j] = D1[i][j] + D2[bar i][bar j].
RationalMatrix fold_sigma2_into_sigma1(const RationalMatrix& d1, const RationalMatrix& d2,
                                       std::span<const int> bar);

// The three bases and tables of the shipped problem.
struct FlagTables {
  const ClassCatalog* classes = nullptr;
  FlagBasis basis0;  // sigma0, 4 vertices
  FlagBasis basis1;  // sigma1, 5 vertices
  FlagBasis basis2;  // sigma2, 5 vertices
  FlagPairing pairing0;
  std::vector<int> bar12;  // sigma1 flag -> complementary sigma2 flag
  PairDensityTable table0;
  PairDensityTable table1;
  PairDensityTable table2;
};
FlagTables build_flag_tables();

// Constraint for representative H (index r):
//   <A0_r, B> + <A1_r, Q1> + y + s_r = M f(H),
// with B the 10x10 class matrix, Q1 the 71x71 sigma1 matrix, y the scaled
// bound and s_r >= 0 a slack.
struct ReducedProblem {
  std::vector<ClassPair> pairs;
  std::vector<Integer> rhs;
  ScalingConfig scaling;
  int dim0 = 0;
  int dim1 = 0;
  // Dense symmetric integer matrices, one per representative.
  std::vector<std::vector<std::int64_t>> block0;
  std::vector<std::vector<std::int64_t>> block1;

  int constraints() const { return static_cast<int>(pairs.size()); }
  std::int64_t a0(int r, int i, int j) const { return block0[r][i * dim0 + j]; }
  std::int64_t a1(int r, int i, int j) const { return block1[r][i * dim1 + j]; }
  // Upper-triangle entries of B followed by those of Q1.
  int variable_count() const { return dim0 * (dim0 + 1) / 2 + dim1 * (dim1 + 1) / 2; }
};

ScalingConfig compute_scaling(const FlagTables& tables);
ReducedProblem build_reduced_problem(const FlagTables& tables);

// Generic SDPA sparse problem with integer data.
struct SdpaEntry {
  int matrix = 0;  // 0 = objective
  int block = 0;   // 1-based
  int row = 0;     // 1-based, row <= col
  int col = 0;
  Integer value;
};

struct SdpaProblem {
  std::string comment;
  std::vector<int> block_sizes;  // negative = diagonal block
  std::vector<Integer> rhs;
  std::vector<SdpaEntry> entries;

  int constraints() const { return static_cast<int>(rhs.size()); }
};

SdpaProblem to_sdpa(const ReducedProblem& problem);
void write_sdpa(const SdpaProblem& problem, std::ostream& out);
void write_sdpa(const SdpaProblem& problem, const std::filesystem::path& path);
SdpaProblem read_sdpa(std::istream& in);
SdpaProblem read_sdpa(const std::filesystem::path& path);

// Inverse of to_sdpa: checks the block layout (d0, d1, 1, -m) and recovers
// the constraint matrices. Scaling is left at the objective scale only.
ReducedProblem reduced_problem_from_sdpa(const SdpaProblem& sdpa, std::vector<ClassPair> pairs);

}  // namespace flagcert

#endif  // FLAGCERT_SDPGEN_HPP
