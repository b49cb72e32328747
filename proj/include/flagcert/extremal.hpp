#ifndef FLAGCERT_EXTREMAL_HPP
#define FLAGCERT_EXTREMAL_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "flagcert/graph.hpp"
#include "flagcert/rational.hpp"

namespace flagcert {

struct MonotoneCount {
  std::int64_t increasing = 0;
  std::int64_t decreasing = 0;
  std::int64_t total() const { return increasing + decreasing; }
};

// Blocks (t_{k-1}+1..n), (t_{k-2}+1..t_{k-1}), ..., (1..t_1), t_j = floor(jn/k).
Permutation tau_k(int n, int k);

// Exhaustive over all index quadruples.
MonotoneCount count_monotone4(const Permutation& p);

// m_k(tau_k(n)) in closed form.
Integer mk_formula(long n, long k);
// C(floor(n/3), 4) + C(floor((n+1)/3), 4) + C(floor((n+2)/3), 4).
Integer lower_bound_formula(long n);

// Complete 3-partite graph with consecutive parts of sizes n - t2, t2 - t1,
// t1; identical (not just isomorphic) to representation_graph(tau_k(n, 3)).
Graph turan_graph(int n);
// p(co-K4, T3(n)) as an exact rational.
Rational turan_independent4_density(int n);

// The seven-step recipe over all block choices and local replacements,
// together with the reverses, deduplicated and sorted. n >= 15.
std::vector<Permutation> enumerate_W3(int n);

// Minimum of count_monotone4(p).total() over S_n by branch and bound, n <= 10.
std::int64_t brute_force_minimum(int n);
inline constexpr int kMaxBruteForceOrder = 10;

// CSV rows "n,formula,brute_force,w3" for n in [from, to]; brute_force is
// blank above the cap and w3 blank below 15.
void write_extremal_report(int from, int to, std::ostream& out);

}  // namespace flagcert

#endif  // FLAGCERT_EXTREMAL_HPP
