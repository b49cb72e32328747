#ifndef FLAGCERT_DENSITY_HPP
#define FLAGCERT_DENSITY_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "flagcert/flags.hpp"
#include "flagcert/graph.hpp"
#include "flagcert/rational.hpp"

namespace flagcert {

// Number of vertex subsets of g inducing a copy of h (h.order() <= 8).
Integer count_induced(const Graph& h, const Graph& g);
Rational subgraph_density(const Graph& h, const Graph& g);

// counts[i] = number of l-subsets of g inducing class i of
// admissible_catalog(l). Throws if g has a non-admissible l-subset.
std::vector<Integer> class_counts(const Graph& g, int l);

Integer count_k4(const Graph& g);
Integer count_independent4(const Graph& g);
// F(G) = P(K4, G) + P(co-K4, G); equals the number of monotone 4-term
// subsequences when g is a representation graph.
Integer monotone_quadruples(const Graph& g);
Rational objective_f(const Graph& h);

// Density of f in the rooted graph (host, root). Zero when host is smaller
// than f or when the root does not induce f's type.
Rational flag_density(const Flag& f, const Graph& host, std::span<const int> root);
Rational flag_density(const Flag& f, const Flag& host);

// Probability that random U, U' with |U| = |f1|, |U'| = |f2| and
// U ∩ U' = root induce f1 and f2. Requires host.order() >= |f1| + |f2| - k.
Rational joint_density(const Flag& f1, const Flag& f2, const Graph& host,
                       std::span<const int> root);
Rational joint_density(const Flag& f1, const Flag& f2, const Flag& host);

// E over all injective theta: [k] -> V(H) of p(F_i, F_j; (H, theta)), stored
// as integer numerators over a common denominator |Theta| * #splits.
class PairDensityTable {
 public:
  PairDensityTable() = default;
  PairDensityTable(int classes, int dimension, Integer denominator);

  int classes() const { return classes_; }
  int dimension() const { return dimension_; }
  const Integer& denominator() const { return denominator_; }

  std::int32_t count(int h, int i, int j) const {
    return counts_[offset(h) + static_cast<std::size_t>(i) * dimension_ + j];
  }
  std::int32_t& count(int h, int i, int j) {
    return counts_[offset(h) + static_cast<std::size_t>(i) * dimension_ + j];
  }
  Rational entry(int h, int i, int j) const {
    return make_rational(count(h, i, j), denominator_);
  }
  RationalMatrix matrix(int h) const;

 private:
  std::size_t offset(int h) const {
    return static_cast<std::size_t>(h) * dimension_ * dimension_;
  }

  int classes_ = 0;
  int dimension_ = 0;
  Integer denominator_ = 1;
  std::vector<std::int32_t> counts_;
};

// Tables are built at the minimal host size 2l - |sigma|, which must equal
// the order of the catalog graphs.
PairDensityTable pair_density_table(const FlagBasis& basis, const ClassCatalog& classes);

// c_H = sum_k <Q_k, D^k_H> for every class H.
std::vector<Rational> coefficient_c(std::span<const PairDensityTable> tables,
                                    std::span<const RationalMatrix> qmats);

// (f(g), sum over l-vertex classes H of f(H) p(H, g)).
std::pair<Rational, Rational> averaging_identity_check(const Graph& g, int l);

// f(x, G): monotone quadruples through x over C(n-1, 3).
Rational local_density(const Graph& g, int x);

// Text dump, one "H i j num/den" line per nonzero entry, sorted.
void write_table(const PairDensityTable& table, std::ostream& out);

}  // namespace flagcert

#endif  // FLAGCERT_DENSITY_HPP
