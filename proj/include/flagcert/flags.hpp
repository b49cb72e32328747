#ifndef FLAGCERT_FLAGS_HPP
#define FLAGCERT_FLAGS_HPP

#include <span>
#include <vector>

#include "flagcert/graph.hpp"

namespace flagcert {

// An admissible graph on the labeled vertex set {0..k-1}.
class TypeGraph {
 public:
  TypeGraph() = default;
  explicit TypeGraph(Graph graph);

  const Graph& graph() const { return graph_; }
  int size() const { return graph_.order(); }

  bool operator==(const TypeGraph&) const = default;

 private:
  Graph graph_;
};

// Presets: a single vertex, the path 0-1-2 and its complement (edge 0-2).
TypeGraph sigma0();
TypeGraph sigma1();
TypeGraph sigma2();

TypeGraph complement(const TypeGraph& sigma);

// A graph together with an injective labeling of k of its vertices; labels()[i]
// is the vertex carrying label i.
class Flag {
 public:
  Flag() = default;
  Flag(Graph graph, std::vector<int> labels);

  const Graph& graph() const { return graph_; }
  const std::vector<int>& labels() const { return labels_; }
  int order() const { return graph_.order(); }
  int type_size() const { return static_cast<int>(labels_.size()); }
  // Induced graph on the labeled vertices, read in label order.
  TypeGraph type() const;

 private:
  Graph graph_;
  std::vector<int> labels_;
};

// Minimal code over orderings that put the labeled vertices first, in label
// order; equal iff the flags are isomorphic. order() <= 8.
CanonicalForm flag_canonical_form(const Flag& f);
// Flag with vertex i at position i of the encoded ordering, labels 0..k-1.
Flag flag_from_form(const CanonicalForm& form);

Flag complement_flag(const Flag& f);

// All sigma-flags on `size` vertices up to flag isomorphism, ascending by
// canonical form.
struct FlagBasis {
  TypeGraph sigma;
  int size = 0;
  std::vector<Flag> flags;
  std::vector<CanonicalForm> forms;

  int dimension() const { return static_cast<int>(flags.size()); }
  // -1 when absent.
  int index_of(const CanonicalForm& form) const;
};

FlagBasis enumerate_flags(const TypeGraph& sigma, int size);

// pairing[i] = index in `to` of the complement of flag i of `from`. Throws if
// some complement is missing (the bases must be over complementary types).
std::vector<int> complement_pairing(const FlagBasis& from, const FlagBasis& to);

}  // namespace flagcert

#endif  // FLAGCERT_FLAGS_HPP
