#ifndef FLAGCERT_GRAPH_HPP
#define FLAGCERT_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagcert {

// Raised by the exhaustive routines (canonical forms, admissibility) when a
// graph is larger than they are defined for.
class SizeExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest order accepted by canonical_form / is_admissible.
inline constexpr int kMaxCanonicalOrder = 8;

// A permutation of [n] in one-line notation. Positions are 0-based, values
// are 1..n.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int operator[](int pos) const { return image_[pos]; }
  const std::vector<int>& image() const { return image_; }

  Permutation reversed() const;
  Permutation complemented() const;
  Permutation inverse() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> image_;
};

// Undirected simple graph with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int order() const { return n_; }
  bool adjacent(int u, int v) const {
    return (bits_[row_offset(u) + (v >> 6)] >> (v & 63)) & 1U;
  }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void set_edge(int u, int v, bool present);

  int degree(int v) const;
  std::int64_t edge_count() const;

  // Words of the adjacency row of v; bit (w & 63) of word (w >> 6) is set
  // iff vw is an edge.
  std::span<const std::uint64_t> row(int v) const {
    return {bits_.data() + row_offset(v), static_cast<std::size_t>(words_)};
  }
  int words() const { return words_; }

  // Adjacency row as a mask; only valid for order() <= 64.
  std::uint64_t mask(int v) const { return bits_[row_offset(v)]; }

  bool operator==(const Graph&) const = default;

 private:
  std::size_t row_offset(int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(words_);
  }
  void check_vertex(int v) const;

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Iso-invariant code of a graph on at most 8 vertices: the lexicographically
// minimal upper-triangle adjacency bitstring over all vertex orderings. The bit for the pair (i, j), i < j, sits at index
// j(j-1)/2 + i and index 0 is the most significant bit of `code`.
// `labeled` vertices, if any, are pinned to the first positions in label
// order (used by flags).
struct CanonicalForm {
  int order = 0;
  int labeled = 0;
  std::uint64_t code = 0;

  // Byte encoding: order, labeled, then the bitstring packed MSB-first.
  std::vector<std::uint8_t> bytes() const;
  std::string hex() const;

  auto operator<=>(const CanonicalForm&) const = default;
};

inline int pair_bit_count(int n) { return n * (n - 1) / 2; }

Graph representation_graph(const Permutation& p);
CanonicalForm canonical_form(const Graph& g);
// Graph whose vertex i is the i-th vertex of the ordering encoded in `form`.
Graph graph_from_form(const CanonicalForm& form);

// Isomorphism classes of representation graphs of S_l, ascending by
// canonical form, each in its canonical labeling. 1 <= l <= 8.
std::vector<Graph> enumerate_admissible(int l);

// The same class list with forms and an index lookup; built once per l and
// shared. Class indices everywhere downstream refer to this order.
struct ClassCatalog {
  int order = 0;
  std::vector<Graph> graphs;
  std::vector<CanonicalForm> forms;

  int size() const { return static_cast<int>(graphs.size()); }
  // -1 when the form is not an admissible class.
  int index_of(const CanonicalForm& form) const;
};
const ClassCatalog& admissible_catalog(int l);
bool is_admissible(const Graph& g);

Graph complement(const Graph& g);
// Induced subgraph on `vertices`, keeping their order.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);
// Graph h with h(order[i], order[j]) = g(i, j).
Graph relabel(const Graph& g, std::span<const int> order);
// Inserts a clone of v (same neighbourhood, not adjacent to v) right after v.
Graph clone_vertex(const Graph& g, int v);

// Permutation whose representation graph is that of p with a clone of the
// vertex at position `pos` inserted at position pos + 1.
Permutation clone_permutation(const Permutation& p, int pos);

Graph complete_graph(int n);
Graph empty_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
// Complete multipartite graph with consecutive parts of the given sizes.
Graph complete_multipartite(std::span<const int> part_sizes);

std::string to_string(const Graph& g);

}  // namespace flagcert

#endif  // FLAGCERT_GRAPH_HPP
