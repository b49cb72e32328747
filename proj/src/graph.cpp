#include "flagcert/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <numeric>
#include <sstream>

#include "flagcert/detail/small_graph.hpp"

namespace flagcert {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = size();
  std::vector<bool> seen(n + 1, false);
  for (int v : image_) {
    if (v < 1 || v > n || seen[v]) {
      throw std::invalid_argument("not a permutation of [" + std::to_string(n) +
                                  "]: " + to_string());
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 1);
  return Permutation(std::move(image));
}

Permutation Permutation::reversed() const {
  return Permutation(std::vector<int>(image_.rbegin(), image_.rend()));
}

Permutation Permutation::complemented() const {
  std::vector<int> image(image_);
  for (int& v : image) v = size() + 1 - v;
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> image(size());
  for (int i = 0; i < size(); ++i) image[image_[i] - 1] = i + 1;
  return Permutation(std::move(image));
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) out << ',';
    out << image_[i];
  }
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw std::out_of_range("vertex " + std::to_string(v) +
                            " out of range for graph of order " +
                            std::to_string(n_));
  }
}

void Graph::set_edge(int u, int v, bool present) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("loops are not allowed");
  const std::uint64_t bu = std::uint64_t{1} << (u & 63);
  const std::uint64_t bv = std::uint64_t{1} << (v & 63);
  if (present) {
    bits_[row_offset(u) + (v >> 6)] |= bv;
    bits_[row_offset(v) + (u >> 6)] |= bu;
  } else {
    bits_[row_offset(u) + (v >> 6)] &= ~bv;
    bits_[row_offset(v) + (u >> 6)] &= ~bu;
  }
}

void Graph::add_edge(int u, int v) { set_edge(u, v, true); }
void Graph::remove_edge(int u, int v) { set_edge(u, v, false); }

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (std::uint64_t w : row(v)) d += std::popcount(w);
  return d;
}

std::int64_t Graph::edge_count() const {
  std::int64_t twice = 0;
  for (std::uint64_t w : bits_) twice += std::popcount(w);
  return twice / 2;
}

// ---------------------------------------------------------------------------
// Canonical forms

std::vector<std::uint8_t> CanonicalForm::bytes() const {
  const int bits = pair_bit_count(order);
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(order),
                                static_cast<std::uint8_t>(labeled)};
  for (int start = 0; start < bits; start += 8) {
    std::uint8_t byte = 0;
    for (int b = 0; b < 8; ++b) {
      const int idx = start + b;
      byte <<= 1;
      if (idx < bits && ((code >> (bits - 1 - idx)) & 1U)) byte |= 1;
    }
    out.push_back(byte);
  }
  return out;
}

std::string CanonicalForm::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : bytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

namespace detail {

namespace {

// Branch-and-bound search for the minimal code. Positions are filled one at a
// time; placing a vertex at position p fixes the p bits of column p, so a
// prefix that already exceeds the incumbent can be cut.
class MinCodeSearch {
 public:
  MinCodeSearch(const SmallAdjacency& adj, int n, int fixed)
      : adj_(adj), n_(n), fixed_(fixed), total_bits_(pair_bit_count(n)) {}

  std::uint64_t run() {
    for (int p = 0; p < fixed_; ++p) order_[p] = p;
    // Column bits of the pinned prefix.
    std::uint64_t prefix = 0;
    for (int p = 1; p < fixed_; ++p) {
      for (int i = 0; i < p; ++i) prefix = (prefix << 1) | ((adj_[p] >> i) & 1U);
    }
    const std::uint32_t used = fixed_ == 0 ? 0 : ((1U << fixed_) - 1);
    extend(fixed_, prefix, used, true);
    return best_;
  }

 private:
  void extend(int pos, std::uint64_t prefix, std::uint32_t used, bool less) {
    if (pos == n_) {
      if (!have_best_ || prefix < best_) {
        best_ = prefix;
        have_best_ = true;
      }
      return;
    }
    const int bits_after = (pos + 1) * pos / 2;
    for (int v = 0; v < n_; ++v) {
      if (used & (1U << v)) continue;
      std::uint64_t next = prefix;
      for (int i = 0; i < pos; ++i) next = (next << 1) | ((adj_[v] >> order_[i]) & 1U);
      bool next_less = less || !have_best_;
      if (!next_less) {
        const std::uint64_t incumbent = best_ >> (total_bits_ - bits_after);
        if (next > incumbent) continue;
        next_less = next < incumbent;
      }
      order_[pos] = v;
      extend(pos + 1, next, used | (1U << v), next_less);
    }
  }

  const SmallAdjacency& adj_;
  int n_;
  int fixed_;
  int total_bits_;
  std::array<int, kMaxCanonicalOrder> order_{};
  std::uint64_t best_ = 0;
  bool have_best_ = false;
};

}  // namespace

std::uint64_t min_code(const SmallAdjacency& adj, int n, int fixed) {
  if (n <= 1) return 0;
  return MinCodeSearch(adj, n, fixed).run();
}

SmallAdjacency small_adjacency(const Graph& g, std::span<const int> order) {
  SmallAdjacency adj{};
  const int n = static_cast<int>(order.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (g.adjacent(order[a], order[b])) {
        adj[a] |= static_cast<std::uint16_t>(1U << b);
        adj[b] |= static_cast<std::uint16_t>(1U << a);
      }
    }
  }
  return adj;
}

}  // namespace detail

CanonicalForm canonical_form(const Graph& g) {
  const int n = g.order();
  if (n > kMaxCanonicalOrder) {
    throw SizeExceeded("canonical_form supports at most " +
                       std::to_string(kMaxCanonicalOrder) + " vertices, got " +
                       std::to_string(n));
  }
  std::array<int, kMaxCanonicalOrder> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  const auto adj = detail::small_adjacency(g, std::span(order.data(), n));
  return {n, 0, detail::min_code(adj, n, 0)};
}

Graph graph_from_form(const CanonicalForm& form) {
  const int n = form.order;
  const int bits = pair_bit_count(n);
  Graph g(n);
  int idx = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++idx) {
      if ((form.code >> (bits - 1 - idx)) & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Admissible classes

namespace {

ClassCatalog build_catalog(int l) {
  std::vector<int> p(l);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::uint64_t> codes;
  std::vector<int> inv(l), rc(l), rci(l);
  do {
    // p, its inverse and their reverse-complements share a graph class.
    for (int i = 0; i < l; ++i) inv[p[i] - 1] = i + 1;
    for (int i = 0; i < l; ++i) rc[i] = l + 1 - p[l - 1 - i];
    for (int i = 0; i < l; ++i) rci[i] = l + 1 - inv[l - 1 - i];
    if (inv < p || rc < p || rci < p) continue;
    detail::SmallAdjacency adj{};
    for (int i = 0; i < l; ++i) {
      for (int j = i + 1; j < l; ++j) {
        if (p[i] > p[j]) {
          adj[i] |= static_cast<std::uint16_t>(1U << j);
          adj[j] |= static_cast<std::uint16_t>(1U << i);
        }
      }
    }
    codes.push_back(detail::min_code(adj, l, 0));
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

  ClassCatalog catalog;
  catalog.order = l;
  for (std::uint64_t code : codes) {
    const CanonicalForm form{l, 0, code};
    catalog.forms.push_back(form);
    catalog.graphs.push_back(graph_from_form(form));
  }
  return catalog;
}

}  // namespace

int ClassCatalog::index_of(const CanonicalForm& form) const {
  auto it = std::lower_bound(forms.begin(), forms.end(), form);
  if (it == forms.end() || *it != form) return -1;
  return static_cast<int>(it - forms.begin());
}

const ClassCatalog& admissible_catalog(int l) {
  if (l < 1 || l > kMaxCanonicalOrder) {
    throw SizeExceeded("admissible classes are enumerated for 1 <= l <= " +
                       std::to_string(kMaxCanonicalOrder) + ", got " +
                       std::to_string(l));
  }
  static std::array<std::once_flag, kMaxCanonicalOrder + 1> once;
  static std::array<ClassCatalog, kMaxCanonicalOrder + 1> catalogs;
  std::call_once(once[l], [l] { catalogs[l] = build_catalog(l); });
  return catalogs[l];
}

std::vector<Graph> enumerate_admissible(int l) {
  return admissible_catalog(l).graphs;
}

bool is_admissible(const Graph& g) {
  if (g.order() > kMaxCanonicalOrder) {
    throw SizeExceeded("is_admissible supports at most " +
                       std::to_string(kMaxCanonicalOrder) + " vertices");
  }
  if (g.order() == 0) return true;
  return admissible_catalog(g.order()).index_of(canonical_form(g)) >= 0;
}

// ---------------------------------------------------------------------------
// Structural operations

Graph representation_graph(const Permutation& p) {
  const int n = p.size();
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (p[i] > p[j]) g.add_edge(i, j);
    }
  }
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.order();
  Graph h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!g.adjacent(i, j)) h.add_edge(i, j);
    }
  }
  return h;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  const int k = static_cast<int>(vertices.size());
  for (int v : vertices) {
    if (v < 0 || v >= g.order()) {
      throw std::out_of_range("induced_subgraph: vertex " + std::to_string(v) +
                              " out of range");
    }
  }
  Graph h(k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (vertices[a] == vertices[b]) {
        throw std::invalid_argument("induced_subgraph: repeated vertex");
      }
      if (g.adjacent(vertices[a], vertices[b])) h.add_edge(a, b);
    }
  }
  return h;
}

Graph relabel(const Graph& g, std::span<const int> order) {
  const int n = g.order();
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("relabel: ordering has wrong length");
  }
  Graph h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) h.add_edge(order[i], order[j]);
    }
  }
  return h;
}

Graph clone_vertex(const Graph& g, int v) {
  const int n = g.order();
  if (v < 0 || v >= n) throw std::out_of_range("clone_vertex: vertex out of range");
  auto old_index = [v](int w) { return w <= v ? w : w - 1; };
  Graph h(n + 1);
  for (int a = 0; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (a == v && b == v + 1) continue;
      if (g.adjacent(old_index(a), old_index(b))) h.add_edge(a, b);
    }
  }
  return h;
}

Permutation clone_permutation(const Permutation& p, int pos) {
  const int n = p.size();
  if (pos < 0 || pos >= n) {
    throw std::out_of_range("clone_permutation: position out of range");
  }
  // 1-based piecewise definition with k = pos + 1.
  const int k = pos + 1;
  auto tau = [&p](int i) { return p[i - 1]; };
  std::vector<int> image(n + 1);
  for (int i = 1; i <= n + 1; ++i) {
    int value;
    if (i <= k) {
      value = tau(i) <= tau(k) ? tau(i) : tau(i) + 1;
    } else if (i == k + 1) {
      value = tau(k) + 1;
    } else {
      value = tau(i - 1) < tau(k) ? tau(i - 1) : tau(i - 1) + 1;
    }
    image[i - 1] = value;
  }
  return Permutation(std::move(image));
}

Graph complete_graph(int n) { return complement(Graph(n)); }

Graph empty_graph(int n) { return Graph(n); }

Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete_multipartite(std::span<const int> part_sizes) {
  std::vector<int> part;
  for (std::size_t p = 0; p < part_sizes.size(); ++p) {
    part.insert(part.end(), part_sizes[p], static_cast<int>(p));
  }
  const int n = static_cast<int>(part.size());
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (part[i] != part[j]) g.add_edge(i, j);
    }
  }
  return g;
}

std::string to_string(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ":";
  bool first = true;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      if (!g.adjacent(i, j)) continue;
      out << (first ? "" : ",") << i << '-' << j;
      first = false;
    }
  }
  return out.str();
}

}  // namespace flagcert
