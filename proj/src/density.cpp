#include "flagcert/density.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>
#include <string>

#include "flagcert/detail/combinatorics.hpp"
#include "flagcert/detail/small_graph.hpp"

namespace flagcert {

namespace {

// Number of triangles of g with all three vertices in `allowed`, where
// `adjacent` is either the adjacency or the non-adjacency relation.
template <typename Adjacent>
std::int64_t count_triples(std::span<const int> allowed, Adjacent&& adjacent) {
  std::int64_t total = 0;
  const int m = static_cast<int>(allowed.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (!adjacent(allowed[a], allowed[b])) continue;
      for (int c = b + 1; c < m; ++c) {
        if (adjacent(allowed[a], allowed[c]) && adjacent(allowed[b], allowed[c])) ++total;
      }
    }
  }
  return total;
}

bool root_induces(const Graph& host, std::span<const int> root, const Graph& sigma) {
  const int k = static_cast<int>(root.size());
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (host.adjacent(root[a], root[b]) != sigma.adjacent(a, b)) return false;
    }
  }
  return true;
}

std::vector<int> free_vertices(int n, std::span<const int> root) {
  std::vector<bool> taken(n, false);
  for (int v : root) {
    if (v < 0 || v >= n) throw std::out_of_range("root vertex out of range");
    if (taken[v]) throw std::invalid_argument("root labeling is not injective");
    taken[v] = true;
  }
  std::vector<int> rest;
  for (int v = 0; v < n; ++v) {
    if (!taken[v]) rest.push_back(v);
  }
  return rest;
}

// Flag code of (host[root ∪ extra], root).
std::uint64_t rooted_code(const Graph& host, std::span<const int> root,
                          std::span<const int> extra) {
  std::array<int, kMaxCanonicalOrder> order{};
  int n = 0;
  for (int v : root) order[n++] = v;
  for (int v : extra) order[n++] = v;
  const auto adj = detail::small_adjacency(host, std::span(order.data(), n));
  return detail::min_code(adj, n, static_cast<int>(root.size()));
}

void check_same_type(const Flag& f1, const Flag& f2) {
  if (f1.type_size() != f2.type_size() || !(f1.type() == f2.type())) {
    throw std::invalid_argument("flags are over different types");
  }
}

}  // namespace

Integer count_induced(const Graph& h, const Graph& g) {
  const int l = h.order();
  if (l > kMaxCanonicalOrder) throw SizeExceeded("count_induced: pattern too large");
  if (l > g.order()) return 0;
  const std::uint64_t target = canonical_form(h).code;
  std::int64_t hits = 0;
  detail::for_each_combination(g.order(), l, [&](std::span<const int> subset) {
    if (detail::min_code(detail::small_adjacency(g, subset), l, 0) == target) ++hits;
  });
  return hits;
}

Rational subgraph_density(const Graph& h, const Graph& g) {
  if (h.order() > g.order()) {
    throw std::invalid_argument("subgraph_density: pattern larger than host");
  }
  return make_rational(count_induced(h, g), binomial(g.order(), h.order()));
}

std::vector<Integer> class_counts(const Graph& g, int l) {
  const ClassCatalog& catalog = admissible_catalog(l);
  std::vector<std::int64_t> counts(catalog.size(), 0);
  detail::for_each_combination(g.order(), l, [&](std::span<const int> subset) {
    const CanonicalForm form{l, 0, detail::min_code(detail::small_adjacency(g, subset), l, 0)};
    const int idx = catalog.index_of(form);
    if (idx < 0) throw std::invalid_argument("class_counts: host has a non-admissible subgraph");
    ++counts[idx];
  });
  return {counts.begin(), counts.end()};
}

Integer count_k4(const Graph& g) {
  const int n = g.order();
  const int words = g.words();
  std::vector<std::uint64_t> common(words);
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const auto ri = g.row(i);
    for (int j = i + 1; j < n; ++j) {
      if (!g.adjacent(i, j)) continue;
      const auto rj = g.row(j);
      // Common neighbours above j.
      for (int w = 0; w < words; ++w) common[w] = ri[w] & rj[w];
      for (int w = 0; w <= (j >> 6); ++w) {
        const int hi = j - (w << 6);
        if (hi >= 63) {
          common[w] = 0;
        } else {
          common[w] &= ~((std::uint64_t{2} << hi) - 1);
        }
      }
      for (int w = 0; w < words; ++w) {
        std::uint64_t bits = common[w];
        while (bits) {
          const int k = (w << 6) + std::countr_zero(bits);
          bits &= bits - 1;
          const auto rk = g.row(k);
          // Vertices above k in common ∩ N(k).
          std::uint64_t rest = bits & rk[w];
          std::int64_t c = std::popcount(rest);
          for (int x = w + 1; x < words; ++x) c += std::popcount(common[x] & rk[x]);
          total += c;
        }
      }
    }
  }
  return Integer(static_cast<long>(total));
}

Integer count_independent4(const Graph& g) { return count_k4(complement(g)); }

Integer monotone_quadruples(const Graph& g) {
  return count_k4(g) + count_independent4(g);
}

Rational objective_f(const Graph& h) {
  if (h.order() < 4) throw std::invalid_argument("objective_f needs at least 4 vertices");
  return make_rational(monotone_quadruples(h), binomial(h.order(), 4));
}

Rational flag_density(const Flag& f, const Graph& host, std::span<const int> root) {
  const int k = f.type_size();
  if (static_cast<int>(root.size()) != k) {
    throw std::invalid_argument("flag_density: root size does not match the flag type");
  }
  const int n = host.order();
  const int l = f.order();
  const auto rest = free_vertices(n, root);
  if (n < l) return 0;
  if (!root_induces(host, root, f.type().graph())) return 0;
  const std::uint64_t target = flag_canonical_form(f).code;
  std::int64_t hits = 0;
  detail::for_each_subset_of(rest, l - k, [&](std::span<const int> extra) {
    if (rooted_code(host, root, extra) == target) ++hits;
  });
  return make_rational(hits, binomial(n - k, l - k));
}

Rational flag_density(const Flag& f, const Flag& host) {
  return flag_density(f, host.graph(), host.labels());
}

Rational joint_density(const Flag& f1, const Flag& f2, const Graph& host,
                       std::span<const int> root) {
  check_same_type(f1, f2);
  const int k = f1.type_size();
  if (static_cast<int>(root.size()) != k) {
    throw std::invalid_argument("joint_density: root size does not match the flag type");
  }
  const int n = host.order();
  const int l1 = f1.order();
  const int l2 = f2.order();
  if (n < l1 + l2 - k) throw std::invalid_argument("joint_density: host too small");
  const auto rest = free_vertices(n, root);
  if (!root_induces(host, root, f1.type().graph())) return 0;
  const std::uint64_t t1 = flag_canonical_form(f1).code;
  const std::uint64_t t2 = flag_canonical_form(f2).code;
  std::int64_t hits = 0;
  std::vector<int> remaining;
  detail::for_each_subset_of(rest, l1 - k, [&](std::span<const int> a) {
    if (rooted_code(host, root, a) != t1) return;
    remaining.clear();
    std::size_t pa = 0;
    for (int v : rest) {
      if (pa < a.size() && a[pa] == v) {
        ++pa;
      } else {
        remaining.push_back(v);
      }
    }
    detail::for_each_subset_of(remaining, l2 - k, [&](std::span<const int> b) {
      if (rooted_code(host, root, b) == t2) ++hits;
    });
  });
  return make_rational(hits, binomial(n - k, l1 - k) * binomial(n - l1, l2 - k));
}

Rational joint_density(const Flag& f1, const Flag& f2, const Flag& host) {
  return joint_density(f1, f2, host.graph(), host.labels());
}

PairDensityTable::PairDensityTable(int classes, int dimension, Integer denominator)
    : classes_(classes),
      dimension_(dimension),
      denominator_(std::move(denominator)),
      counts_(static_cast<std::size_t>(classes) * dimension * dimension, 0) {}

RationalMatrix PairDensityTable::matrix(int h) const {
  RationalMatrix m(dimension_, dimension_);
  for (int i = 0; i < dimension_; ++i) {
    for (int j = 0; j < dimension_; ++j) m(i, j) = entry(h, i, j);
  }
  return m;
}

PairDensityTable pair_density_table(const FlagBasis& basis, const ClassCatalog& classes) {
  const int k = basis.sigma.size();
  const int l = basis.size;
  const int n = classes.order;
  if (2 * l - k != n) {
    throw std::invalid_argument("pair_density_table: classes must have 2l - |sigma| vertices");
  }
  const int part = l - k;
  Integer arrangements = 1;
  for (int i = 0; i < k; ++i) arrangements *= n - i;
  PairDensityTable table(classes.size(), basis.dimension(),
                         arrangements * binomial(n - k, part));
  const Graph& sigma = basis.sigma.graph();

  std::vector<int> index_of_subset(std::size_t{1} << n, -1);
  for (int h = 0; h < classes.size(); ++h) {
    const Graph& host = classes.graphs[h];
    detail::for_each_arrangement(n, k, [&](std::span<const int> theta) {
      if (!root_induces(host, theta, sigma)) return;
      const auto rest = free_vertices(n, theta);
      unsigned free_mask = 0;
      for (int v : rest) free_mask |= 1U << v;
      std::vector<unsigned> subsets;
      detail::for_each_subset_of(rest, part, [&](std::span<const int> extra) {
        unsigned mask = 0;
        for (int v : extra) mask |= 1U << v;
        const CanonicalForm form{l, k, rooted_code(host, theta, extra)};
        const int idx = basis.index_of(form);
        if (idx < 0) throw std::logic_error("pair_density_table: flag missing from basis");
        index_of_subset[mask] = idx;
        subsets.push_back(mask);
      });
      for (unsigned a : subsets) {
        ++table.count(h, index_of_subset[a], index_of_subset[free_mask ^ a]);
      }
    });
  }
  return table;
}

std::vector<Rational> coefficient_c(std::span<const PairDensityTable> tables,
                                    std::span<const RationalMatrix> qmats) {
  if (tables.size() != qmats.size()) {
    throw std::invalid_argument("coefficient_c: one Q matrix per table expected");
  }
  if (tables.empty()) return {};
  const int classes = tables[0].classes();
  std::vector<Rational> c(classes, 0);
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const auto& table = tables[t];
    const auto& q = qmats[t];
    if (table.classes() != classes || q.rows() != table.dimension() ||
        q.cols() != table.dimension()) {
      throw std::invalid_argument("coefficient_c: dimension mismatch");
    }
    for (int h = 0; h < classes; ++h) {
      Rational sum = 0;
      for (int i = 0; i < table.dimension(); ++i) {
        for (int j = 0; j < table.dimension(); ++j) {
          const auto cnt = table.count(h, i, j);
          if (cnt != 0) sum += q(i, j) * cnt;
        }
      }
      c[h] += sum / table.denominator();
    }
  }
  return c;
}

std::pair<Rational, Rational> averaging_identity_check(const Graph& g, int l) {
  if (l < 4 || l > g.order()) {
    throw std::invalid_argument("averaging_identity_check needs 4 <= l <= v(g)");
  }
  const ClassCatalog& catalog = admissible_catalog(l);
  const auto counts = class_counts(g, l);
  Rational rhs = 0;
  for (int h = 0; h < catalog.size(); ++h) {
    if (counts[h] != 0) rhs += objective_f(catalog.graphs[h]) * counts[h];
  }
  rhs /= binomial(g.order(), l);
  return {objective_f(g), rhs};
}

Rational local_density(const Graph& g, int x) {
  const int n = g.order();
  if (n < 4) throw std::invalid_argument("local_density needs at least 4 vertices");
  if (x < 0 || x >= n) throw std::out_of_range("local_density: vertex out of range");
  std::vector<int> nbrs;
  std::vector<int> non_nbrs;
  for (int v = 0; v < n; ++v) {
    if (v == x) continue;
    (g.adjacent(x, v) ? nbrs : non_nbrs).push_back(v);
  }
  const std::int64_t cliques =
      count_triples(nbrs, [&g](int a, int b) { return g.adjacent(a, b); });
  const std::int64_t independents =
      count_triples(non_nbrs, [&g](int a, int b) { return !g.adjacent(a, b); });
  return make_rational(Integer(static_cast<long>(cliques + independents)), binomial(n - 1, 3));
}

void write_table(const PairDensityTable& table, std::ostream& out) {
  for (int h = 0; h < table.classes(); ++h) {
    for (int i = 0; i < table.dimension(); ++i) {
      for (int j = 0; j < table.dimension(); ++j) {
        if (table.count(h, i, j) == 0) continue;
        const Rational q = table.entry(h, i, j);
        out << h << ' ' << i << ' ' << j << ' ' << q.get_num() << '/' << q.get_den() << '\n';
      }
    }
  }
}

}  // namespace flagcert
