#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flagcert/graph.hpp"
#include "oracles.hpp"

using namespace flagcert;

namespace {

// Distinct inversion graphs of all of S_l, up to isomorphism, by brute force.
int brute_class_count(int l) {
  std::vector<Graph> reps;
  std::vector<int> p(l);
  std::iota(p.begin(), p.end(), 1);
  do {
    Graph g = oracle::inversion_graph(p);
    bool seen = false;
    for (const auto& r : reps) {
      if (oracle::isomorphic(r, g)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(g);
  } while (std::next_permutation(p.begin(), p.end()));
  return static_cast<int>(reps.size());
}

bool brute_admissible(const Graph& g) {
  std::vector<int> p(g.order());
  std::iota(p.begin(), p.end(), 1);
  do {
    if (oracle::isomorphic(oracle::inversion_graph(p), g)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Graph graph_s() {
  // x = 0, y_i = 1..3, z_i = 4..6
  Graph g(7);
  for (int i = 0; i < 3; ++i) {
    g.add_edge(0, 1 + i);
    g.add_edge(1 + i, 4 + i);
  }
  return g;
}

}  // namespace

TEST(RepresentationGraph, IdentityIsEmpty) {
  for (int n = 1; n <= 9; ++n) {
    Graph g = representation_graph(Permutation::identity(n));
    EXPECT_EQ(g.order(), n);
    EXPECT_EQ(g.edge_count(), 0);
  }
}

TEST(RepresentationGraph, TransposeIsOneEdge) {
  Graph g = representation_graph(Permutation({2, 1}));
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_TRUE(g.adjacent(0, 1));
}

TEST(RepresentationGraph, Tau3Of12IsBalancedTripartite) {
  Graph g = representation_graph(Permutation({9, 10, 11, 12, 5, 6, 7, 8, 1, 2, 3, 4}));
  const int parts[] = {4, 4, 4};
  EXPECT_TRUE(oracle::same_graph(g, complete_multipartite(parts)));
}

TEST(RepresentationGraph, MatchesInversionOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 20);
    Permutation p = oracle::random_permutation(n, rng);
    EXPECT_TRUE(oracle::same_graph(representation_graph(p), oracle::inversion_graph(p.image())));
  }
}

TEST(CanonicalForm, EmptyGraphIsZero) {
  CanonicalForm f = canonical_form(Graph(3));
  EXPECT_EQ(f.order, 3);
  EXPECT_EQ(f.code, 0U);
}

TEST(CanonicalForm, RelabeledPathsAgree) {
  Graph a(3), b(3);
  a.add_edge(0, 1);
  a.add_edge(1, 2);
  b.add_edge(1, 0);
  b.add_edge(0, 2);
  EXPECT_EQ(canonical_form(a), canonical_form(b));
}

TEST(CanonicalForm, K4AndCoK4Differ) {
  EXPECT_NE(canonical_form(complete_graph(4)), canonical_form(empty_graph(4)));
}

TEST(CanonicalForm, InvariantUnderRandomRelabeling) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Graph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng() & 1U) g.add_edge(u, v);
      }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Graph h = relabel(g, order);
    EXPECT_EQ(canonical_form(g), canonical_form(h));
    EXPECT_TRUE(oracle::isomorphic(graph_from_form(canonical_form(g)), g));
  }
}

TEST(CanonicalForm, EqualFormsIffIsomorphic) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Graph a(n), b(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng() % 3 == 0) a.add_edge(u, v);
        if (rng() % 3 == 0) b.add_edge(u, v);
      }
    }
    EXPECT_EQ(canonical_form(a) == canonical_form(b), oracle::isomorphic(a, b));
  }
}

TEST(CanonicalForm, RejectsLargeGraphs) { EXPECT_THROW(canonical_form(Graph(9)), SizeExceeded); }

TEST(EnumerateAdmissible, KnownCounts) {
  const int expected[] = {1, 2, 4, 11, 33, 142, 776, 5699};
  for (int l = 1; l <= 8; ++l) EXPECT_EQ(enumerate_admissible(l).size(), expected[l - 1]) << l;
}

TEST(EnumerateAdmissible, MatchesBruteForceUpToSix) {
  for (int l = 1; l <= 6; ++l) EXPECT_EQ(static_cast<int>(enumerate_admissible(l).size()), brute_class_count(l));
}

TEST(EnumerateAdmissible, ThreeVertexClasses) {
  auto classes = enumerate_admissible(3);
  ASSERT_EQ(classes.size(), 4U);
  std::multiset<std::int64_t> edges;
  for (const auto& g : classes) edges.insert(g.edge_count());
  // empty, one edge, path, triangle
  EXPECT_EQ(edges, (std::multiset<std::int64_t>{0, 1, 2, 3}));
}

TEST(EnumerateAdmissible, SortedAndCanonical) {
  const auto& cat = admissible_catalog(6);
  for (int i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(canonical_form(cat.graphs[i]), cat.forms[i]);
    EXPECT_EQ(cat.index_of(cat.forms[i]), i);
    if (i > 0) EXPECT_LT(cat.forms[i - 1], cat.forms[i]);
  }
}

TEST(IsAdmissible, GraphSIsNot) { EXPECT_FALSE(is_admissible(graph_s())); }

TEST(IsAdmissible, CompleteGraph) { EXPECT_TRUE(is_admissible(complete_graph(7))); }

TEST(IsAdmissible, FiveCycleMatchesBruteForce) {
  EXPECT_FALSE(brute_admissible(cycle_graph(5)));
  EXPECT_FALSE(is_admissible(cycle_graph(5)));
}

TEST(IsAdmissible, AgreesWithBruteForceOnRandomSmallGraphs) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Graph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng() & 1U) g.add_edge(u, v);
      }
    }
    EXPECT_EQ(is_admissible(g), brute_admissible(g));
  }
}

TEST(Complement, K4) { EXPECT_EQ(complement(complete_graph(4)), empty_graph(4)); }

TEST(Complement, Involution) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Graph g = representation_graph(oracle::random_permutation(1 + static_cast<int>(rng() % 70), rng));
    EXPECT_EQ(complement(complement(g)), g);
    EXPECT_EQ(g.edge_count() + complement(g).edge_count(), oracle::binom(g.order(), 2));
  }
}

TEST(InducedSubgraph, WholeVertexSet) {
  Graph g = cycle_graph(6);
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(induced_subgraph(g, all), g);
}

TEST(InducedSubgraph, OnePartOfTuran) {
  const int parts[] = {4, 4, 4};
  Graph t = complete_multipartite(parts);
  std::vector<int> part{4, 5, 6, 7};
  EXPECT_EQ(induced_subgraph(t, part), empty_graph(4));
}

TEST(InducedSubgraph, HeredityOfAdmissibility) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    const int n = 8 + static_cast<int>(rng() % 8);
    Graph g = representation_graph(oracle::random_permutation(n, rng));
    std::vector<int> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), rng);
    vs.resize(1 + rng() % 8);
    Graph h = induced_subgraph(g, vs);
    EXPECT_TRUE(oracle::same_graph(h, oracle::induced(g, vs)));
    EXPECT_TRUE(is_admissible(h));
  }
}

TEST(ClonePermutation, IdentityStaysIdentity) {
  EXPECT_EQ(clone_permutation(Permutation::identity(5), 2), Permutation::identity(6));
}

TEST(ClonePermutation, TransposeFirstPosition) {
  Permutation q = clone_permutation(Permutation({2, 1}), 0);
  Graph g = oracle::inversion_graph(q.image());
  // vertex 0 and its clone 1 are non-adjacent, both adjacent to 2
  EXPECT_FALSE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_TRUE(g.adjacent(1, 2));
}

TEST(ClonePermutation, CloneProperty) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    Permutation p = oracle::random_permutation(n, rng);
    const int pos = static_cast<int>(rng() % n);
    Permutation q = clone_permutation(p, pos);
    Graph g = oracle::inversion_graph(p.image());
    Graph h = oracle::inversion_graph(q.image());
    // expected: g with vertex pos duplicated at pos+1
    Graph expect(n + 1);
    auto old = [pos](int v) { return v <= pos ? v : v - 1; };
    for (int u = 0; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        if (u == pos && v == pos + 1) continue;
        if (g.adjacent(old(u), old(v))) expect.add_edge(u, v);
      }
    }
    EXPECT_TRUE(oracle::same_graph(h, expect));
    EXPECT_TRUE(oracle::same_graph(clone_vertex(g, pos), expect));
  }
}

TEST(Permutation, RejectsNonPermutation) {
  EXPECT_ANY_THROW(Permutation({1, 1, 3}));
  EXPECT_ANY_THROW(Permutation({0, 1}));
}

TEST(Graph, RejectsBadVertices) {
  Graph g(3);
  EXPECT_ANY_THROW(g.add_edge(0, 3));
  EXPECT_ANY_THROW(g.add_edge(1, 1));
}
