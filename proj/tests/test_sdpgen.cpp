#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "flagcert/sdpgen.hpp"
#include "oracles.hpp"

using namespace flagcert;

namespace {

const FlagTables& tables() {
  static const FlagTables t = build_flag_tables();
  return t;
}

const ReducedProblem& problem() {
  static const ReducedProblem p = build_reduced_problem(tables());
  return p;
}

RationalMatrix random_symmetric(int n, std::mt19937_64& rng) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m(i, j) = oracle::frac(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
      m(j, i) = m(i, j);
    }
  }
  return m;
}

Rational inner(const RationalMatrix& a, const RationalMatrix& b) {
  Rational s = 0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  }
  return s;
}

}  // namespace

TEST(ReduceClasses, HalvesTheCatalog) {
  auto pairs = reduce_classes(admissible_catalog(7));
  ASSERT_EQ(pairs.size(), 388U);
  std::set<int> seen;
  for (const auto& p : pairs) {
    EXPECT_LT(p.representative, p.partner);
    seen.insert(p.representative);
    seen.insert(p.partner);
    const auto& cat = admissible_catalog(7);
    EXPECT_EQ(cat.index_of(canonical_form(complement(cat.graphs[p.representative]))), p.partner);
  }
  EXPECT_EQ(seen.size(), 776U);
}

TEST(PairFlags, Sigma0HasTenFixedPointFreeClasses) {
  const auto& t = tables();
  EXPECT_EQ(t.pairing0.size(), 10);
  auto bar = complement_pairing(t.basis0, t.basis0);
  for (int c = 0; c < 10; ++c) {
    auto [a, b] = t.pairing0.classes[c];
    EXPECT_NE(a, b);
    EXPECT_EQ(bar[a], b);
    EXPECT_EQ(t.pairing0.class_of[a], c);
    EXPECT_EQ(t.pairing0.class_of[b], c);
  }
}

TEST(ReduceSigma0Block, ZeroAndK7) {
  const auto& t = tables();
  RationalMatrix z = reduce_sigma0_block(RationalMatrix(20, 20), t.pairing0);
  EXPECT_EQ(z, RationalMatrix(10, 10));
  const int h = t.classes->index_of(canonical_form(complete_graph(7)));
  RationalMatrix r = reduce_sigma0_block(t.table0.matrix(h), t.pairing0);
  const int k4 = t.basis0.index_of(flag_canonical_form(Flag(complete_graph(4), {0})));
  const int c = t.pairing0.class_of[k4];
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) EXPECT_EQ(r(i, j), (i == c && j == c) ? 1 : 0);
  }
}

TEST(FoldSigma2, ZeroSigma2LeavesSigma1) {
  const auto& t = tables();
  RationalMatrix d1 = t.table1.matrix(100);
  EXPECT_EQ(fold_sigma2_into_sigma1(d1, RationalMatrix(71, 71), t.bar12), d1);
}

TEST(FoldSigma2, EmptySevenIsRelabeledSigma2) {
  const auto& t = tables();
  const int h = t.classes->index_of(canonical_form(empty_graph(7)));
  RationalMatrix d1 = t.table1.matrix(h);
  EXPECT_EQ(d1, RationalMatrix(71, 71));
  RationalMatrix d2 = t.table2.matrix(h);
  RationalMatrix f = fold_sigma2_into_sigma1(d1, d2, t.bar12);
  for (int i = 0; i < 71; ++i) {
    for (int j = 0; j < 71; ++j) EXPECT_EQ(f(i, j), d2(t.bar12[i], t.bar12[j]));
  }
}

TEST(FoldSigma2, InnerProductIdentity) {
  const auto& t = tables();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const int h = static_cast<int>(rng() % t.classes->size());
    RationalMatrix q1 = random_symmetric(71, rng);
    RationalMatrix q2(71, 71);
    for (int i = 0; i < 71; ++i) {
      for (int j = 0; j < 71; ++j) q2(t.bar12[i], t.bar12[j]) = q1(i, j);
    }
    RationalMatrix d1 = t.table1.matrix(h), d2 = t.table2.matrix(h);
    EXPECT_EQ(inner(fold_sigma2_into_sigma1(d1, d2, t.bar12), q1), inner(d1, q1) + inner(d2, q2));
  }
}

TEST(ComputeScaling, ObjectiveScaleAndIntegrality) {
  const auto& p = problem();
  EXPECT_EQ(p.scaling.objective_scale, 945);
  ASSERT_EQ(p.scaling.table_scales.size(), 2U);
  const auto& t = tables();
  const Integer n0 = p.scaling.table_scales[0], n1 = p.scaling.table_scales[1];
  for (int h = 0; h < t.classes->size(); ++h) {
    RationalMatrix b = reduce_sigma0_block(t.table0.matrix(h), t.pairing0);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) ASSERT_EQ(Rational(b(i, j) * n0).get_den(), 1);
    }
    RationalMatrix f = fold_sigma2_into_sigma1(t.table1.matrix(h), t.table2.matrix(h), t.bar12);
    for (int i = 0; i < 71; ++i) {
      for (int j = 0; j < 71; ++j) ASSERT_EQ(Rational(f(i, j) * n1).get_den(), 1);
    }
  }
  // M f(H) integral for every class
  for (const Graph& h : t.classes->graphs) EXPECT_EQ(Rational(945 * objective_f(h)).get_den(), 1);
}

TEST(ReducedProblem, Counts) {
  const auto& p = problem();
  EXPECT_EQ(p.constraints(), 388);
  EXPECT_EQ(p.variable_count(), 2611);
  EXPECT_EQ(p.dim0, 10);
  EXPECT_EQ(p.dim1, 71);
  for (int r = 0; r < p.constraints(); ++r) {
    EXPECT_EQ(Rational(p.rhs[r]), 945 * objective_f(tables().classes->graphs[p.pairs[r].representative]));
  }
}

// <A0, B> + <A1, Q1> equals M c_H computed from the full, unreduced matrices.
TEST(ReducedProblem, ScaledEquivalence) {
  const auto& p = problem();
  const auto& t = tables();
  const Rational m = Rational(p.scaling.objective_scale);
  const Rational n0 = Rational(p.scaling.table_scales[0]), n1 = Rational(p.scaling.table_scales[1]);
  std::mt19937_64 rng(13);
  RationalMatrix b = random_symmetric(10, rng);
  RationalMatrix q1 = random_symmetric(71, rng);
  RationalMatrix q0(20, 20), q1a(71, 71), q2(71, 71);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) q0(i, j) = b(t.pairing0.class_of[i], t.pairing0.class_of[j]) * n0 / m;
  }
  for (int i = 0; i < 71; ++i) {
    for (int j = 0; j < 71; ++j) {
      q1a(i, j) = q1(i, j) * n1 / m;
      q2(t.bar12[i], t.bar12[j]) = q1a(i, j);
    }
  }
  for (int r = 0; r < p.constraints(); r += 13) {
    const int h = p.pairs[r].representative;
    Rational reduced = 0;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) reduced += Rational(p.a0(r, i, j)) * b(i, j);
    }
    for (int i = 0; i < 71; ++i) {
      for (int j = 0; j < 71; ++j) reduced += Rational(p.a1(r, i, j)) * q1(i, j);
    }
    Rational c = inner(t.table0.matrix(h), q0) + inner(t.table1.matrix(h), q1a) + inner(t.table2.matrix(h), q2);
    EXPECT_EQ(reduced, m * c);
    // and M (f(H) - c_H) is what the slack measures
    EXPECT_EQ(Rational(p.rhs[r]) - reduced, m * (objective_f(t.classes->graphs[h]) - c));
  }
}

TEST(Sdpa, HeaderAndRoundTrip) {
  const auto& p = problem();
  SdpaProblem s = to_sdpa(p);
  EXPECT_EQ(s.constraints(), 388);
  EXPECT_EQ(s.block_sizes, (std::vector<int>{10, 71, 1, -388}));
  for (int r = 0; r < 388; ++r) EXPECT_EQ(s.rhs[r], p.rhs[r]);
  std::ostringstream a;
  write_sdpa(s, a);
  std::istringstream in(a.str());
  SdpaProblem back = read_sdpa(in);
  std::ostringstream b;
  write_sdpa(back, b);
  EXPECT_EQ(a.str(), b.str());
  // deterministic
  std::ostringstream c;
  write_sdpa(to_sdpa(build_reduced_problem(tables())), c);
  EXPECT_EQ(a.str(), c.str());
  // header lines
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line[0], '"');
  std::getline(lines, line);
  EXPECT_EQ(line, "388");
  std::getline(lines, line);
  EXPECT_EQ(line, "4");
  std::getline(lines, line);
  EXPECT_EQ(line, "10 71 1 -388");
}

TEST(Sdpa, RecoversReducedProblem) {
  const auto& p = problem();
  ReducedProblem q = reduced_problem_from_sdpa(to_sdpa(p), p.pairs);
  EXPECT_EQ(q.rhs, p.rhs);
  EXPECT_EQ(q.block0, p.block0);
  EXPECT_EQ(q.block1, p.block1);
}

TEST(Sdpa, ShippedFileMatches) {
  std::ostringstream a;
  write_sdpa(to_sdpa(problem()), a);
  std::ifstream f(std::string(FLAGCERT_SOURCE_DIR) + "/data/problem.dat-s");
  ASSERT_TRUE(f.good());
  std::stringstream b;
  b << f.rdbuf();
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sdpa, RejectsMalformed) {
  std::istringstream bad("2\n1\n2\n1.5 2\n");
  EXPECT_ANY_THROW(read_sdpa(bad));
  std::istringstream truncated("3\n1\n2\n1 2\n");
  EXPECT_ANY_THROW(read_sdpa(truncated));
}
