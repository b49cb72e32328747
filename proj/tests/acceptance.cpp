// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "flagcert/certify.hpp"
#include "flagcert/cli.hpp"
#include "flagcert/density.hpp"
#include "flagcert/extremal.hpp"
#include "flagcert/rounding.hpp"
#include "flagcert/solverio.hpp"
#include "oracles.hpp"

using namespace flagcert;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kData = fs::path(FLAGCERT_SOURCE_DIR) / "data";
const fs::path kWork = fs::temp_directory_path() / ("flagcert_acceptance_" + std::to_string(::getpid()));

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

const FlagTables& tables() {
  static const FlagTables t = build_flag_tables();
  return t;
}

const ReducedProblem& problem() {
  static const ReducedProblem p = build_reduced_problem(tables());
  return p;
}

// Set by criterion 3 when the pipeline produced a certified solution.
fs::path g_pipeline_solution;

void criterion1(Verdict& v) {
  auto t0 = Clock::now();
  const auto classes = enumerate_admissible(7);
  const double secs = seconds_since(t0);
  v.check(classes.size() == 776, "776 classes at 7 vertices");
  v.check(secs < 10, "enumeration under 10 s");
  const int d0 = enumerate_flags(sigma0(), 4).dimension();
  const int d1 = enumerate_flags(sigma1(), 5).dimension();
  const int d2 = enumerate_flags(sigma2(), 5).dimension();
  v.check(d0 == 20 && d1 == 71 && d2 == 71, "flag bases 20/71/71");
  v.note << " classes=" << classes.size() << " in " << secs << "s; bases " << d0 << "/" << d1 << "/" << d2;
}

void criterion2(Verdict& v) {
  const auto& t = tables();
  const auto pairs = reduce_classes(*t.classes);
  v.check(pairs.size() == 388, "388 representatives");
  bool fixed_point_free = t.pairing0.size() == 10;
  for (const auto& c : t.pairing0.classes) fixed_point_free = fixed_point_free && c[0] != c[1];
  v.check(fixed_point_free, "sigma0 pairing has 10 two-element classes");
  SdpaProblem sdpa = to_sdpa(problem());
  const int vars = solution_entry_count(t.pairing0.size(), t.basis1.dimension());
  v.check(vars == 2611, "2611 variables");
  v.check(static_cast<int>(sdpa.rhs.size()) == 388, "388 constraints");
  v.note << " representatives=" << pairs.size() << " variables=" << vars << " sigma0 classes=" << t.pairing0.size();
}

void criterion3(Verdict& v) {
  try {
    v.note << " solver=" << resolve_solver({}).string();
  } catch (const SolverError& e) {
    v.check(false, e.what());
    return;
  }
  const fs::path w = kWork / "pipeline";
  std::ostringstream out, err;
  auto t0 = Clock::now();
  const int code = run_subcommand({"flagcert", "--workdir", w.string(), "pipeline", "--timeout", "1790"}, out, err);
  const double secs = seconds_since(t0);
  v.check(code == kExitOk, "pipeline exit 0 (got " + std::to_string(code) + ": " + err.str() + ")");
  v.check(secs < 1800, "pipeline under 30 min");
  v.check(out.str().find("bound = 1/27") != std::string::npos, "certified bound 1/27");
  try {
    NumericalSolution s = parse_solution(w / "numerical.sol", read_sdpa(w / "problem.dat-s"));
    v.check(std::abs(s.objective - 35.0) < 1e-5, "numerical objective within 1e-5 of 35");
    v.note.precision(12);
    v.note << " objective=" << s.objective;
  } catch (const std::exception& e) {
    v.check(false, std::string("numerical solution unreadable: ") + e.what());
  }
  v.note.precision(4);
  v.note << " wall=" << secs << "s";
  if (code == kExitOk) g_pipeline_solution = w / "exact_solution.txt";
}

RationalMatrix rational_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const int n = static_cast<int>(rows.size());
  RationalMatrix m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

Eigen::MatrixXd noisy(const RationalMatrix& m, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) d(i, j) = d(j, i) = m(i, j).get_d() + u(rng);
  }
  return d;
}

BlockEquation entry_equation(int n, int i, int j, const Rational& value) {
  RationalMatrix c(n, n);
  if (i == j) {
    c(i, i) = 1;
  } else {
    c(i, j) = c(j, i) = Rational(1, 2);
  }
  return {{c}, value};
}

// Equations Q(i, j) = m(i, j) on the given cells.
std::vector<BlockEquation> pin(const RationalMatrix& m, std::initializer_list<std::pair<int, int>> cells) {
  std::vector<BlockEquation> eqs;
  for (auto [i, j] : cells) eqs.push_back(entry_equation(m.rows(), i, j, m(i, j)));
  return eqs;
}

bool fixture_recovers(const RationalMatrix& exact, const Eigen::MatrixXd& numeric,
                      std::vector<RationalVector> nulls, std::vector<BlockEquation> eqs) {
  BuildInputs in;
  in.numeric = {numeric};
  in.null_vectors = {std::move(nulls)};
  in.equations = std::move(eqs);
  BuildOutcome out = build_and_solve(in);
  return out.outcome == "ok" && out.blocks.size() == 1 && out.blocks[0] == exact;
}

void criterion4(Verdict& v) {
  std::mt19937_64 rng(4);
  const RoundingConfig cfg;
  int recovered = 0;

  // rank 2 of 3, null vector supplied exactly
  RationalMatrix a = rational_matrix({{2, 1, 1}, {1, 1, 0}, {1, 0, 1}});
  recovered += fixture_recovers(a, noisy(a, 1e-8, rng), {{1, -1, -1}}, pin(a, {{0, 0}, {1, 1}, {0, 1}}));

  // rank 2 of 4 at noise 1e-5; the null space is read off the numerical
  // matrix and rationalized
  RationalMatrix b = rational_matrix({{1, 0, 1, 1}, {0, 1, 1, -1}, {1, 1, 2, 0}, {1, -1, 0, 2}});
  Eigen::MatrixXd bn = noisy(b, 1e-5, rng);
  auto raw = null_basis(bn, cfg.eps1);
  std::vector<RationalVector> nulls;
  try {
    nulls = rationalize_basis(raw, cfg.denom_bound, cfg.guess_tolerance);
  } catch (const RoundingError&) {
  }
  v.check(nulls.size() == 2, "perturbed fixture null space of dimension 2");
  recovered += fixture_recovers(b, bn, nulls, pin(b, {{0, 0}, {1, 1}, {0, 1}}));

  // strictly interior, no null vectors
  RationalMatrix c = rational_matrix({{2, 1}, {1, 3}});
  recovered += fixture_recovers(c, noisy(c, 1e-7, rng), {}, pin(c, {{0, 0}, {1, 1}, {0, 1}}));
  v.check(recovered == 3, "all three fixtures recover the exact optimum");

  int agree = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    RationalMatrix g(n, n), m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = static_cast<long>(rng() % 7) - 3;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int k = 0; k < n; ++k) s += g(k, i) * g(k, j);
        m(i, j) = s;
      }
    }
    if (t % 2) m(t % n, t % n) -= static_cast<long>(rng() % 4);
    agree += psd_check(m).psd == oracle::psd_by_charpoly(m);
  }
  v.check(agree == 500, "LDL^T agrees with the characteristic polynomial on 500 matrices");
  v.note << " fixtures=" << recovered << "/3 psd agreement=" << agree << "/500";
}

void criterion5(Verdict& v) {
  const fs::path sol = g_pipeline_solution.empty() ? kData / "exact_solution.txt" : g_pipeline_solution;
  v.note << " solution=" << (g_pipeline_solution.empty() ? "shipped" : "pipeline");
  Certificate cert = certify(problem(), *tables().classes, load_solution(sol));
  v.check(cert.certified(), "certified");
  auto turan = turan_representatives(problem(), *tables().classes);
  v.check(turan.size() == 8, "8 Turan representatives");
  int tight_turan = 0;
  for (int r : turan) {
    tight_turan += std::find(cert.tight_set.begin(), cert.tight_set.end(), r) != cert.tight_set.end();
  }
  v.check(tight_turan == 8, "all Turan representatives tight");
  bool inspections = !cert.inspections.empty();
  for (const auto& i : cert.inspections) inspections = inspections && i.property_a && i.property_b;
  v.check(inspections, "properties A and B on every tight graph");
  int graphs = 0;
  for (int r : cert.tight_set) graphs += problem().pairs[r].representative == problem().pairs[r].partner ? 1 : 2;
  v.note << " tight representatives=" << cert.tight_set.size() << " (" << graphs
         << " graphs; reference figure 102)";
}

void criterion6(Verdict& v) {
  auto t0 = Clock::now();
  bool formula = true;
  for (int n = 4; n <= 30; ++n) {
    formula = formula && lower_bound_formula(n) == mk_formula(n, 3) &&
              Integer(count_monotone4(tau_k(n, 3)).total()) == mk_formula(n, 3);
  }
  v.check(formula, "formula matches tau_3 for n = 4..30");
  auto w = enumerate_W3(17);
  bool single = true;
  for (const auto& p : w) {
    MonotoneCount c = count_monotone4(p);
    single = single && c.total() == 35 && (c.increasing == 0 || c.decreasing == 0);
  }
  v.check(w.size() == 3750, "|W3(17)| = 3750");
  v.check(single, "every member of W3(17) has 35 copies in one direction");
  const double secs = seconds_since(t0);
  v.check(secs < 60, "under 1 min");
  v.note << " |W3(17)|=" << w.size() << " in " << secs << "s";
}

void criterion7(Verdict& v) {
  auto t0 = Clock::now();
  const auto m10 = brute_force_minimum(10);
  const auto m9 = brute_force_minimum(9);
  const double secs = seconds_since(t0);
  v.check(m10 == 1, "minimum over S_10 is 1");
  v.check(m9 == 0, "minimum over S_9 is 0");
  v.check(secs < 600, "under 10 min");
  v.note << " m(10)=" << m10 << " m(9)=" << m9 << " in " << secs << "s";
}

void criterion8(Verdict& v) {
  // that binary is compiled with float and double poisoned
  const std::string cmd = std::string("\"") + FLAGCERT_CERTIFY_TESTS + "\" > " + (kWork / "certify_tests.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  v.check(status == 0, "exact certification tests pass");
  v.note << " log=" << (kWork / "certify_tests.log").string();
}

void criterion9(Verdict& v) {
  Graph s(7);
  for (int i = 0; i < 3; ++i) {
    s.add_edge(0, 1 + i);
    s.add_edge(1 + i, 4 + i);
  }
  v.check(!is_admissible(s), "graph S is not admissible");

  std::mt19937_64 rng(9);
  int clones = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    Permutation p = oracle::random_permutation(n, rng);
    const int pos = static_cast<int>(rng() % n);
    Graph g = oracle::inversion_graph(p.image());
    Graph h = oracle::inversion_graph(clone_permutation(p, pos).image());
    Graph expect(n + 1);
    auto old = [pos](int x) { return x <= pos ? x : x - 1; };
    for (int a = 0; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (!(a == pos && b == pos + 1) && g.adjacent(old(a), old(b))) expect.add_edge(a, b);
      }
    }
    clones += oracle::same_graph(h, expect);
  }
  v.check(clones == 200, "clone property on 200 random permutations");

  int averaging = 0;
  for (int t = 0; t < 20; ++t) {
    Graph g = representation_graph(oracle::random_permutation(10 + static_cast<int>(rng() % 3), rng));
    const Rational direct = oracle::frac(oracle::count_copies(complete_graph(4), g) +
                                             oracle::count_copies(empty_graph(4), g),
                                         oracle::binom(g.order(), 4));
    bool ok = true;
    for (int l = 4; l <= 7; ++l) {
      auto [lhs, rhs] = averaging_identity_check(g, l);
      ok = ok && lhs == rhs && lhs == direct;
    }
    averaging += ok;
  }
  v.check(averaging == 20, "averaging identity on 20 random graphs, l = 4..7");
  v.note << " clones=" << clones << "/200 averaging=" << averaging << "/20";
}

}  // namespace

int main() {
  fs::create_directories(kWork);
  const std::function<void(Verdict&)> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9};
  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    Verdict v;
    try {
      criteria[i](v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    failures += !v.pass;
    std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << v.note.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
