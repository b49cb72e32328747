#include "flagcert/certify.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "flagcert/detail/combinatorics.hpp"

// Verification is exact; nothing below may touch a floating-point type.
#pragma GCC poison float double

namespace flagcert {

int solution_entry_count(int dim0, int dim1) {
  return dim0 * (dim0 + 1) / 2 + dim1 * (dim1 + 1) / 2;
}

SolutionVectorFile load_solution(std::istream& in) {
  SolutionVectorFile s;
  std::string key, value;
  auto expect = [&](const char* name) {
    if (!(in >> key >> value) || key != name) {
      throw CertificateError(std::string("solution file: expected '") + name + "' line");
    }
  };
  expect("denominator");
  try {
    s.denominator = parse_integer(value);
  } catch (const std::exception&) {
    throw CertificateError("solution file: non-integer denominator '" + value + "'");
  }
  if (s.denominator <= 0) throw CertificateError("solution file: denominator must be positive");
  expect("count");
  long count = 0;
  try {
    count = std::stol(value);
  } catch (const std::exception&) {
    throw CertificateError("solution file: bad count '" + value + "'");
  }
  expect("order");
  s.order = value;
  std::string tok;
  while (in >> tok) {
    try {
      s.numerators.push_back(parse_integer(tok));
    } catch (const std::exception&) {
      throw CertificateError("solution file: non-integer token '" + tok + "'");
    }
  }
  if (static_cast<long>(s.numerators.size()) != count) {
    throw CertificateError("solution file: declared " + std::to_string(count) + " entries, found " +
                           std::to_string(s.numerators.size()));
  }
  return s;
}

SolutionVectorFile load_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CertificateError("cannot open " + path.string());
  return load_solution(in);
}

void write_solution(const SolutionVectorFile& s, std::ostream& out) {
  out << "denominator " << s.denominator << "\ncount " << s.numerators.size() << "\norder "
      << (s.order.empty() ? "-" : s.order) << '\n';
  for (std::size_t i = 0; i < s.numerators.size(); ++i) {
    out << s.numerators[i] << ((i + 1) % 16 == 0 || i + 1 == s.numerators.size() ? '\n' : ' ');
  }
}

void write_solution(const SolutionVectorFile& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw CertificateError("cannot write " + path.string());
  write_solution(s, out);
}

SolutionVectorFile make_solution_vector(std::span<const RationalMatrix> blocks, std::string order) {
  SolutionVectorFile s;
  s.order = std::move(order);
  Integer den = 1;
  for (const auto& m : blocks) {
    if (!m.is_symmetric()) throw CertificateError("solution block is not symmetric");
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = i; j < m.cols(); ++j) den = lcm(den, Integer(m(i, j).get_den()));
    }
  }
  s.denominator = den;
  for (const auto& m : blocks) {
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = i; j < m.cols(); ++j) {
        s.numerators.push_back(m(i, j).get_num() * (den / m(i, j).get_den()));
      }
    }
  }
  return s;
}

namespace {

RationalMatrix unpack(const SolutionVectorFile& s, std::size_t& pos, int dim) {
  RationalMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      m(i, j) = m(j, i) = make_rational(s.numerators[pos++], s.denominator);
    }
  }
  return m;
}

void check_count(const SolutionVectorFile& s, int dim0, int dim1) {
  const int expected = solution_entry_count(dim0, dim1);
  if (static_cast<int>(s.numerators.size()) != expected) {
    throw CertificateError("solution has " + std::to_string(s.numerators.size()) +
                           " entries, expected " + std::to_string(expected));
  }
  if (s.denominator <= 0) throw CertificateError("solution denominator must be positive");
}

}  // namespace

ReconstructedMatrices reconstruct(const SolutionVectorFile& s, int dim0, int dim1,
                                  const FlagTables* tables) {
  check_count(s, dim0, dim1);
  ReconstructedMatrices out;
  std::size_t pos = 0;
  out.b = unpack(s, pos, dim0);
  out.q1 = unpack(s, pos, dim1);
  if (tables) {
    const auto& pairing = tables->pairing0;
    const int t = static_cast<int>(pairing.class_of.size());
    out.q0 = RationalMatrix(t, t);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) out.q0(i, j) = out.b(pairing.class_of[i], pairing.class_of[j]);
    }
    const auto& bar = tables->bar12;
    out.q2 = RationalMatrix(dim1, dim1);
    for (int i = 0; i < dim1; ++i) {
      for (int j = 0; j < dim1; ++j) out.q2(bar[i], bar[j]) = out.q1(i, j);
    }
  }
  return out;
}

std::vector<Rational> exact_slacks(const ReducedProblem& problem, const SolutionVectorFile& s) {
  check_count(s, problem.dim0, problem.dim1);
  const int n0 = problem.dim0 * (problem.dim0 + 1) / 2;
  std::vector<Rational> out;
  out.reserve(problem.constraints());
  Integer acc, term;
  for (int r = 0; r < problem.constraints(); ++r) {
    acc = problem.rhs[r] * s.denominator;
    std::size_t pos = 0;
    for (int i = 0; i < problem.dim0; ++i) {
      for (int j = i; j < problem.dim0; ++j, ++pos) {
        const std::int64_t a = problem.a0(r, i, j) * (i == j ? 1 : 2);
        if (a == 0 || s.numerators[pos] == 0) continue;
        term = s.numerators[pos] * static_cast<long>(a);
        acc -= term;
      }
    }
    pos = n0;
    for (int i = 0; i < problem.dim1; ++i) {
      for (int j = i; j < problem.dim1; ++j, ++pos) {
        const std::int64_t a = problem.a1(r, i, j) * (i == j ? 1 : 2);
        if (a == 0 || s.numerators[pos] == 0) continue;
        term = s.numerators[pos] * static_cast<long>(a);
        acc -= term;
      }
    }
    out.push_back(make_rational(acc, s.denominator));
  }
  return out;
}

void compute_bound(const ReducedProblem& problem, const RationalMatrix& b, const RationalMatrix& q1,
                   Certificate& cert) {
  if (b.rows() != problem.dim0 || q1.rows() != problem.dim1) {
    throw CertificateError("matrix dimensions do not match the problem");
  }
  const RationalMatrix blocks[] = {b, q1};
  cert.slacks = exact_slacks(problem, make_solution_vector(blocks));
  if (cert.slacks.empty()) throw CertificateError("problem has no constraints");
  cert.bound_scaled = *std::min_element(cert.slacks.begin(), cert.slacks.end());
  cert.bound = cert.bound_scaled / Rational(problem.scaling.objective_scale);
  cert.tight_set.clear();
  for (int r = 0; r < static_cast<int>(cert.slacks.size()); ++r) {
    if (cert.slacks[r] == cert.bound_scaled) cert.tight_set.push_back(r);
  }
}

LdltWitness psd_check(const RationalMatrix& m) {
  if (!m.is_symmetric()) throw CertificateError("psd_check: matrix is not symmetric");
  return ldlt_psd(m);
}

namespace {

bool uniform(const Graph& g, std::span<const int> vs, bool edge) {
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (g.adjacent(vs[a], vs[b]) != edge) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> homogeneous_quadruples(const Graph& g, bool edge) {
  std::vector<std::vector<int>> out;
  detail::for_each_combination(g.order(), 4, [&](std::span<const int> c) {
    if (uniform(g, c, edge)) out.emplace_back(c.begin(), c.end());
  });
  return out;
}

bool share_vertex(const std::vector<int>& a, const std::vector<int>& b) {
  for (int u : a) {
    if (std::find(b.begin(), b.end(), u) != b.end()) return true;
  }
  return false;
}

bool unions_homogeneous(const Graph& g, bool edge) {
  const auto quads = homogeneous_quadruples(g, edge);
  for (std::size_t a = 0; a < quads.size(); ++a) {
    for (std::size_t b = a + 1; b < quads.size(); ++b) {
      if (!share_vertex(quads[a], quads[b])) continue;
      std::vector<int> u = quads[a];
      u.insert(u.end(), quads[b].begin(), quads[b].end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (!uniform(g, u, edge)) return false;
    }
  }
  return true;
}

}  // namespace

bool property_a(const Graph& g) {
  for (const auto& k : homogeneous_quadruples(g, true)) {
    for (const auto& i : homogeneous_quadruples(g, false)) {
      if (share_vertex(k, i)) return false;
    }
  }
  return true;
}

bool property_b(const Graph& g) { return unions_homogeneous(g, true) && unions_homogeneous(g, false); }

std::vector<Inspection> inspect_tight_set(const ReducedProblem& problem, const ClassCatalog& classes,
                                          std::span<const int> tight) {
  std::vector<Inspection> out;
  for (int r : tight) {
    const Graph& h = classes.graphs[problem.pairs.at(r).representative];
    out.push_back({r, property_a(h), property_b(h)});
  }
  return out;
}

bool Certificate::psd() const {
  if (psd_witnesses.empty()) return false;
  return std::all_of(psd_witnesses.begin(), psd_witnesses.end(),
                     [](const LdltWitness& w) { return w.psd; });
}

bool Certificate::certified() const { return psd() && bound_scaled >= Rational(kScaledTarget); }

Certificate certify(const ReducedProblem& problem, const ClassCatalog& classes,
                    const SolutionVectorFile& s) {
  const auto m = reconstruct(s, problem.dim0, problem.dim1);
  Certificate cert;
  cert.psd_witnesses.push_back(psd_check(m.b));
  cert.psd_witnesses.push_back(psd_check(m.q1));
  cert.slacks = exact_slacks(problem, s);
  cert.bound_scaled = *std::min_element(cert.slacks.begin(), cert.slacks.end());
  cert.bound = cert.bound_scaled / Rational(problem.scaling.objective_scale);
  for (int r = 0; r < static_cast<int>(cert.slacks.size()); ++r) {
    if (cert.slacks[r] == cert.bound_scaled) cert.tight_set.push_back(r);
  }
  cert.inspections = inspect_tight_set(problem, classes, cert.tight_set);
  return cert;
}

std::vector<int> turan_representatives(const ReducedProblem& problem, const ClassCatalog& classes) {
  static const std::vector<std::vector<int>> partitions = {
      {7}, {6, 1}, {5, 2}, {4, 3}, {5, 1, 1}, {4, 2, 1}, {3, 3, 1}, {3, 2, 2}};
  std::vector<int> out;
  for (const auto& parts : partitions) {
    const int h = classes.index_of(canonical_form(complete_multipartite(parts)));
    for (int r = 0; r < problem.constraints(); ++r) {
      if (problem.pairs[r].representative == h || problem.pairs[r].partner == h) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace flagcert
