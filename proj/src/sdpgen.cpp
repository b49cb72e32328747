#include "flagcert/sdpgen.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace flagcert {

std::vector<ClassPair> reduce_classes(const ClassCatalog& classes) {
  std::vector<ClassPair> pairs;
  for (int h = 0; h < classes.size(); ++h) {
    const int bar = classes.index_of(canonical_form(complement(classes.graphs[h])));
    if (bar < 0) throw std::logic_error("complement of an admissible class is missing");
    if (bar == h) {
      throw std::logic_error("self-complementary class " + std::to_string(h) +
                             "; the H / co-H reduction does not apply");
    }
    if (h < bar) pairs.push_back({h, bar});
  }
  return pairs;
}

FlagPairing pair_flags(const FlagBasis& basis) {
  const auto bar = complement_pairing(basis, basis);
  FlagPairing pairing;
  pairing.class_of.assign(basis.dimension(), -1);
  for (int f = 0; f < basis.dimension(); ++f) {
    if (bar[f] == f) {
      throw std::logic_error("flag " + std::to_string(f) +
                             " is its own complement; the sigma0 pairing must be fixed-point-free");
    }
    if (f < bar[f]) {
      pairing.class_of[f] = pairing.class_of[bar[f]] = pairing.size();
      pairing.classes.push_back({f, bar[f]});
    }
  }
  return pairing;
}

RationalMatrix reduce_sigma0_block(const RationalMatrix& d, const FlagPairing& pairing) {
  const int t = static_cast<int>(pairing.class_of.size());
  if (d.rows() != t || d.cols() != t) {
    throw std::invalid_argument("reduce_sigma0_block: pairing violation (dimension mismatch)");
  }
  const int c = pairing.size();
  RationalMatrix out(c, c);
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      for (int fa : pairing.classes[a]) {
        for (int fb : pairing.classes[b]) out(a, b) += d(fa, fb);
      }
    }
  }
  return out;
}

RationalMatrix fold_sigma2_into_sigma1(const RationalMatrix& d1, const RationalMatrix& d2,
                                       std::span<const int> bar) {
  const int t = d1.rows();
  if (d1.cols() != t || d2.rows() != t || d2.cols() != t ||
      static_cast<int>(bar.size()) != t) {
    throw std::invalid_argument("fold_sigma2_into_sigma1: dimension mismatch");
  }
  RationalMatrix out(t, t);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) out(i, j) = d1(i, j) + d2(bar[i], bar[j]);
  }
  return out;
}

FlagTables build_flag_tables() {
  FlagTables tables;
  tables.classes = &admissible_catalog(7);
  tables.basis0 = enumerate_flags(sigma0(), 4);
  tables.basis1 = enumerate_flags(sigma1(), 5);
  tables.basis2 = enumerate_flags(sigma2(), 5);
  tables.pairing0 = pair_flags(tables.basis0);
  tables.bar12 = complement_pairing(tables.basis1, tables.basis2);
  tables.table0 = pair_density_table(tables.basis0, *tables.classes);
  tables.table1 = pair_density_table(tables.basis1, *tables.classes);
  tables.table2 = pair_density_table(tables.basis2, *tables.classes);
  return tables;
}

namespace {

// Numerators (over table0's denominator) of the reduced sigma0 block of H.
std::vector<std::int64_t> reduced0_numerators(const FlagTables& t, int h) {
  const int c = t.pairing0.size();
  std::vector<std::int64_t> out(static_cast<std::size_t>(c) * c, 0);
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      std::int64_t sum = 0;
      for (int fa : t.pairing0.classes[a]) {
        for (int fb : t.pairing0.classes[b]) sum += t.table0.count(h, fa, fb);
      }
      out[a * c + b] = sum;
    }
  }
  return out;
}

// Numerators (over table1's denominator) of the folded sigma1 block of H.
std::vector<std::int64_t> reduced1_numerators(const FlagTables& t, int h) {
  const int d = t.basis1.dimension();
  std::vector<std::int64_t> out(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      out[i * d + j] = t.table1.count(h, i, j) + t.table2.count(h, t.bar12[i], t.bar12[j]);
    }
  }
  return out;
}

void check_folding_denominators(const FlagTables& t) {
  if (t.table1.denominator() != t.table2.denominator()) {
    throw std::logic_error("sigma1 and sigma2 tables use different denominators");
  }
}

Integer gcd_with(const std::vector<std::int64_t>& values, Integer g) {
  for (std::int64_t v : values) {
    if (v == 0) continue;
    g = gcd(g, Integer(static_cast<long>(v)));
    if (g == 1) break;
  }
  return g;
}

}  // namespace

ScalingConfig compute_scaling(const FlagTables& tables) {
  check_folding_denominators(tables);
  const Integer& den0 = tables.table0.denominator();
  const Integer& den1 = tables.table1.denominator();
  Integer g0 = den0;
  Integer g1 = den1;
  for (int h = 0; h < tables.classes->size(); ++h) {
    g0 = gcd_with(reduced0_numerators(tables, h), g0);
    g1 = gcd_with(reduced1_numerators(tables, h), g1);
  }
  ScalingConfig scaling;
  scaling.table_scales = {den0 / g0, den1 / g1};
  return scaling;
}

ReducedProblem build_reduced_problem(const FlagTables& tables) {
  const ClassCatalog& classes = *tables.classes;
  if (classes.order != 7) throw std::invalid_argument("the reduced problem is built on 7-vertex classes");
  if (kObjectiveScale % 27 != 0 || kObjectiveScale % 35 != 0) {
    throw std::logic_error("objective scale must be divisible by 27 and C(7,4)");
  }
  ReducedProblem problem;
  problem.pairs = reduce_classes(classes);
  problem.scaling = compute_scaling(tables);
  problem.dim0 = tables.pairing0.size();
  problem.dim1 = tables.basis1.dimension();
  const Integer g0 = tables.table0.denominator() / problem.scaling.table_scales[0];
  const Integer g1 = tables.table1.denominator() / problem.scaling.table_scales[1];
  const long div0 = g0.get_si();
  const long div1 = g1.get_si();

  for (const auto& pair : problem.pairs) {
    const Graph& h = classes.graphs[pair.representative];
    // M f(H) = M * F(H) / C(7,4).
    problem.rhs.push_back(Integer(kObjectiveScale / 35) * monotone_quadruples(h));
    auto a0 = reduced0_numerators(tables, pair.representative);
    auto a1 = reduced1_numerators(tables, pair.representative);
    for (auto& v : a0) {
      if (v % div0 != 0) throw std::logic_error("sigma0 block scaling is not integral");
      v /= div0;
    }
    for (auto& v : a1) {
      if (v % div1 != 0) throw std::logic_error("sigma1 block scaling is not integral");
      v /= div1;
    }
    problem.block0.push_back(std::move(a0));
    problem.block1.push_back(std::move(a1));
  }
  return problem;
}

// ---------------------------------------------------------------------------
// SDPA sparse format

SdpaProblem to_sdpa(const ReducedProblem& problem) {
  SdpaProblem out;
  const int m = problem.constraints();
  std::ostringstream comment;
  comment << "flagcert monotone-4 bound, M=" << problem.scaling.objective_scale << " N=";
  for (std::size_t k = 0; k < problem.scaling.table_scales.size(); ++k) {
    comment << (k ? "," : "") << problem.scaling.table_scales[k];
  }
  out.comment = comment.str();
  out.block_sizes = {problem.dim0, problem.dim1, 1, -m};
  out.rhs = problem.rhs;
  out.entries.push_back({0, 3, 1, 1, 1});
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < problem.dim0; ++i) {
      for (int j = i; j < problem.dim0; ++j) {
        if (auto v = problem.a0(r, i, j); v != 0) {
          out.entries.push_back({r + 1, 1, i + 1, j + 1, Integer(static_cast<long>(v))});
        }
      }
    }
    for (int i = 0; i < problem.dim1; ++i) {
      for (int j = i; j < problem.dim1; ++j) {
        if (auto v = problem.a1(r, i, j); v != 0) {
          out.entries.push_back({r + 1, 2, i + 1, j + 1, Integer(static_cast<long>(v))});
        }
      }
    }
    out.entries.push_back({r + 1, 3, 1, 1, 1});
    out.entries.push_back({r + 1, 4, r + 1, r + 1, 1});
  }
  return out;
}

void write_sdpa(const SdpaProblem& problem, std::ostream& out) {
  if (!problem.comment.empty()) out << '"' << problem.comment << '\n';
  out << problem.constraints() << '\n' << problem.block_sizes.size() << '\n';
  for (std::size_t b = 0; b < problem.block_sizes.size(); ++b) {
    out << (b ? " " : "") << problem.block_sizes[b];
  }
  out << '\n';
  for (std::size_t i = 0; i < problem.rhs.size(); ++i) {
    out << (i ? " " : "") << problem.rhs[i];
  }
  out << '\n';
  for (const auto& e : problem.entries) {
    out << e.matrix << ' ' << e.block << ' ' << e.row << ' ' << e.col << ' ' << e.value << '\n';
  }
}

void write_sdpa(const SdpaProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_sdpa(problem, out);
  if (!out) throw std::runtime_error("I/O failure writing " + path.string());
}

namespace {

// Tokenizer treating the SDPA punctuation ",{}()" as whitespace.
class SdpaTokens {
 public:
  explicit SdpaTokens(std::istream& in) {
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first && !line.empty() && (line[0] == '"' || line[0] == '*')) {
        comment = line.substr(1);
        first = false;
        continue;
      }
      first = false;
      if (!line.empty() && (line[0] == '"' || line[0] == '*')) continue;
      for (char& c : line) {
        if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') c = ' ';
      }
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_.push_back(w);
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& next(const char* what) {
    if (done()) throw std::runtime_error(std::string("SDPA file truncated, expected ") + what);
    return tokens_[pos_++];
  }
  int next_int(const char* what) {
    const auto& tok = next(what);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("SDPA file: bad ") + what + " '" + tok + "'");
    }
  }
  Integer next_integer(const char* what) {
    const auto& tok = next(what);
    try {
      return parse_integer(tok);
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("SDPA file: non-integer ") + what + " '" + tok + "'");
    }
  }

  std::string comment;

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SdpaProblem read_sdpa(std::istream& in) {
  SdpaTokens tokens(in);
  SdpaProblem problem;
  problem.comment = tokens.comment;
  const int m = tokens.next_int("constraint count");
  const int nblocks = tokens.next_int("block count");
  if (m < 0 || nblocks <= 0) throw std::runtime_error("SDPA file: bad header");
  for (int b = 0; b < nblocks; ++b) {
    const int size = tokens.next_int("block size");
    if (size == 0) throw std::runtime_error("SDPA file: zero block size");
    problem.block_sizes.push_back(size);
  }
  for (int i = 0; i < m; ++i) problem.rhs.push_back(tokens.next_integer("right-hand side"));
  while (!tokens.done()) {
    SdpaEntry e;
    e.matrix = tokens.next_int("matrix number");
    e.block = tokens.next_int("block number");
    e.row = tokens.next_int("row");
    e.col = tokens.next_int("column");
    e.value = tokens.next_integer("entry value");
    if (e.matrix < 0 || e.matrix > m || e.block < 1 || e.block > nblocks) {
      throw std::runtime_error("SDPA file: entry outside the declared matrices");
    }
    const int dim = std::abs(problem.block_sizes[e.block - 1]);
    if (e.row < 1 || e.col < 1 || e.row > dim || e.col > dim) {
      throw std::runtime_error("SDPA file: entry index outside its block");
    }
    if (problem.block_sizes[e.block - 1] < 0 && e.row != e.col) {
      throw std::runtime_error("SDPA file: off-diagonal entry in a diagonal block");
    }
    if (e.row > e.col) std::swap(e.row, e.col);
    problem.entries.push_back(std::move(e));
  }
  return problem;
}

SdpaProblem read_sdpa(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_sdpa(in);
}

ReducedProblem reduced_problem_from_sdpa(const SdpaProblem& sdpa, std::vector<ClassPair> pairs) {
  const int m = sdpa.constraints();
  const auto& sizes = sdpa.block_sizes;
  if (sizes.size() != 4 || sizes[0] <= 0 || sizes[1] <= 0 || sizes[2] != 1 || sizes[3] != -m) {
    throw std::runtime_error("SDPA problem does not have the (d0, d1, 1, -m) block layout");
  }
  if (static_cast<int>(pairs.size()) != m) {
    throw std::runtime_error("SDPA problem has " + std::to_string(m) + " constraints, expected " +
                             std::to_string(pairs.size()));
  }
  ReducedProblem problem;
  problem.pairs = std::move(pairs);
  problem.rhs = sdpa.rhs;
  problem.dim0 = sizes[0];
  problem.dim1 = sizes[1];
  problem.block0.assign(m, std::vector<std::int64_t>(static_cast<std::size_t>(sizes[0]) * sizes[0], 0));
  problem.block1.assign(m, std::vector<std::int64_t>(static_cast<std::size_t>(sizes[1]) * sizes[1], 0));
  for (const auto& e : sdpa.entries) {
    if (e.matrix == 0 || e.block > 2) continue;
    if (!e.value.fits_slong_p()) throw std::runtime_error("SDPA entry out of range");
    const std::int64_t v = e.value.get_si();
    const int d = e.block == 1 ? problem.dim0 : problem.dim1;
    auto& mat = (e.block == 1 ? problem.block0 : problem.block1)[e.matrix - 1];
    mat[(e.row - 1) * d + (e.col - 1)] = v;
    mat[(e.col - 1) * d + (e.row - 1)] = v;
  }
  return problem;
}

}  // namespace flagcert
