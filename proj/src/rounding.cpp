#include "flagcert/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace flagcert {

void RoundingConfig::validate() const {
  if (!(eps1 > 0) || !(eps2 > 0) || !(eps3 > 0)) throw std::invalid_argument("thresholds must be positive");
  if (eps3 > 1e-5) throw std::invalid_argument("eps3 must be at most 1e-5");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be nonnegative");
  if (denom_bound < 1) throw std::invalid_argument("denom_bound must be positive");
  if (!(guess_tolerance > 0)) throw std::invalid_argument("guess_tolerance must be positive");
}

std::vector<Eigen::VectorXd> null_basis(const Eigen::MatrixXd& q, double eps1) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  if (es.info() != Eigen::Success) throw RoundingError("eigen-decomposition failed");
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < q.rows(); ++i) {
    if (es.eigenvalues()(i) < eps1) out.push_back(es.eigenvectors().col(i));
  }
  return out;
}

Rational guess_rational(double x, long denom_bound, double tolerance) {
  if (!std::isfinite(x)) throw RoundingError("cannot guess a rational for a non-finite value");
  // Convergents h/k of the continued fraction of x.
  Integer h_prev = 1, h = static_cast<long>(std::floor(x));
  Integer k_prev = 0, k = 1;
  long double rest = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
  for (int step = 0; step < 64; ++step) {
    if (k > denom_bound) break;
    const Rational q(h, k);
    if (std::fabs(x - q.get_d()) < tolerance) return q;
    if (rest < 1e-18L) break;
    const long double inv = 1.0L / rest;
    const long a = static_cast<long>(std::floor(inv));
    rest = inv - a;
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "no rational with denominator <= " << denom_bound << " within " << tolerance << " of " << x;
  throw RoundingError(msg.str());
}

std::vector<RationalVector> rationalize_basis(std::span<const Eigen::VectorXd> vectors,
                                              long denom_bound, double tolerance) {
  if (vectors.empty()) throw std::invalid_argument("rationalize_basis: empty input");
  std::vector<Eigen::VectorXd> x(vectors.begin(), vectors.end());
  std::vector<bool> alive(x.size(), true);
  std::vector<int> pivot(x.size(), -1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Eigen::Index l;
    const double m = x[i].cwiseAbs().maxCoeff(&l);
    if (m < tolerance) {
      alive[i] = false;
      continue;
    }
    x[i] /= x[i](l);
    pivot[i] = static_cast<int>(l);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k != i) x[k] -= x[k](l) * x[i];
    }
  }
  std::vector<bool> is_pivot(x.empty() ? 0 : x[0].size(), false);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (alive[k]) is_pivot[pivot[k]] = true;
  }
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!alive[i]) continue;
    const Eigen::Index n = x[i].size();
    // Smallest common denominator that fits every non-pivot entry.
    long q = 1;
    for (; q <= denom_bound; ++q) {
      bool fits = true;
      for (Eigen::Index j = 0; j < n && fits; ++j) {
        if (is_pivot[j]) continue;
        const double y = x[i](j) * static_cast<double>(q);
        fits = std::fabs(y - std::nearbyint(y)) < tolerance * static_cast<double>(q);
      }
      if (fits) break;
    }
    if (q > denom_bound) {
      // Report the entry that fits worst at the largest allowed denominator.
      Eigen::Index worst = 0;
      double worst_err = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        const double y = x[i](j) * static_cast<double>(denom_bound);
        const double err = std::fabs(y - std::nearbyint(y));
        if (err > worst_err) {
          worst_err = err;
          worst = j;
        }
      }
      std::ostringstream msg;
      msg.precision(17);
      msg << "vector " << i << ", entry " << worst << " (" << x[i](worst)
          << "): no common denominator <= " << denom_bound << " within " << tolerance;
      throw RoundingError(msg.str());
    }
    RationalVector v(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (is_pivot[j]) {
        v[j] = (pivot[i] == j) ? 1 : 0;
      } else {
        v[j] = Rational(static_cast<long>(std::nearbyint(x[i](j) * static_cast<double>(q))), q);
        v[j].canonicalize();
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<int> tight_constraints(std::span<const double> slacks, double eps2) {
  std::vector<int> out;
  const double limit = static_cast<double>(kScaledTarget) + eps2 * static_cast<double>(kObjectiveScale);
  for (std::size_t r = 0; r < slacks.size(); ++r) {
    if (slacks[r] < limit) out.push_back(static_cast<int>(r));
  }
  return out;
}

std::vector<RationalVector> extremal_null_vectors(const TypeGraph& sigma, const FlagBasis& basis,
                                                  bool complemented) {
  const int k = sigma.size();
  const int l = basis.size;
  const int free = l - k;
  int assignments = 1;
  for (int i = 0; i < free; ++i) assignments *= 3;
  int placements = 1;
  for (int i = 0; i < k; ++i) placements *= 3;
  const Rational weight(1, assignments);

  std::vector<RationalVector> out;
  std::vector<int> part(l);
  std::vector<int> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = i;
  for (int phi = 0; phi < placements; ++phi) {
    for (int i = 0, c = phi; i < k; ++i, c /= 3) part[i] = c % 3;
    bool consistent = true;
    for (int a = 0; a < k && consistent; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (sigma.graph().adjacent(a, b) != ((part[a] != part[b]) != complemented)) consistent = false;
      }
    }
    if (!consistent) continue;
    RationalVector y(basis.dimension());
    for (int psi = 0; psi < assignments; ++psi) {
      for (int i = k, c = psi; i < l; ++i, c /= 3) part[i] = c % 3;
      Graph g(l);
      for (int a = 0; a < l; ++a) {
        for (int b = a + 1; b < l; ++b) {
          if ((part[a] != part[b]) != complemented) g.add_edge(a, b);
        }
      }
      const int idx = basis.index_of(flag_canonical_form(Flag(g, labels)));
      if (idx < 0) throw std::logic_error("extremal flag missing from the basis");
      y[idx] += weight;
    }
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(std::move(y));
  }
  return out;
}

std::vector<RationalVector> reduced_extremal_vectors(const FlagTables& tables, int block) {
  std::vector<RationalVector> out;
  auto add = [&](RationalVector v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  };
  for (bool complemented : {false, true}) {
    if (block == 0) {
      for (const auto& y : extremal_null_vectors(tables.basis0.sigma, tables.basis0, complemented)) {
        RationalVector z(tables.pairing0.size());
        for (std::size_t f = 0; f < y.size(); ++f) z[tables.pairing0.class_of[f]] += y[f];
        add(std::move(z));
      }
    } else if (block == 1) {
      for (auto& y : extremal_null_vectors(tables.basis1.sigma, tables.basis1, complemented)) add(y);
      for (const auto& y : extremal_null_vectors(tables.basis2.sigma, tables.basis2, complemented)) {
        RationalVector z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[tables.bar12[i]];
        add(std::move(z));
      }
    } else {
      throw std::invalid_argument("reduced_extremal_vectors: block must be 0 or 1");
    }
  }
  return out;
}

std::vector<RationalVector> merge_null_vectors(std::vector<RationalVector> exact,
                                               std::vector<RationalVector> guessed) {
  exact.insert(exact.end(), std::make_move_iterator(guessed.begin()),
               std::make_move_iterator(guessed.end()));
  reduced_row_echelon(exact);
  return exact;
}

Rational truncate_decimal(double x, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const long double scaled = std::trunc(static_cast<long double>(x) * scale.get_d());
  std::ostringstream s;
  s.precision(0);
  s << std::fixed << scaled;
  return make_rational(parse_integer(s.str() == "-0" ? "0" : s.str()), scale);
}

bool solve_linear_system(LinearSystem& system, std::span<const double> numerical, int digits,
                         RationalVector& solution) {
  const int k = system.a.rows();
  const int m = system.a.cols();
  if (static_cast<int>(system.b.size()) != k || static_cast<int>(numerical.size()) != m) {
    throw std::invalid_argument("solve_linear_system: dimension mismatch");
  }
  IntegerMatrix aug(k, m + 1);
  for (int i = 0; i < k; ++i) {
    Integer l = system.b[i].get_den();
    for (int j = 0; j < m; ++j) l = lcm(l, Integer(system.a(i, j).get_den()));
    for (int j = 0; j < m; ++j) aug(i, j) = system.a(i, j).get_num() * (l / system.a(i, j).get_den());
    aug(i, m) = system.b[i].get_num() * (l / system.b[i].get_den());
  }
  Echelon e = fraction_free_echelon(std::move(aug));
  if (!e.consistent) return false;
  system.pivot_columns = e.pivot_columns;
  system.free_columns.clear();
  system.free_values.clear();
  solution.assign(m, Rational(0));
  std::vector<bool> is_pivot(m, false);
  for (int c : e.pivot_columns) is_pivot[c] = true;
  for (int c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    system.free_columns.push_back(c);
    solution[c] = truncate_decimal(numerical[c], digits);
    system.free_values.push_back(solution[c]);
  }
  back_substitute(e, solution);
  return true;
}

}  // namespace flagcert

namespace flagcert {

namespace {

// Q = L S L^T where the columns of L span the orthogonal complement of the
// null vectors V (in reduced row echelon form): L is the identity on the
// non-pivot coordinates and -V on the pivot ones.
struct NullSpaceParametrization {
  int dim = 0;
  std::vector<RationalVector> v;
  std::vector<int> pivots;
  std::vector<int> free;  // non-pivot coordinates, ascending

  int size() const { return static_cast<int>(free.size()); }
};

NullSpaceParametrization parametrize(int dim, std::vector<RationalVector> v) {
  NullSpaceParametrization p;
  p.dim = dim;
  p.pivots = reduced_row_echelon(v);
  p.v = std::move(v);
  std::vector<bool> is_pivot(dim, false);
  for (int c : p.pivots) is_pivot[c] = true;
  for (int c = 0; c < dim; ++c) {
    if (!is_pivot[c]) p.free.push_back(c);
  }
  return p;
}

// L^T A L for symmetric A.
// (L^T A L)[s][t] = A[Ns][Nt] - sum_i V[i][Ns] A[Pi][Nt] - sum_j A[Ns][Pj] V[j][Nt]
//                   + sum_{i,j} V[i][Ns] A[Pi][Pj] V[j][Nt]
RationalMatrix project(const NullSpaceParametrization& p, const RationalMatrix& a) {
  const int f = p.size();
  const int k = static_cast<int>(p.pivots.size());
  RationalMatrix out(f, f);
  if (k == 0) {
    for (int s = 0; s < f; ++s) {
      for (int t = 0; t < f; ++t) out(s, t) = a(p.free[s], p.free[t]);
    }
    return out;
  }
  std::vector<RationalVector> vf(k, RationalVector(f));
  for (int i = 0; i < k; ++i) {
    for (int s = 0; s < f; ++s) vf[i][s] = p.v[i][p.free[s]];
  }
  // u[i][t] = sum_j A[Pi][Pj] V[j][Nt] - A[Pi][Nt]
  std::vector<RationalVector> u(k, RationalVector(f));
  for (int i = 0; i < k; ++i) {
    for (int t = 0; t < f; ++t) {
      Rational acc = -a(p.pivots[i], p.free[t]);
      for (int j = 0; j < k; ++j) {
        if (vf[j][t] != 0) acc += a(p.pivots[i], p.pivots[j]) * vf[j][t];
      }
      u[i][t] = acc;
    }
  }
  for (int s = 0; s < f; ++s) {
    for (int t = s; t < f; ++t) {
      Rational acc = a(p.free[s], p.free[t]);
      for (int i = 0; i < k; ++i) {
        if (vf[i][t] != 0) acc -= a(p.free[s], p.pivots[i]) * vf[i][t];
        if (vf[i][s] != 0) acc += vf[i][s] * u[i][t];
      }
      out(s, t) = out(t, s) = acc;
    }
  }
  return out;
}

RationalMatrix expand(const NullSpaceParametrization& p, const RationalMatrix& s) {
  const int f = p.size();
  const int k = static_cast<int>(p.pivots.size());
  RationalMatrix q(p.dim, p.dim);
  // T[i][t] = -(sum_s V[i][Ns] S[s][t]) = Q[Pi][Nt]
  std::vector<RationalVector> t_rows(k, RationalVector(f));
  for (int i = 0; i < k; ++i) {
    for (int t = 0; t < f; ++t) {
      Rational acc = 0;
      for (int x = 0; x < f; ++x) {
        const Rational& c = p.v[i][p.free[x]];
        if (c != 0 && s(x, t) != 0) acc -= c * s(x, t);
      }
      t_rows[i][t] = acc;
    }
  }
  for (int a = 0; a < f; ++a) {
    for (int b = 0; b < f; ++b) q(p.free[a], p.free[b]) = s(a, b);
  }
  for (int i = 0; i < k; ++i) {
    for (int t = 0; t < f; ++t) q(p.pivots[i], p.free[t]) = q(p.free[t], p.pivots[i]) = t_rows[i][t];
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      Rational acc = 0;
      for (int t = 0; t < f; ++t) {
        const Rational& c = p.v[j][p.free[t]];
        if (c != 0) acc -= t_rows[i][t] * c;
      }
      q(p.pivots[i], p.pivots[j]) = q(p.pivots[j], p.pivots[i]) = acc;
    }
  }
  return q;
}

// Smallest change of the numerical point (in the local metric of the PSD
// cone, tr((S^-1 D)^2)) that satisfies the equations: D_b = S_b P_b(lambda) S_b
// with lambda from the Gram system. Returns the size of the step in that
// metric; below 1 the result is still positive definite.
double recenter(std::vector<Eigen::MatrixXd>& s, const std::vector<std::vector<Eigen::MatrixXd>>& p,
                const Eigen::VectorXd& rhs) {
  const int k = static_cast<int>(rhs.size());
  if (k == 0) return 0;
  const int blocks = static_cast<int>(s.size());
  Eigen::VectorXd r = rhs;
  std::vector<std::vector<Eigen::MatrixXd>> sps(blocks);
  for (int b = 0; b < blocks; ++b) {
    for (int e = 0; e < k; ++e) {
      r(e) -= p[b][e].cwiseProduct(s[b]).sum();
      sps[b].push_back(s[b] * p[b][e] * s[b]);
    }
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k, k);
  for (int b = 0; b < blocks; ++b) {
    for (int e = 0; e < k; ++e) {
      for (int f = e; f < k; ++f) g(e, f) += p[b][e].cwiseProduct(sps[b][f]).sum();
    }
  }
  g = g.selfadjointView<Eigen::Upper>();
  const Eigen::VectorXd lambda = g.completeOrthogonalDecomposition().solve(r);
  for (int b = 0; b < blocks; ++b) {
    for (int e = 0; e < k; ++e) s[b] += lambda(e) * sps[b][e];
  }
  return std::sqrt(std::max(0.0, lambda.dot(g * lambda)));
}

Eigen::MatrixXd to_double(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  }
  return out;
}

}  // namespace

int decimal_digits(double eps3) {
  int digits = 0;
  double step = 1.0;
  while (step > eps3 * (1 + 1e-9) && digits < 18) {
    step /= 10;
    ++digits;
  }
  return digits;
}

BuildOutcome build_and_solve(const BuildInputs& in) {
  const int blocks = static_cast<int>(in.numeric.size());
  if (static_cast<int>(in.null_vectors.size()) != blocks) {
    throw std::invalid_argument("build_and_solve: one null-vector list per block expected");
  }
  for (const auto& eq : in.equations) {
    if (static_cast<int>(eq.coefficients.size()) != blocks) {
      throw std::invalid_argument("build_and_solve: equation has the wrong number of blocks");
    }
  }
  BuildOutcome out;
  std::vector<NullSpaceParametrization> params;
  for (int b = 0; b < blocks; ++b) {
    const int d = static_cast<int>(in.numeric[b].rows());
    for (const auto& v : in.null_vectors[b]) {
      if (static_cast<int>(v.size()) != d) throw std::invalid_argument("build_and_solve: null vector size");
    }
    params.push_back(parametrize(d, in.null_vectors[b]));
    out.null_dimensions.push_back(static_cast<int>(params.back().pivots.size()));
  }

  // Unknowns: upper triangles of each S_b, block by block, row-major.
  std::vector<std::pair<int, int>> cells;
  std::vector<int> block_of;
  for (int b = 0; b < blocks; ++b) {
    for (int s = 0; s < params[b].size(); ++s) {
      for (int t = s; t < params[b].size(); ++t) {
        cells.emplace_back(s, t);
        block_of.push_back(b);
      }
    }
  }
  const int m = static_cast<int>(cells.size());
  const int k = static_cast<int>(in.equations.size());
  LinearSystem system;
  system.a = RationalMatrix(k, m);
  system.b.resize(k);
  std::vector<std::vector<Eigen::MatrixXd>> projected(blocks);
  for (int e = 0; e < k; ++e) {
    for (int b = 0; b < blocks; ++b) {
      projected[b].push_back(Eigen::MatrixXd());
    }
    std::vector<RationalMatrix> proj;
    for (int b = 0; b < blocks; ++b) {
      proj.push_back(project(params[b], in.equations[e].coefficients[b]));
      projected[b][e] = to_double(proj.back());
    }
    for (int c = 0; c < m; ++c) {
      const auto [s, t] = cells[c];
      system.a(e, c) = proj[block_of[c]](s, t) * (s == t ? 1 : 2);
    }
    system.b[e] = in.equations[e].rhs;
  }

  std::vector<Eigen::MatrixXd> s_numeric;
  for (int b = 0; b < blocks; ++b) {
    const auto& p = params[b];
    Eigen::MatrixXd sb(p.size(), p.size());
    for (int s = 0; s < p.size(); ++s) {
      for (int t = 0; t < p.size(); ++t) sb(s, t) = in.numeric[b](p.free[s], p.free[t]);
    }
    s_numeric.push_back(std::move(sb));
  }
  Eigen::VectorXd rhs(k);
  for (int e = 0; e < k; ++e) rhs(e) = system.b[e].get_d();
  out.recenter_step = recenter(s_numeric, projected, rhs);
  std::vector<double> values(m);
  for (int c = 0; c < m; ++c) values[c] = s_numeric[block_of[c]](cells[c].first, cells[c].second);

  RationalVector y;
  if (!solve_linear_system(system, values, in.digits, y)) {
    out.outcome = "inconsistent";
    out.detail = "tightness equations have no solution";
    return out;
  }
  out.pivots = static_cast<int>(system.pivot_columns.size());
  out.free = static_cast<int>(system.free_columns.size());

  std::vector<RationalMatrix> s_blocks;
  for (int b = 0; b < blocks; ++b) s_blocks.emplace_back(params[b].size(), params[b].size());
  for (int c = 0; c < m; ++c) {
    const auto [s, t] = cells[c];
    s_blocks[block_of[c]](s, t) = s_blocks[block_of[c]](t, s) = y[c];
  }
  for (int b = 0; b < blocks; ++b) {
    const auto w = ldlt_psd(s_blocks[b]);
    if (!w.psd) {
      out.outcome = "psd";
      out.detail = "block " + std::to_string(b + 1) + ": " + w.failure;
      return out;
    }
  }
  for (int b = 0; b < blocks; ++b) out.blocks.push_back(expand(params[b], s_blocks[b]));
  out.outcome = "ok";
  return out;
}

namespace {

std::vector<double> numerical_slacks(const ReducedProblem& problem, const NumericalSolution& numeric) {
  const auto& x0 = numeric.blocks.at(0);
  const auto& x1 = numeric.blocks.at(1);
  std::vector<double> out;
  for (int r = 0; r < problem.constraints(); ++r) {
    double acc = problem.rhs[r].get_d();
    for (int i = 0; i < problem.dim0; ++i) {
      for (int j = 0; j < problem.dim0; ++j) acc -= static_cast<double>(problem.a0(r, i, j)) * x0(i, j);
    }
    for (int i = 0; i < problem.dim1; ++i) {
      for (int j = 0; j < problem.dim1; ++j) acc -= static_cast<double>(problem.a1(r, i, j)) * x1(i, j);
    }
    out.push_back(acc);
  }
  return out;
}

RationalMatrix block_matrix(const std::vector<std::int64_t>& dense, int d) {
  RationalMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out(i, j) = Rational(static_cast<long>(dense[static_cast<std::size_t>(i) * d + j]));
  }
  return out;
}

struct AttemptOutput {
  RoundingAttempt info;
  std::vector<RationalMatrix> blocks;
  SolutionVectorFile solution;
};

AttemptOutput attempt(const ReducedProblem& problem, const FlagTables& tables,
                      const NumericalSolution& numeric, const RoundingConfig& config, double eps1,
                      double eps2) {
  AttemptOutput out;
  out.info.eps1 = eps1;
  out.info.eps2 = eps2;
  const int dims[2] = {problem.dim0, problem.dim1};
  BuildInputs in;
  in.digits = decimal_digits(config.eps3);
  for (int b = 0; b < 2; ++b) {
    const auto& x = numeric.blocks.at(b);
    if (x.rows() != dims[b]) throw RoundingError("numerical block size does not match the problem");
    in.numeric.push_back(x);
    const auto numeric_null = null_basis(x, eps1);
    std::vector<RationalVector> guessed;
    if (!numeric_null.empty()) {
      try {
        guessed = rationalize_basis(numeric_null, config.denom_bound, config.guess_tolerance);
      } catch (const RoundingError& e) {
        out.info.outcome = "inconsistent";
        out.info.detail = std::string("block ") + std::to_string(b + 1) + ": " + e.what();
        return out;
      }
    }
    in.null_vectors.push_back(merge_null_vectors(reduced_extremal_vectors(tables, b), std::move(guessed)));
  }

  const auto slacks = numerical_slacks(problem, numeric);
  const auto tight = tight_constraints(slacks, eps2);
  out.info.tight = static_cast<int>(tight.size());
  for (int r : tight) {
    BlockEquation eq;
    eq.coefficients = {block_matrix(problem.block0[r], problem.dim0),
                       block_matrix(problem.block1[r], problem.dim1)};
    eq.rhs = problem.rhs[r] - kScaledTarget;
    in.equations.push_back(std::move(eq));
  }
  out.info.equations = static_cast<int>(in.equations.size());

  auto built = build_and_solve(in);
  out.info.null_dimensions = built.null_dimensions;
  out.info.pivots = built.pivots;
  out.info.recenter_step = built.recenter_step;
  if (built.outcome != "ok") {
    out.info.outcome = built.outcome;
    out.info.detail = built.detail;
    return out;
  }
  out.blocks = std::move(built.blocks);
  out.solution = make_solution_vector(out.blocks, ordering_digest(tables));
  const auto exact = exact_slacks(problem, out.solution);
  for (std::size_t r = 0; r < exact.size(); ++r) {
    if (exact[r] < kScaledTarget) {
      out.info.outcome = "bound";
      out.info.detail = "representative " + std::to_string(r) + " has slack " + exact[r].get_str() +
                        " (numerical " + std::to_string(slacks[r]) + ")";
      return out;
    }
  }
  out.info.outcome = "ok";
  return out;
}

}  // namespace

RoundingResult round_solution(const ReducedProblem& problem, const FlagTables& tables,
                              const NumericalSolution& numeric, const RoundingConfig& config) {
  config.validate();
  RoundingResult result;
  double eps1 = config.eps1;
  double eps2 = config.eps2;
  bool shrink_eps1_next = true;
  for (int round = 0; round <= config.max_retries; ++round) {
    auto out = attempt(problem, tables, numeric, config, eps1, eps2);
    result.attempts.push_back(out.info);
    if (out.info.outcome == "ok") {
      result.success = true;
      result.solution = std::move(out.solution);
      result.blocks = std::move(out.blocks);
      return result;
    }
    if (out.info.outcome == "psd") {
      eps1 *= 10;
    } else if (out.info.outcome == "bound") {
      eps2 *= 10;
    } else {
      (shrink_eps1_next ? eps1 : eps2) /= 10;
      shrink_eps1_next = !shrink_eps1_next;
    }
  }
  return result;
}

void write_rounding_log(const RoundingResult& result, const RoundingConfig& config, std::ostream& out) {
  out << "eps1=" << config.eps1 << " eps2=" << config.eps2 << " eps3=" << config.eps3
      << " max_retries=" << config.max_retries << " denom_bound=" << config.denom_bound
      << " guess_tolerance=" << config.guess_tolerance << '\n';
  for (std::size_t i = 0; i < result.attempts.size(); ++i) {
    const auto& a = result.attempts[i];
    out << "attempt " << i + 1 << ": eps1=" << a.eps1 << " eps2=" << a.eps2 << " null=";
    for (std::size_t b = 0; b < a.null_dimensions.size(); ++b) {
      out << (b ? "," : "") << a.null_dimensions[b];
    }
    out << " tight=" << a.tight << " equations=" << a.equations << " pivots=" << a.pivots
        << " recenter=" << a.recenter_step << " -> " << a.outcome;
    if (!a.detail.empty()) out << " (" << a.detail << ")";
    out << '\n';
  }
  out << (result.success ? "rounding succeeded" : "rounding failed") << '\n';
}

}  // namespace flagcert
