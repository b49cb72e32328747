#include "flagcert/linalg.hpp"

#include <stdexcept>
#include <utility>

#pragma GCC poison float double

namespace flagcert {

void IntegerMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

Integer lcm_of_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
  return l;
}

IntegerMatrix clear_denominators(const RationalMatrix& m, Integer* scale) {
  Integer l = 1;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) l = lcm(l, Integer(m(i, j).get_den()));
  }
  IntegerMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
  }
  if (scale) *scale = l;
  return out;
}

std::vector<int> reduced_row_echelon(std::vector<RationalVector>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const int cols = static_cast<int>(rows.front().size());
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (int j = c; j < cols; ++j) {
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Echelon fraction_free_echelon(IntegerMatrix m) {
  Echelon e;
  const int n = m.rows();
  const int cols = m.cols() - 1;
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < n; ++c) {
    int p = r;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) continue;
    m.swap_rows(p, r);
    for (int i = r + 1; i < n; ++i) {
      for (int j = c + 1; j <= cols; ++j) {
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j));
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    e.pivot_columns.push_back(c);
    ++r;
  }
  for (int i = r; i < n; ++i) {
    if (m(i, cols) != 0) e.consistent = false;
  }
  e.rows = std::move(m);
  return e;
}

void back_substitute(const Echelon& e, RationalVector& x) {
  const int cols = e.rows.cols() - 1;
  if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("back_substitute: size mismatch");
  for (int i = static_cast<int>(e.pivot_columns.size()) - 1; i >= 0; --i) {
    const int c = e.pivot_columns[i];
    Rational acc = e.rows(i, cols);
    for (int j = c + 1; j < cols; ++j) {
      if (e.rows(i, j) != 0 && x[j] != 0) acc -= e.rows(i, j) * x[j];
    }
    x[c] = acc / e.rows(i, c);
  }
}

LdltWitness ldlt_psd(IntegerMatrix a) {
  LdltWitness w;
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("ldlt_psd: matrix is not square");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) != a(j, i)) throw std::invalid_argument("ldlt_psd: matrix is not symmetric");
    }
  }
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  Integer prev = 1;
  while (!alive.empty()) {
    int pick = -1;
    for (std::size_t t = 0; t < alive.size(); ++t) {
      const int v = alive[t];
      if (a(v, v) < 0) {
        w.failure = "negative diagonal " + a(v, v).get_str() + " at row " + std::to_string(v) + " after " +
                    std::to_string(w.rank) + " pivots";
        return w;
      }
      if (pick < 0 && a(v, v) > 0) pick = static_cast<int>(t);
    }
    if (pick < 0) {
      for (int u : alive) {
        for (int v : alive) {
          if (a(u, v) != 0) {
            w.failure = "zero diagonal with nonzero entry (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")";
            return w;
          }
        }
      }
      break;
    }
    const int k = alive[pick];
    alive.erase(alive.begin() + pick);
    const Integer pivot = a(k, k);
    for (int u : alive) {
      for (int v : alive) {
        if (v < u) continue;
        Integer t = pivot * a(u, v) - a(u, k) * a(k, v);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(u, v) = t;
        a(v, u) = t;
      }
    }
    w.order.push_back(k);
    w.pivots.push_back(pivot);
    ++w.rank;
    prev = pivot;
  }
  w.psd = true;
  return w;
}

LdltWitness ldlt_psd(const RationalMatrix& a) { return ldlt_psd(clear_denominators(a)); }

}  // namespace flagcert
