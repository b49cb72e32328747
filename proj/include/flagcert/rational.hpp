#ifndef FLAGCERT_RATIONAL_HPP
#define FLAGCERT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace flagcert {

using Integer = mpz_class;
// Always kept in canonical form (reduced, positive denominator).
using Rational = mpq_class;

Integer binomial(long n, long k);
Rational make_rational(const Integer& num, const Integer& den);
// Accepts "p", "-p" and "p/q".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const;
  bool operator==(const RationalMatrix& other) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace flagcert

#endif  // FLAGCERT_RATIONAL_HPP
