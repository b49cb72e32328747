#ifndef FLAGCERT_LINALG_HPP
#define FLAGCERT_LINALG_HPP

#include <string>
#include <vector>

#include "flagcert/rational.hpp"

namespace flagcert {

using RationalVector = std::vector<Rational>;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Integer& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const Integer& operator()(int i, int j) const { return data_[i * cols_ + j]; }
  void swap_rows(int a, int b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

// Scales a symmetric rational matrix to integers by the lcm of its
// denominators (returned through `scale`).
IntegerMatrix clear_denominators(const RationalMatrix& m, Integer* scale = nullptr);
Integer lcm_of_denominators(const RationalVector& v);

// Gauss-Jordan reduction in place: leftmost pivots, pivot entries 1, zero
// rows dropped. Returns the pivot column of each remaining row.
std::vector<int> reduced_row_echelon(std::vector<RationalVector>& rows);

// Fraction-free (Bareiss) forward elimination of [A | b] with the leftmost
// nonzero column as the next pivot.
struct Echelon {
  IntegerMatrix rows;            // last column holds the right-hand side
  std::vector<int> pivot_columns;
  bool consistent = true;
};
Echelon fraction_free_echelon(IntegerMatrix augmented);

// Solves the echelon system for the pivot unknowns given values for all the
// others; entries of `x` at pivot columns are overwritten.
void back_substitute(const Echelon& e, RationalVector& x);

// Symmetric Bareiss LDL^T with diagonal pivoting. A symmetric integer matrix
// is PSD iff every pivot taken is positive and the matrix left once no
// positive diagonal remains is zero.
struct LdltWitness {
  bool psd = false;
  int rank = 0;
  std::vector<int> order;        // rows pivoted on, in order
  std::vector<Integer> pivots;   // successive leading principal minors
  std::string failure;
};
LdltWitness ldlt_psd(IntegerMatrix a);
LdltWitness ldlt_psd(const RationalMatrix& a);

}  // namespace flagcert

#endif  // FLAGCERT_LINALG_HPP
