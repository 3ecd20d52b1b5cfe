#ifndef ALCOVE_INT_MATRIX_HPP
#define ALCOVE_INT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "alcove/numeric.hpp"

namespace alcove {

/// Dense matrix over Z with exact entries, row-major storage.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n);
  /// Convenience builder for literal matrices in tests and tables.
  static IntegerMatrix from_rows(
      std::initializer_list<std::initializer_list<long>> rows);
  static IntegerMatrix from_columns(const std::vector<IntVec>& cols,
                                    std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }
  /// Lexicographic order on (rows, cols, entries); used for canonical
  /// element ordering in enumerated matrix groups.
  bool operator<(const IntegerMatrix& o) const;

  IntegerMatrix operator*(const IntegerMatrix& o) const;
  IntegerMatrix operator+(const IntegerMatrix& o) const;
  IntegerMatrix operator-(const IntegerMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  RatVec operator*(const RatVec& v) const;

  IntegerMatrix transpose() const;
  IntegerMatrix column(std::size_t j) const;
  IntVec column_vec(std::size_t j) const;
  void set_column(std::size_t j, const IntVec& v);

  bool is_square() const { return rows_ == cols_; }
  bool is_identity() const;
  bool is_zero() const;

  /// Exact determinant (Bareiss fraction-free elimination).
  Int det() const;

  /// Inverse of a unimodular matrix; throws std::invalid_argument when
  /// |det| != 1.
  IntegerMatrix inverse_unimodular() const;

  /// Horizontal concatenation [this | right].
  IntegerMatrix hcat(const IntegerMatrix& right) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

/// Smith normal form: u * a * v = d with u, v unimodular, d diagonal,
/// d(i,i) >= 0 and d(i,i) | d(i+1,i+1).
struct SmithResult {
  IntegerMatrix u, d, v;
  std::vector<Int> diagonal() const;
  std::size_t rank() const;
};

SmithResult snf(const IntegerMatrix& a);

/// Column-style Hermite normal form of the column span of b: unimodular
/// column operations only. Result drops zero columns; column pivots sit on
/// strictly increasing rows, each pivot is positive, and every entry to the
/// right of a pivot (same row) is reduced into [0, pivot). Canonical: two
/// generating sets of the same column lattice yield identical output.
IntegerMatrix hnf(const IntegerMatrix& b);

/// Basis of the integer kernel {x : a x = 0}, saturated, as matrix columns
/// (cols = kernel rank; may be 0).
IntegerMatrix kernel(const IntegerMatrix& a);

/// Adjugate of a square matrix: adj(m) * m = det(m) * I.
IntegerMatrix adjugate(const IntegerMatrix& m);

/// One integer solution x of a x = b, if any.
std::optional<IntVec> solve_integer(const IntegerMatrix& a, const IntVec& b);

/// Columnwise integer solve a x = rhs, if every column is solvable.
std::optional<IntegerMatrix> solve_integer_matrix(const IntegerMatrix& a,
                                                  const IntegerMatrix& rhs);

}  // namespace alcove

#endif
