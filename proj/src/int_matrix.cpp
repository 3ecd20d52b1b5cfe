#include "alcove/int_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace alcove {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(
    std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntegerMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c)
      throw std::invalid_argument("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (long x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVec>& cols,
                                          std::size_t rows) {
  IntegerMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("from_columns: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

bool IntegerMatrix::operator<(const IntegerMatrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    int c = cmp(data_[k], o.data_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape");
  IntegerMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sum shape");
  IntegerMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
  return r;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix difference shape");
  IntegerMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
  return r;
}

IntVec IntegerMatrix::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape");
  IntVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

RatVec IntegerMatrix::operator*(const RatVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape");
  RatVec r(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += Rat(at(i, j)) * v[j];
  return r;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

IntegerMatrix IntegerMatrix::column(std::size_t j) const {
  IntegerMatrix r(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
  return r;
}

IntVec IntegerMatrix::column_vec(std::size_t j) const {
  IntVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

void IntegerMatrix::set_column(std::size_t j, const IntVec& v) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

bool IntegerMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

Int IntegerMatrix::det() const {
  if (!is_square()) throw std::invalid_argument("det: matrix not square");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix a = *this;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

IntegerMatrix IntegerMatrix::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1)
    throw std::invalid_argument("inverse_unimodular: |det| != 1");
  // Solve this * X = I exactly; unimodularity guarantees an integer X.
  auto x = solve_integer_matrix(*this, identity(rows_));
  if (!x) throw std::logic_error("inverse_unimodular: no integral inverse");
  return *x;
}

IntegerMatrix IntegerMatrix::hcat(const IntegerMatrix& right) const {
  if (rows_ != right.rows_) throw std::invalid_argument("hcat: row mismatch");
  IntegerMatrix r(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j)
      r.at(i, cols_ + j) = right.at(i, j);
  }
  return r;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << at(i, j) << (j + 1 < cols_ ? " " : "");
    os << "]" << (i + 1 < rows_ ? "\n" : "");
  }
  os << "]";
  return os.str();
}

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> out;
  std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < n; ++i) out.push_back(d.at(i, i));
  return out;
}

std::size_t SmithResult::rank() const {
  std::size_t r = 0;
  for (const Int& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

// Elementary operations tracked on the transform matrices.
void row_swap(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void col_swap(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a += q * row b
void row_addmul(IntegerMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) += q * m.at(b, j);
}
// col a += q * col b
void col_addmul(IntegerMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) += q * m.at(i, b);
}
void row_negate(IntegerMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Truncated quotient, used so remainders shrink in absolute value.
Int tquot(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithResult snf(const IntegerMatrix& a) {
  SmithResult r{IntegerMatrix::identity(a.rows()), a,
                IntegerMatrix::identity(a.cols())};
  IntegerMatrix& d = r.d;
  std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Pivot choice: least nonzero absolute value in the working submatrix.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
          if (d.at(i, j) != 0 &&
              (!found || abs_int(d.at(i, j)) < abs_int(d.at(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) {
        t = n;  // remaining submatrix is zero
        break;
      }
      if (pi != t) {
        row_swap(d, t, pi);
        row_swap(r.u, t, pi);
      }
      if (pj != t) {
        col_swap(d, t, pj);
        col_swap(r.v, t, pj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i)
        if (d.at(i, t) != 0) {
          Int q = -tquot(d.at(i, t), d.at(t, t));
          row_addmul(d, i, t, q);
          row_addmul(r.u, i, t, q);
          if (d.at(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < d.cols(); ++j)
        if (d.at(t, j) != 0) {
          Int q = -tquot(d.at(t, j), d.at(t, t));
          col_addmul(d, j, t, q);
          col_addmul(r.v, j, t, q);
          if (d.at(t, j) != 0) clean = false;
        }
      if (!clean) continue;  // smaller remainders exist; re-pick pivot
      // Enforce the divisibility chain: pull any non-divisible entry into
      // row t and keep reducing.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols() && divides; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_addmul(d, t, i, Int(1));
            row_addmul(r.u, t, i, Int(1));
            divides = false;
          }
      if (divides) break;
    }
    if (t >= n) break;
    if (d.at(t, t) < 0) {
      row_negate(d, t);
      row_negate(r.u, t);
    }
  }
  return r;
}

IntegerMatrix hnf(const IntegerMatrix& b) {
  IntegerMatrix d = b;
  if (d.cols() == 0) return d;
  std::ptrdiff_t c = static_cast<std::ptrdiff_t>(d.cols()) - 1;
  for (std::ptrdiff_t r = static_cast<std::ptrdiff_t>(d.rows()) - 1;
       r >= 0 && c >= 0; --r) {
    // Euclid over columns 0..c until one nonzero entry remains in row r.
    for (;;) {
      std::ptrdiff_t jmin = -1;
      for (std::ptrdiff_t j = 0; j <= c; ++j)
        if (d.at(r, j) != 0 &&
            (jmin < 0 || abs_int(d.at(r, j)) < abs_int(d.at(r, jmin))))
          jmin = j;
      if (jmin < 0) break;
      bool others = false;
      for (std::ptrdiff_t j = 0; j <= c; ++j) {
        if (j == jmin || d.at(r, j) == 0) continue;
        others = true;
        Int q = -tquot(d.at(r, j), d.at(r, jmin));
        col_addmul(d, static_cast<std::size_t>(j),
                   static_cast<std::size_t>(jmin), q);
      }
      if (!others) {
        if (jmin != c) col_swap(d, static_cast<std::size_t>(jmin),
                                static_cast<std::size_t>(c));
        break;
      }
    }
    if (d.at(r, static_cast<std::size_t>(c)) == 0) continue;
    std::size_t pc = static_cast<std::size_t>(c);
    if (d.at(r, pc) < 0)
      for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, pc) = -d.at(i, pc);
    // Reduce the entries right of the pivot into [0, pivot).
    for (std::size_t j = pc + 1; j < d.cols(); ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), d.at(r, j).get_mpz_t(),
                 d.at(r, pc).get_mpz_t());
      col_addmul(d, j, pc, Int(-q));
    }
    --c;
  }
  // Columns 0..c are now zero; keep the echelon block.
  std::size_t keep = d.cols() - static_cast<std::size_t>(c + 1);
  IntegerMatrix out(d.rows(), keep);
  for (std::size_t j = 0; j < keep; ++j)
    for (std::size_t i = 0; i < d.rows(); ++i)
      out.at(i, j) = d.at(i, static_cast<std::size_t>(c + 1) + j);
  return out;
}

IntegerMatrix kernel(const IntegerMatrix& a) {
  SmithResult s = snf(a);
  std::size_t n = std::min(a.rows(), a.cols());
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (j >= n || s.d.at(j, j) == 0) zero_cols.push_back(j);
  IntegerMatrix out(a.cols(), zero_cols.size());
  for (std::size_t k = 0; k < zero_cols.size(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i)
      out.at(i, k) = s.v.at(i, zero_cols[k]);
  return out;
}

std::optional<IntVec> solve_integer(const IntegerMatrix& a, const IntVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve shape");
  SmithResult s = snf(a);
  IntVec ub = s.u * b;
  std::size_t n = std::min(a.rows(), a.cols());
  IntVec y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int di = i < n ? s.d.at(i, i) : Int(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % di != 0) return std::nullopt;
      if (i < a.cols()) y[i] = ub[i] / di;
    }
  }
  return s.v * y;
}

std::optional<IntegerMatrix> solve_integer_matrix(const IntegerMatrix& a,
                                                  const IntegerMatrix& rhs) {
  if (rhs.rows() != a.rows()) throw std::invalid_argument("solve shape");
  SmithResult s = snf(a);
  std::size_t n = std::min(a.rows(), a.cols());
  IntegerMatrix x(a.cols(), rhs.cols());
  for (std::size_t col = 0; col < rhs.cols(); ++col) {
    IntVec ub = s.u * rhs.column_vec(col);
    IntVec y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Int di = i < n ? s.d.at(i, i) : Int(0);
      if (di == 0) {
        if (ub[i] != 0) return std::nullopt;
      } else {
        if (ub[i] % di != 0) return std::nullopt;
        if (i < a.cols()) y[i] = ub[i] / di;
      }
    }
    x.set_column(col, s.v * y);
  }
  return x;
}

IntegerMatrix adjugate(const IntegerMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate: square matrix required");
  std::size_t n = m.rows();
  if (n == 0) return m;
  IntegerMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntegerMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;  // adj(i,j) = cofactor(j,i)
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(mr, mc++) = m.at(r, c);
        }
        ++mr;
      }
      Int cof = minor.det();
      if ((i + j) % 2 == 1) cof = -cof;
      adj.at(i, j) = cof;
    }
  return adj;
}

}  // namespace alcove
