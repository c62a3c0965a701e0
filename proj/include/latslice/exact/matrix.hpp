#pragma once

#include "latslice/exact/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace latslice {

using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols_if_empty = 0) {
    Matrix m(rows.size(), rows.empty() ? cols_if_empty : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows_if_empty = 0) {
    Matrix m(cols.empty() ? rows_if_empty : cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw std::invalid_argument("ragged matrix columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

// ---- vectors ----

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

template <class T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

template <class T>
std::vector<T> scale(const std::vector<T>& a, const T& s) {
  std::vector<T> r(a);
  for (auto& x : r) x *= s;
  return r;
}

template <class T>
std::vector<T> negate(const std::vector<T>& a) {
  std::vector<T> r(a);
  for (auto& x : r) x = -x;
  return r;
}

template <class T>
bool is_zero(const std::vector<T>& a) {
  return std::all_of(a.begin(), a.end(), [](const T& x) { return x == 0; });
}

inline QVector to_rational(const ZVector& z) { return QVector(z.begin(), z.end()); }

inline QMatrix to_rational(const ZMatrix& z) {
  QMatrix q(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) q(i, j) = z(i, j);
  return q;
}

inline std::optional<ZVector> to_integer(const QVector& q) {
  ZVector z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!is_integer(q[i])) return std::nullopt;
    z[i] = q[i].get_num();
  }
  return z;
}

inline ZMatrix to_integer_exact(const QMatrix& q) {
  ZMatrix z(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (!is_integer(q(i, j))) throw std::invalid_argument("matrix entry is not integral");
      z(i, j) = q(i, j).get_num();
    }
  return z;
}

inline Integer content(const ZVector& z) {
  Integer g = 0;
  for (const auto& x : z) g = gcd(g, x);
  return g;
}

/// Smallest positive multiple of q that is an integer vector with content 1.
inline ZVector primitive_integer_multiple(const QVector& q) {
  Integer den = 1;
  for (const auto& x : q) den = lcm(den, Integer(x.get_den()));
  ZVector z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) z[i] = Integer(q[i].get_num() * (den / q[i].get_den()));
  Integer g = content(z);
  if (g == 0) throw std::invalid_argument("zero vector has no primitive multiple");
  for (auto& x : z) x /= g;
  return z;
}

/// Multiplier s > 0 so that s*(row, rhs) is a primitive integer row.
inline Rational primitive_row_scale(const QVector& row, const Rational& rhs) {
  QVector all(row);
  all.push_back(rhs);
  Integer den = 1;
  for (const auto& x : all) den = lcm(den, Integer(x.get_den()));
  Integer g = 0;
  for (const auto& x : all) g = gcd(g, Integer(x.get_num() * (den / x.get_den())));
  if (g == 0) throw std::invalid_argument("zero row");
  return make_rational(den, g);
}

// ---- elimination ----

struct Elimination {
  QMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

inline Elimination rref(QMatrix m) {
  Elimination e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).rank(); }

inline std::size_t rank_of(const std::vector<QVector>& vectors, std::size_t dim) {
  return rank(QMatrix::from_rows(vectors, dim));
}

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<QVector> nullspace(const QMatrix& m) {
  Elimination e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = y, or nullopt when inconsistent. Free variables are set to 0.
inline std::optional<QVector> solve(const QMatrix& m, const QVector& y) {
  if (y.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = y[i];
  }
  Elimination e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  QVector x(m.cols(), Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

/// Fraction-free (Bareiss) determinant after clearing row denominators.
inline Rational determinant(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  ZMatrix a(n, n);
  Integer scale_total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer den = 1;
    for (std::size_t j = 0; j < n; ++j) den = lcm(den, Integer(m(i, j).get_den()));
    scale_total *= den;
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Integer(m(i, j).get_num() * (den / m(i, j).get_den()));
  }
  int s = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  Rational d(Integer(s * a(n - 1, n - 1)), scale_total);
  d.canonicalize();
  return d;
}

inline Integer determinant(const ZMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return QMatrix(0, 0);
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Elimination e = rref(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

inline QMatrix inverse_or_throw(const QMatrix& m) {
  auto inv = inverse(m);
  if (!inv) throw std::invalid_argument("matrix is singular");
  return *inv;
}

/// Left inverse of a full-column-rank n x k matrix, built from k independent rows.
inline QMatrix left_inverse(const QMatrix& m) {
  const std::size_t n = m.rows(), k = m.cols();
  Elimination e = rref(m.transpose());
  if (e.rank() != k) throw std::invalid_argument("left_inverse: columns are dependent");
  QMatrix sub(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < k; ++j) sub(r, j) = m(e.pivots[r], j);
  QMatrix sinv = inverse_or_throw(sub);
  QMatrix li(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < k; ++r) li(i, e.pivots[r]) = sinv(i, r);
  return li;
}

}  // namespace latslice
