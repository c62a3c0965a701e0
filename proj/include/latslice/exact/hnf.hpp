#pragma once

#include "latslice/exact/matrix.hpp"

namespace latslice {

/// Column Hermite normal form: m * u = h with u unimodular. The first `rank`
/// columns of h are in lower echelon form with positive pivots and entries left
/// of each pivot reduced into [0, pivot); the remaining columns are zero, so
/// the matching columns of u span the integer kernel of m.
struct ColumnHnf {
  ZMatrix h;
  ZMatrix u;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

inline ColumnHnf column_hnf(const ZMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  ColumnHnf out{m, ZMatrix::identity(cols), {}};
  ZMatrix& h = out.h;
  ZMatrix& u = out.u;

  // c_a <- x c_a + y c_b ; c_b <- p c_a + q c_b  (applied to h and u together)
  auto combine = [&](std::size_t a, std::size_t b, const Integer& x, const Integer& y, const Integer& p,
                     const Integer& q) {
    for (ZMatrix* mat : {&h, &u}) {
      for (std::size_t i = 0; i < mat->rows(); ++i) {
        Integer va = (*mat)(i, a), vb = (*mat)(i, b);
        (*mat)(i, a) = x * va + y * vb;
        (*mat)(i, b) = p * va + q * vb;
      }
    }
  };

  std::size_t r = 0;
  for (std::size_t i = 0; i < rows && r < cols; ++i) {
    for (std::size_t j = r + 1; j < cols; ++j) {
      if (h(i, j) == 0) continue;
      Integer a = h(i, r), b = h(i, j), g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer bg = b / g, ag = a / g;
      combine(r, j, x, y, Integer(-bg), ag);
    }
    if (h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      for (ZMatrix* mat : {&h, &u})
        for (std::size_t t = 0; t < mat->rows(); ++t) (*mat)(t, r) = -(*mat)(t, r);
    }
    for (std::size_t c = 0; c < r; ++c) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(i, r).get_mpz_t());
      if (q == 0) continue;
      for (ZMatrix* mat : {&h, &u})
        for (std::size_t t = 0; t < mat->rows(); ++t) (*mat)(t, c) -= q * (*mat)(t, r);
    }
    out.pivot_rows.push_back(i);
    ++r;
  }
  return out;
}

/// Basis (as columns) of {z in Z^cols : m z = 0}.
inline ZMatrix integer_kernel(const ZMatrix& m) {
  ColumnHnf f = column_hnf(m);
  ZMatrix k(m.cols(), m.cols() - f.rank());
  for (std::size_t j = f.rank(); j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - f.rank()) = f.u(i, j);
  return k;
}

/// Canonical basis (HNF columns) of the lattice spanned by the columns of m.
inline ZMatrix hnf_basis(const ZMatrix& m) {
  ColumnHnf f = column_hnf(m);
  ZMatrix b(m.rows(), f.rank());
  for (std::size_t j = 0; j < f.rank(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = f.h(i, j);
  return b;
}

/// Rational version: the Z-span of the columns of m as a canonical basis.
inline QMatrix hnf_basis(const QMatrix& m) {
  Integer den = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) den = lcm(den, Integer(m(i, j).get_den()));
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = Integer(m(i, j).get_num() * (den / m(i, j).get_den()));
  QMatrix b = to_rational(hnf_basis(z));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= den;
  return b;
}

/// True when the columns of c (n x k) extend to a basis of Z^n.
inline bool columns_primitive(const ZMatrix& c) {
  ColumnHnf f = column_hnf(c.transpose());
  if (f.rank() != c.cols()) return false;
  for (std::size_t j = 0; j < f.rank(); ++j)
    if (f.h(j, j) != 1 || f.pivot_rows[j] != j) return false;
  return true;
}

/// Unimodular n x n matrix whose first k columns are c. Throws if c is not primitive.
inline ZMatrix unimodular_completion(const ZMatrix& c) {
  const std::size_t n = c.rows(), k = c.cols();
  // c^T u = [h | 0] with h lower triangular; primitive means h = I, so c^T = [I | 0] u^{-1}
  // and the first k rows of u^{-1} are c^T. Hence u^{-T} has c as its first k columns.
  ColumnHnf f = column_hnf(c.transpose());
  if (f.rank() != k) throw std::invalid_argument("unimodular_completion: columns are dependent");
  for (std::size_t j = 0; j < k; ++j)
    if (f.h(j, j) != 1) throw std::invalid_argument("unimodular_completion: columns are not primitive");
  QMatrix uinv = inverse_or_throw(to_rational(f.u));
  ZMatrix w = to_integer_exact(uinv.transpose());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (w(i, j) != c(i, j)) throw std::logic_error("unimodular_completion: internal mismatch");
  return w;
}

}  // namespace latslice
