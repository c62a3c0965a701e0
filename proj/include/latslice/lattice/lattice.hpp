#pragma once

#include "latslice/exact/hnf.hpp"

#include <string>

namespace latslice {

/// Lattice given by linearly independent basis columns in Q^n.
class Lattice {
 public:
  Lattice() = default;

  explicit Lattice(QMatrix basis) : basis_(std::move(basis)) {
    if (latslice::rank(basis_) != basis_.cols()) throw std::invalid_argument("lattice basis columns are dependent");
  }

  static Lattice integer(std::size_t n) { return Lattice(QMatrix::identity(n)); }

  const QMatrix& basis() const { return basis_; }
  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  bool full_rank() const { return basis_.rows() == basis_.cols(); }

  bool is_standard() const { return full_rank() && basis_ == QMatrix::identity(ambient_dim()); }

  /// Gram determinant det(B^T B), the squared covolume in its span.
  Rational det_sq() const { return determinant(basis_.transpose() * basis_); }

  Rational det() const {
    if (!full_rank()) throw std::invalid_argument("det of a lattice that is not full rank; use det_sq");
    Rational d = determinant(basis_);
    return d < 0 ? Rational(-d) : d;
  }

  /// Integer coordinates of x in this basis, if x is a lattice vector.
  std::optional<ZVector> coordinates(const QVector& x) const {
    auto c = solve(basis_, x);
    if (!c) return std::nullopt;
    if (basis_ * *c != x) return std::nullopt;
    return to_integer(*c);
  }

  bool contains(const QVector& x) const { return coordinates(x).has_value(); }

  QVector point(const ZVector& z) const { return basis_ * to_rational(z); }

 private:
  QMatrix basis_;
};

struct AffineLattice {
  Lattice lattice;
  QVector shift;

  static AffineLattice integer(std::size_t n) { return {Lattice::integer(n), QVector(n, Rational(0))}; }
};

inline Lattice canonical(const Lattice& l) {
  if (l.rank() == 0) return l;
  return Lattice(hnf_basis(l.basis()));
}

inline bool same_lattice(const Lattice& a, const Lattice& b) {
  return a.ambient_dim() == b.ambient_dim() && a.rank() == b.rank() && canonical(a).basis() == canonical(b).basis();
}

/// Lambda* = B^{-T} Z^n for a full-rank lattice.
inline Lattice polar_lattice(const Lattice& l) {
  if (!l.full_rank()) throw std::invalid_argument("polar_lattice needs a full-rank lattice; use polar_within_span");
  return canonical(Lattice(inverse_or_throw(l.basis()).transpose()));
}

/// Dual of a lattice inside its own span: basis B (B^T B)^{-1}.
inline Lattice polar_within_span(const Lattice& l) {
  if (l.rank() == 0) return l;
  QMatrix g = l.basis().transpose() * l.basis();
  return canonical(Lattice(l.basis() * inverse_or_throw(g)));
}

namespace detail {

/// Lambda intersected with span(vectors). Vectors must lie in span(Lambda).
inline Lattice intersect_with_span(const Lattice& l, const std::vector<QVector>& vectors) {
  const std::size_t k = l.rank();
  std::vector<QVector> coords;
  for (const auto& v : vectors) {
    auto c = solve(l.basis(), v);
    if (!c || l.basis() * *c != v) throw std::invalid_argument("vector is not in the span of the lattice");
    coords.push_back(*c);
  }
  if (coords.empty() || rank_of(coords, k) == 0) return Lattice(QMatrix(l.ambient_dim(), 0));
  // integer rows annihilating span(coords), then their integer kernel
  QMatrix w = QMatrix::from_columns(coords, k);
  std::vector<QVector> left = nullspace(w.transpose());
  ZMatrix kernel_basis;
  if (left.empty()) {
    kernel_basis = ZMatrix::identity(k);
  } else {
    std::vector<ZVector> rows;
    for (const auto& y : left) rows.push_back(primitive_integer_multiple(y));
    kernel_basis = integer_kernel(ZMatrix::from_rows(rows));
  }
  return canonical(Lattice(l.basis() * to_rational(kernel_basis)));
}

}  // namespace detail

/// Lambda intersected with the span of the given lattice vectors.
inline Lattice primitive_sublattice(const Lattice& l, const std::vector<QVector>& vectors) {
  for (const auto& v : vectors)
    if (!l.contains(v)) throw std::invalid_argument("primitive_sublattice: spanning vector is not a lattice vector");
  return detail::intersect_with_span(l, vectors);
}

/// Orthogonal projection of a full-rank lattice onto v^perp, computed as the dual
/// of Lambda* restricted to v^perp.
inline Lattice projected_lattice(const Lattice& l, const QVector& v) {
  if (is_zero(v)) throw std::invalid_argument("projected_lattice: zero direction");
  if (!l.full_rank()) throw std::invalid_argument("projected_lattice needs a full-rank lattice");
  std::vector<QVector> perp = nullspace(QMatrix::from_rows({v}));
  Lattice dual = polar_lattice(l);
  Lattice s = detail::intersect_with_span(dual, perp);
  return polar_within_span(s);
}

/// Primitive vector of Lambda* orthogonal to the hyperplane spanned by the given vectors.
/// Sign is chosen so that the first nonzero entry is positive.
inline QVector primitive_normal(const Lattice& l, const std::vector<QVector>& hyperplane) {
  const std::size_t n = l.ambient_dim();
  if (!l.full_rank()) throw std::invalid_argument("primitive_normal needs a full-rank lattice");
  if (rank_of(hyperplane, n) + 1 != n) throw std::invalid_argument("primitive_normal: vectors do not span a hyperplane");
  QVector w = nullspace(QMatrix::from_rows(hyperplane, n)).at(0);
  // coordinates of w in the dual basis B^{-T} are B^T w
  ZVector c = primitive_integer_multiple(l.basis().transpose() * w);
  QVector out = inverse_or_throw(l.basis()).transpose() * to_rational(c);
  for (const auto& x : out) {
    if (x == 0) continue;
    if (x < 0) out = negate(out);
    break;
  }
  return out;
}

/// One representative per coset of m*Lambda in Lambda (m^rank of them), in the
/// order of their coefficient vectors in {0..m-1}^rank.
inline std::vector<QVector> coset_representatives(const Lattice& l, unsigned m) {
  if (m == 0) throw std::invalid_argument("coset_representatives: m must be positive");
  const std::size_t k = l.rank();
  std::vector<QVector> reps;
  ZVector z(k, Integer(0));
  while (true) {
    reps.push_back(l.point(z));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (z[i] + 1 < m) {
        ++z[i];
        break;
      }
      z[i] = 0;
      if (i == 0) return reps;
    }
    if (k == 0) return reps;
  }
}

}  // namespace latslice
