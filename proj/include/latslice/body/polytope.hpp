#pragma once

#include "latslice/exact/matrix.hpp"

#include <atomic>
#include <map>
#include <string>

namespace latslice {

/// Row `normal . x <= offset` (or `==` when used as an equality).
struct HalfSpace {
  QVector normal;
  Rational offset;

  bool operator==(const HalfSpace& o) const { return normal == o.normal && offset == o.offset; }
  bool operator<(const HalfSpace& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

inline HalfSpace canonical_halfspace(const QVector& normal, const Rational& offset) {
  Rational s = primitive_row_scale(normal, offset);
  return {scale(normal, s), Rational(offset * s)};
}

namespace detail {
inline std::atomic<std::size_t>& hull_cap_storage() {
  static std::atomic<std::size_t> cap{6};
  return cap;
}
}  // namespace detail

/// Largest ambient dimension the exact hull routines accept.
inline std::size_t hull_dimension_cap() { return detail::hull_cap_storage().load(); }
inline void set_hull_dimension_cap(std::size_t n) { detail::hull_cap_storage().store(n); }

inline void check_hull_dimension(std::size_t n) {
  if (n > hull_dimension_cap())
    throw std::invalid_argument("dimension " + std::to_string(n) + " exceeds the hull dimension cap " +
                                std::to_string(hull_dimension_cap()) + " (raise it with --dim-cap)");
}

namespace detail {

/// Echelon basis for incremental independence tests.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t dim) : dim_(dim) {}

  bool add(const QVector& v) {
    QVector r = reduce(v);
    std::size_t c = 0;
    while (c < dim_ && r[c] == 0) ++c;
    if (c == dim_) return false;
    Rational inv = 1 / r[c];
    for (auto& x : r) x *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(c);
    return true;
  }

  bool contains(const QVector& v) const { return is_zero(reduce(v)); }
  std::size_t rank() const { return rows_.size(); }

 private:
  QVector reduce(QVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[i][j];
    }
    return v;
  }

  std::size_t dim_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

struct HullResult {
  std::vector<QVector> vertices;
  std::vector<HalfSpace> facets;
  std::vector<HalfSpace> equalities;
  int dim = -1;
};

/// Normal of the hyperplane through d affinely independent points of Q^d, pointing
/// away from `inside`.
inline HalfSpace oriented_plane(const std::vector<const QVector*>& pts, const QVector& inside, std::size_t d) {
  QMatrix m(pts.size() - 1, d);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i - 1, j) = (*pts[i])[j] - (*pts[0])[j];
  std::vector<QVector> ns = nullspace(m);
  if (ns.size() != 1) throw std::logic_error("hull: degenerate facet simplex");
  QVector a = std::move(ns[0]);
  Rational b = dot(a, *pts[0]);
  if (dot(a, inside) > b) {
    a = negate(a);
    b = -b;
  }
  return {a, b};
}

/// Beneath-beyond hull of full-dimensional points in Q^d. Returns the facet
/// hyperplanes and a vertex flag per input point.
inline std::pair<std::vector<HalfSpace>, std::vector<bool>> full_dim_hull(const std::vector<QVector>& pts,
                                                                           std::size_t d) {
  // initial simplex
  std::vector<std::size_t> simplex{0};
  IncrementalSpan span(d);
  for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i)
    if (span.add(sub(pts[i], pts[0]))) simplex.push_back(i);
  if (simplex.size() != d + 1) throw std::logic_error("hull: points are not full-dimensional");

  QVector inside(d, Rational(0));
  for (auto i : simplex) inside = add(inside, pts[i]);
  for (auto& x : inside) x /= Rational(static_cast<long>(d + 1));

  struct Facet {
    std::vector<std::size_t> verts;  // sorted
    HalfSpace plane;
    bool alive = true;
  };
  std::vector<Facet> facets;
  auto make_facet = [&](std::vector<std::size_t> verts) {
    std::sort(verts.begin(), verts.end());
    std::vector<const QVector*> ps;
    for (auto v : verts) ps.push_back(&pts[v]);
    facets.push_back({std::move(verts), oriented_plane(ps, inside, d), true});
  };
  for (std::size_t omit = 0; omit <= d; ++omit) {
    std::vector<std::size_t> verts;
    for (std::size_t i = 0; i <= d; ++i)
      if (i != omit) verts.push_back(simplex[i]);
    make_facet(verts);
  }

  std::vector<bool> in_simplex(pts.size(), false);
  for (auto i : simplex) in_simplex[i] = true;

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (in_simplex[p]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (facets[f].alive && dot(facets[f].plane.normal, pts[p]) > facets[f].plane.offset) visible.push_back(f);
    if (visible.empty()) continue;
    std::map<std::vector<std::size_t>, int> ridges;
    for (auto f : visible) {
      const auto& vs = facets[f].verts;
      for (std::size_t omit = 0; omit < vs.size(); ++omit) {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < vs.size(); ++i)
          if (i != omit) r.push_back(vs[i]);
        ++ridges[r];
      }
      facets[f].alive = false;
    }
    for (auto& [ridge, count] : ridges) {
      if (count != 1) continue;
      std::vector<std::size_t> verts(ridge);
      verts.push_back(p);
      make_facet(verts);
    }
    if (facets.size() > 64) {
      std::size_t alive = 0;
      for (const auto& f : facets) alive += f.alive;
      if (alive * 2 < facets.size()) {
        std::vector<Facet> kept;
        for (auto& f : facets)
          if (f.alive) kept.push_back(std::move(f));
        facets = std::move(kept);
      }
    }
  }

  std::vector<HalfSpace> planes;
  std::vector<bool> on_boundary(pts.size(), false);
  for (const auto& f : facets) {
    if (!f.alive) continue;
    planes.push_back(canonical_halfspace(f.plane.normal, f.plane.offset));
    for (auto v : f.verts) on_boundary[v] = true;
  }
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end()), planes.end());

  std::vector<bool> is_vertex(pts.size(), false);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (!on_boundary[p]) continue;
    IncrementalSpan tight(d);
    for (const auto& h : planes)
      if (dot(h.normal, pts[p]) == h.offset) tight.add(h.normal);
    is_vertex[p] = tight.rank() == d;
  }
  return {planes, is_vertex};
}

inline std::vector<HalfSpace> rref_equalities(const std::vector<QVector>& normals, const std::vector<Rational>& rhs,
                                              std::size_t n) {
  if (normals.empty()) return {};
  QMatrix aug(normals.size(), n + 1);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = normals[i][j];
    aug(i, n) = rhs[i];
  }
  Elimination e = rref(aug);
  std::vector<HalfSpace> out;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    QVector row = e.reduced.row(r);
    Rational b = row.back();
    row.pop_back();
    out.push_back({row, b});
  }
  return out;
}

inline HullResult convex_hull(std::size_t n, std::vector<QVector> pts) {
  check_hull_dimension(n);
  HullResult out;
  for (const auto& p : pts)
    if (p.size() != n) throw std::invalid_argument("hull: point of wrong dimension");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return out;

  const QVector& p0 = pts[0];
  std::vector<QVector> dirs;
  IncrementalSpan span(n);
  for (std::size_t i = 1; i < pts.size() && dirs.size() < n; ++i) {
    QVector diff = sub(pts[i], p0);
    if (span.add(diff)) dirs.push_back(diff);
  }
  const std::size_t d = dirs.size();
  out.dim = static_cast<int>(d);

  if (d < n) {
    std::vector<QVector> normals = d == 0 ? QMatrix::identity(n).columns()
                                          : nullspace(QMatrix::from_rows(dirs));
    std::vector<Rational> rhs;
    for (const auto& e : normals) rhs.push_back(dot(e, p0));
    out.equalities = rref_equalities(normals, rhs, n);
  }
  if (d == 0) {
    out.vertices = {p0};
    return out;
  }

  QMatrix dmat = QMatrix::from_columns(dirs);
  QMatrix linv = left_inverse(dmat);
  std::vector<QVector> local;
  local.reserve(pts.size());
  for (const auto& p : pts) local.push_back(linv * sub(p, p0));

  auto [planes, is_vertex] = full_dim_hull(local, d);

  QMatrix proj = (d == n) ? QMatrix::identity(n)
                          : dmat * inverse_or_throw(dmat.transpose() * dmat) * dmat.transpose();
  QMatrix linv_t = linv.transpose();
  for (const auto& h : planes) {
    QVector w = proj * (linv_t * h.normal);
    out.facets.push_back(canonical_halfspace(w, Rational(h.offset + dot(w, p0))));
  }
  std::sort(out.facets.begin(), out.facets.end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (is_vertex[i]) out.vertices.push_back(pts[i]);
  return out;
}

}  // namespace detail

class Polytope {
 public:
  Polytope() = default;

  static Polytope from_vertices(std::size_t dim, std::vector<QVector> points) {
    return Polytope(dim, detail::convex_hull(dim, std::move(points)));
  }

  static Polytope empty(std::size_t dim) { return Polytope(dim, detail::HullResult{}); }

  /// Vertices of {x : rows, equalities}; throws if the set is unbounded.
  static Polytope from_inequalities(std::size_t dim, const std::vector<HalfSpace>& rows,
                                    const std::vector<HalfSpace>& equalities = {});

  std::size_t ambient_dim() const { return dim_; }
  int intrinsic_dim() const { return hull_.dim; }
  bool is_empty() const { return hull_.dim < 0; }
  bool full_dimensional() const { return hull_.dim == static_cast<int>(dim_); }

  const std::vector<QVector>& vertices() const { return hull_.vertices; }
  const std::vector<HalfSpace>& facets() const { return hull_.facets; }
  const std::vector<HalfSpace>& equalities() const { return hull_.equalities; }

  bool contains(const QVector& x) const {
    if (is_empty()) return false;
    for (const auto& e : hull_.equalities)
      if (dot(e.normal, x) != e.offset) return false;
    for (const auto& f : hull_.facets)
      if (dot(f.normal, x) > f.offset) return false;
    return true;
  }

  bool has_vertex(const QVector& v) const { return std::binary_search(hull_.vertices.begin(), hull_.vertices.end(), v); }

  bool is_origin_symmetric() const { return symmetric_; }
  bool is_unconditional() const { return unconditional_; }

  /// Origin in the relative interior of a full-dimensional polytope.
  bool origin_interior() const {
    if (!full_dimensional()) return false;
    for (const auto& f : hull_.facets)
      if (f.offset <= 0) return false;
    return true;
  }

  /// Image under x -> A x + t for any m x n matrix A.
  Polytope affine_image(const QMatrix& a, const QVector& t) const {
    if (a.cols() != dim_ || t.size() != a.rows()) throw std::invalid_argument("affine_image: shape mismatch");
    if (is_empty()) return empty(a.rows());
    std::vector<QVector> pts;
    for (const auto& v : hull_.vertices) pts.push_back(add(a * v, t));
    return from_vertices(a.rows(), std::move(pts));
  }

  Polytope translate(const QVector& t) const { return affine_image(QMatrix::identity(dim_), t); }

  Polytope scaled(const Rational& s) const {
    QMatrix a = QMatrix::identity(dim_);
    for (std::size_t i = 0; i < dim_; ++i) a(i, i) = s;
    return affine_image(a, QVector(dim_, Rational(0)));
  }

  bool operator==(const Polytope& o) const { return dim_ == o.dim_ && hull_.vertices == o.hull_.vertices && hull_.dim == o.hull_.dim; }

 private:
  Polytope(std::size_t dim, detail::HullResult h) : dim_(dim), hull_(std::move(h)) { tag_symmetry(); }

  void tag_symmetry() {
    symmetric_ = !is_empty();
    for (const auto& v : hull_.vertices)
      if (!has_vertex(negate(v))) {
        symmetric_ = false;
        break;
      }
    unconditional_ = symmetric_;
    for (std::size_t i = 0; unconditional_ && i < hull_.vertices.size(); ++i)
      for (std::size_t c = 0; c < dim_; ++c) {
        QVector f = hull_.vertices[i];
        f[c] = -f[c];
        if (!has_vertex(f)) {
          unconditional_ = false;
          break;
        }
      }
  }

  std::size_t dim_ = 0;
  detail::HullResult hull_;
  bool symmetric_ = false;
  bool unconditional_ = false;
};

namespace detail {

/// Vertices of {y in Q^d : a_i . y <= b_i} by enumerating d-subsets of rows.
inline std::vector<QVector> vertices_by_subsets(const std::vector<HalfSpace>& rows, std::size_t d) {
  std::vector<QVector> found;
  if (d == 0) {
    for (const auto& r : rows)
      if (r.offset < 0) return {};
    return {QVector{}};
  }
  std::vector<std::size_t> chosen;
  auto feasible = [&](const QVector& y) {
    for (const auto& r : rows)
      if (dot(r.normal, y) > r.offset) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == d) {
      QMatrix m(d, d);
      QVector rhs(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[chosen[i]].normal[j];
        rhs[i] = rows[chosen[i]].offset;
      }
      auto inv = inverse(m);
      if (!inv) return;
      QVector y = *inv * rhs;
      if (feasible(y)) found.push_back(std::move(y));
      return;
    }
    for (std::size_t i = start; i + (d - chosen.size()) <= rows.size(); ++i) {
      chosen.push_back(i);
      std::vector<QVector> normals;
      for (auto c : chosen) normals.push_back(rows[c].normal);
      if (rank_of(normals, d) == chosen.size()) self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace detail

inline Polytope Polytope::from_inequalities(std::size_t dim, const std::vector<HalfSpace>& rows,
                                            const std::vector<HalfSpace>& equalities) {
  check_hull_dimension(dim);
  for (const auto& r : rows)
    if (r.normal.size() != dim) throw std::invalid_argument("from_inequalities: row of wrong dimension");
  for (const auto& e : equalities)
    if (e.normal.size() != dim) throw std::invalid_argument("from_inequalities: equality of wrong dimension");

  // parametrize the affine subspace x = x0 + N y
  QVector x0(dim, Rational(0));
  QMatrix nbasis = QMatrix::identity(dim);
  if (!equalities.empty()) {
    std::vector<QVector> en;
    QVector ef;
    for (const auto& e : equalities) {
      en.push_back(e.normal);
      ef.push_back(e.offset);
    }
    QMatrix em = QMatrix::from_rows(en);
    auto sol = solve(em, ef);
    if (!sol) return empty(dim);
    x0 = *sol;
    nbasis = QMatrix::from_columns(nullspace(em), dim);
  }
  const std::size_t d = nbasis.cols();
  std::vector<HalfSpace> reduced;
  for (const auto& r : rows) {
    QVector a = nbasis.transpose() * r.normal;
    Rational b = r.offset - dot(r.normal, x0);
    if (is_zero(a)) {
      if (b < 0) return empty(dim);
      continue;
    }
    reduced.push_back({a, b});
  }
  if (d > 0) {
    // bounded iff the recession cone, cut by a box, has only the origin as a vertex
    std::vector<HalfSpace> cone;
    for (const auto& r : reduced) cone.push_back({r.normal, Rational(0)});
    for (std::size_t i = 0; i < d; ++i) {
      QVector e(d, Rational(0));
      e[i] = 1;
      cone.push_back({e, Rational(1)});
      cone.push_back({negate(e), Rational(1)});
    }
    for (const auto& v : detail::vertices_by_subsets(cone, d))
      if (!is_zero(v)) throw std::invalid_argument("from_inequalities: the described set is unbounded");
  }
  std::vector<QVector> pts;
  for (const auto& y : detail::vertices_by_subsets(reduced, d)) pts.push_back(add(x0, nbasis * y));
  if (pts.empty()) return empty(dim);
  return from_vertices(dim, std::move(pts));
}

}  // namespace latslice
