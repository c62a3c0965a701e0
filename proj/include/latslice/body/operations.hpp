#pragma once

#include "latslice/body/body.hpp"
#include "latslice/lattice/lattice.hpp"

namespace latslice {

// ---- support and gauge ----

inline Rational support(const Polytope& p, const QVector& u) {
  if (p.is_empty()) throw std::invalid_argument("support of an empty polytope");
  Rational best = dot(p.vertices()[0], u);
  for (const auto& v : p.vertices()) {
    Rational s = dot(v, u);
    if (s > best) best = s;
  }
  return best;
}

namespace detail {
/// (c.u, level * u^T G^{-1} u): the support is first + sqrt(second).
inline std::pair<Rational, Rational> ellipsoid_support_parts(const Ellipsoid& e, const QVector& u) {
  QMatrix ginv = inverse_or_throw(e.shape());
  return {dot(e.center(), u), Rational(e.level() * dot(u, ginv * u))};
}
}  // namespace detail

/// Exact support for polytopes; for ellipsoids the ceiling of the support, an upper envelope.
inline Rational support(const Body& k, const QVector& u) {
  if (k.is_polytope()) return support(k.polytope(), u);
  const auto& e = k.ellipsoid();
  if (e.is_empty()) throw std::invalid_argument("support of an empty ellipsoid");
  auto [a, q] = detail::ellipsoid_support_parts(e, u);
  return Rational(ceil_add_sqrt(a, q));
}

/// floor(h_K(u)), exact for both kinds of body.
inline Integer support_floor(const Body& k, const QVector& u) {
  if (k.is_polytope()) return floor(support(k.polytope(), u));
  const auto& e = k.ellipsoid();
  if (e.is_empty()) throw std::invalid_argument("support of an empty ellipsoid");
  auto [a, q] = detail::ellipsoid_support_parts(e, u);
  return floor_add_sqrt(a, q);
}

/// Exact test h_K(u) <= h.
inline bool support_at_most(const Body& k, const QVector& u, const Rational& h) {
  if (k.is_polytope()) return support(k.polytope(), u) <= h;
  auto [a, q] = detail::ellipsoid_support_parts(k.ellipsoid(), u);
  Rational d = h - a;
  return d >= 0 && q <= d * d;
}

/// Gauge |x|_K of a polytope with the origin in its interior.
inline Rational gauge(const Polytope& p, const QVector& x) {
  if (!p.origin_interior()) throw std::invalid_argument("gauge needs the origin in the interior of the body");
  Rational best = 0;
  for (const auto& f : p.facets()) {
    Rational r = dot(f.normal, x) / f.offset;
    if (r > best) best = r;
  }
  return best;
}

/// Squared gauge of an ellipsoid centred at the origin.
inline Rational gauge_sq(const Ellipsoid& e, const QVector& x) {
  if (!e.centered() || e.level() <= 0) throw std::invalid_argument("gauge_sq needs a centred ellipsoid with interior");
  return e.form(x) / e.level();
}

// ---- constructions ----

inline Body polar(const Body& k) {
  if (k.is_polytope()) {
    const auto& p = k.polytope();
    if (!p.origin_interior()) throw std::invalid_argument("polar needs the origin in the interior of the body");
    std::vector<QVector> pts;
    for (const auto& f : p.facets()) pts.push_back(scale(f.normal, Rational(1 / f.offset)));
    return Body::from_vertices(p.ambient_dim(), std::move(pts));
  }
  const auto& e = k.ellipsoid();
  if (!e.centered() || e.level() <= 0) throw std::invalid_argument("polar needs a centred ellipsoid with interior");
  return Body(Ellipsoid(inverse_or_throw(e.shape()), e.center(), Rational(1 / e.level())));
}

inline Body difference_body(const Body& k) {
  if (k.is_polytope()) {
    const auto& p = k.polytope();
    if (p.is_empty()) return k;
    std::vector<QVector> pts;
    for (const auto& a : p.vertices())
      for (const auto& b : p.vertices()) pts.push_back(sub(a, b));
    return Body::from_vertices(p.ambient_dim(), std::move(pts));
  }
  throw std::invalid_argument("difference body is only available for polytopes");
}

/// Image under x -> A x + t. Ellipsoids need an invertible A.
inline Body linear_image(const Body& k, const QMatrix& a, const QVector& t) {
  if (k.is_polytope()) return Body(k.polytope().affine_image(a, t));
  const auto& e = k.ellipsoid();
  QMatrix ainv = inverse_or_throw(a);
  QMatrix g = ainv.transpose() * e.shape() * ainv;
  return Body(Ellipsoid(g, add(a * e.center(), t), e.level()));
}

inline Body linear_image(const Body& k, const QMatrix& a) { return linear_image(k, a, QVector(a.rows(), Rational(0))); }

inline Body scaled(const Body& k, const Rational& s) {
  QMatrix a = QMatrix::identity(k.ambient_dim());
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) = s;
  if (s == 0) {
    if (k.is_empty()) return k;
    return Body::from_vertices(k.ambient_dim(), {QVector(k.ambient_dim(), Rational(0))});
  }
  return linear_image(k, a);
}

inline Body translated(const Body& k, const QVector& t) { return linear_image(k, QMatrix::identity(k.ambient_dim()), t); }

namespace detail {

/// Points of conv(points) on {a.x = beta}: points on it plus edge crossings of all pairs.
inline std::vector<QVector> cut_points(const std::vector<QVector>& points, const QVector& a, const Rational& beta) {
  std::vector<QVector> out;
  std::vector<Rational> side;
  for (const auto& p : points) side.push_back(dot(a, p) - beta);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (side[i] == 0) out.push_back(points[i]);
    if (side[i] <= 0) continue;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (side[j] >= 0) continue;
      Rational lam = side[i] / (side[i] - side[j]);
      out.push_back(add(points[i], scale(sub(points[j], points[i]), lam)));
    }
  }
  return out;
}

}  // namespace detail

/// {y in Q^k : t + L y in K} for an n x k matrix L of full column rank.
inline Body restrict_to_frame(const Body& k, const QVector& t, const QMatrix& l) {
  const std::size_t n = k.ambient_dim(), dim = l.cols();
  if (l.rows() != n || t.size() != n) throw std::invalid_argument("restrict_to_frame: shape mismatch");
  if (k.is_ellipsoid()) {
    const auto& e = k.ellipsoid();
    QMatrix gl = e.shape() * l;
    QMatrix g2 = l.transpose() * gl;
    QVector w0 = sub(t, e.center());
    QVector lin = gl.transpose() * w0;  // L^T G w0
    QVector ystar = negate(inverse_or_throw(g2) * lin);
    Rational minval = dot(w0, e.shape() * w0) - dot(ystar, g2 * ystar);
    return Body(Ellipsoid(g2, ystar, Rational(e.level() - minval)));
  }
  const auto& p = k.polytope();
  if (p.is_empty()) return Body(Polytope::empty(dim));
  QMatrix linv = left_inverse(l);
  std::vector<QVector> pts = p.vertices();
  if (dim < n) {
    for (const auto& a : nullspace(l.transpose())) {
      pts = detail::cut_points(pts, a, dot(a, t));
      if (pts.empty()) return Body(Polytope::empty(dim));
      pts = Polytope::from_vertices(n, std::move(pts)).vertices();
    }
  }
  std::vector<QVector> local;
  for (const auto& x : pts) local.push_back(linv * sub(x, t));
  return Body::from_vertices(dim, std::move(local));
}

struct SliceResult {
  Body body;               // in frame coordinates: x = shift + frame * y
  QVector shift;
  QMatrix frame;           // basis of Z^n on the normal's orthogonal complement
  ZVector normal;          // primitive normal actually used
  Integer level;           // level for the primitive normal
  bool normalized = false; // the input normal had content > 1
  bool lattice_free = false;
};

/// K intersected with {x : <b, x> = j}, in coordinates of the lattice Z^n on that hyperplane.
inline SliceResult slice(const Body& k, const ZVector& b, const Integer& j) {
  const std::size_t n = k.ambient_dim();
  if (b.size() != n) throw std::invalid_argument("slice: normal has wrong dimension");
  Integer g = content(b);
  if (g == 0) throw std::invalid_argument("slice: zero normal");
  ZVector bp(b);
  for (auto& x : bp) x /= g;
  ZMatrix row = ZMatrix::from_rows({bp});
  ColumnHnf f = column_hnf(row);
  ZMatrix kern(n, n - 1);
  for (std::size_t c = 1; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) kern(i, c - 1) = f.u(i, c);
  QMatrix frame = n > 1 ? to_rational(hnf_basis(kern)) : QMatrix(n, 0);
  SliceResult out{Body(Polytope::empty(n - 1)), QVector(n, Rational(0)), frame, bp, Integer(0), g > 1, false};
  if (j % g != 0) {
    out.lattice_free = true;
    out.level = j;
    return out;
  }
  out.level = j / g;
  // b' . u_0 = 1 for the first column of the unimodular transform
  for (std::size_t i = 0; i < n; ++i) out.shift[i] = Rational(out.level * f.u(i, 0));
  out.body = restrict_to_frame(k, out.shift, frame);
  return out;
}

struct ProjectionResult {
  Body body;       // coordinates in the basis of `lattice`
  Lattice lattice; // orthogonal projection of Z^n onto v^perp
};

/// Orthogonal projection of a polytope onto v^perp, expressed in the projected lattice basis.
inline ProjectionResult project(const Body& k, const ZVector& v) {
  const auto& p = k.polytope();
  const std::size_t n = p.ambient_dim();
  QVector vq = to_rational(v);
  Lattice pl = projected_lattice(Lattice::integer(n), vq);
  QMatrix linv = left_inverse(pl.basis());
  if (p.is_empty()) return {Body(Polytope::empty(n - 1)), pl};
  Rational vv = dot(vq, vq);
  std::vector<QVector> pts;
  for (const auto& x : p.vertices()) {
    QVector perp = sub(x, scale(vq, Rational(dot(vq, x) / vv)));
    pts.push_back(linv * perp);
  }
  return {Body::from_vertices(n - 1, std::move(pts)), pl};
}

// ---- volume ----

namespace detail {

/// Simplices (as vertex lists) of a pulling triangulation of a polytope.
inline std::vector<std::vector<QVector>> triangulate(const Polytope& p) {
  if (p.is_empty()) return {};
  if (p.intrinsic_dim() == 0) return {{p.vertices()[0]}};
  const QVector& apex = p.vertices()[0];
  std::vector<std::vector<QVector>> out;
  for (const auto& f : p.facets()) {
    if (dot(f.normal, apex) == f.offset) continue;
    std::vector<QVector> face;
    for (const auto& v : p.vertices())
      if (dot(f.normal, v) == f.offset) face.push_back(v);
    for (auto& s : triangulate(Polytope::from_vertices(p.ambient_dim(), face))) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

struct LocalFrame {
  QVector origin;
  QMatrix dirs;  // n x d
  Polytope local;
};

inline LocalFrame local_frame(const Polytope& p) {
  const std::size_t n = p.ambient_dim();
  const QVector& o = p.vertices()[0];
  std::vector<QVector> dirs;
  IncrementalSpan span(n);
  for (const auto& v : p.vertices())
    if (span.add(sub(v, o))) dirs.push_back(sub(v, o));
  const std::size_t d = dirs.size();
  QMatrix dm = QMatrix::from_columns(dirs, n);
  std::vector<QVector> local;
  if (d == 0) {
    local.push_back(QVector{});
  } else {
    QMatrix linv = left_inverse(dm);
    for (const auto& v : p.vertices()) local.push_back(linv * sub(v, o));
  }
  return {o, dm, Polytope::from_vertices(d, local)};
}

inline Rational full_dim_volume(const Polytope& p) {
  const std::size_t d = p.ambient_dim();
  Rational total = 0;
  for (const auto& s : triangulate(p)) {
    QMatrix m(d, d);
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(j, i - 1) = s[i][j] - s[0][j];
    Rational det = determinant(m);
    total += det < 0 ? Rational(-det) : det;
  }
  return total / Rational(factorial(d));
}

}  // namespace detail

/// n-dimensional volume; zero for bodies that are not full-dimensional.
inline Rational volume(const Polytope& p) {
  if (!p.full_dimensional()) return 0;
  return detail::full_dim_volume(p);
}

/// Square of the intrinsic (relative) volume.
inline Rational volume_sq_intrinsic(const Polytope& p) {
  if (p.is_empty()) return 0;
  if (p.intrinsic_dim() == 0) return 1;
  auto fr = detail::local_frame(p);
  Rational v = detail::full_dim_volume(fr.local);
  return v * v * determinant(fr.dirs.transpose() * fr.dirs);
}

inline QVector centroid(const Polytope& p) {
  if (p.is_empty()) throw std::invalid_argument("centroid of an empty polytope");
  if (p.intrinsic_dim() == 0) return p.vertices()[0];
  auto fr = detail::local_frame(p);
  const std::size_t d = fr.dirs.cols();
  QVector acc(d, Rational(0));
  Rational total = 0;
  for (const auto& s : detail::triangulate(fr.local)) {
    QMatrix m(d, d);
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(j, i - 1) = s[i][j] - s[0][j];
    Rational w = determinant(m);
    if (w < 0) w = -w;
    QVector avg(d, Rational(0));
    for (const auto& v : s) avg = add(avg, v);
    acc = add(acc, scale(avg, Rational(w / Rational(static_cast<long>(d + 1)))));
    total += w;
  }
  return add(fr.origin, fr.dirs * scale(acc, Rational(1 / total)));
}

}  // namespace latslice
