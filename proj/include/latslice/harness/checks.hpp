#pragma once

#include "latslice/harness/families.hpp"
#include "latslice/harness/report.hpp"
#include "latslice/lattice/minima.hpp"

namespace latslice {

namespace detail {

inline ZVector unit_z(std::size_t n, std::size_t i) {
  ZVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

inline std::vector<Integer> coordinate_sections(const Body& k) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < k.ambient_dim(); ++i) out.push_back(count_section(k, unit_z(k.ambient_dim(), i), 0));
  return out;
}

inline Integer product(const std::vector<Integer>& xs) {
  Integer p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

inline Json integer_list(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

inline Integer pow_z(long base, long e) { return ipow(Integer(base), static_cast<unsigned long>(e)); }

inline Integer fact(long n) { return factorial(static_cast<unsigned long>(n)); }

inline bool is_symmetric(const Body& k) { return k.symmetry().origin_symmetric; }

inline Integer count_in(const Body& k, const Lattice& l) {
  return count(k, AffineLattice{l, QVector(k.ambient_dim(), Rational(0))}).count;
}

}  // namespace detail

/// #(K)^{n-1} <= prod #(K|e_i^perp), projections counted in the projected lattice.
inline CheckReport check_discrete_lw(const Body& k) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!k.is_polytope()) return inapplicable("discrete_lw", "projections are computed for polytopes only");
  if (n < 2) return inapplicable("discrete_lw", "needs n >= 2");
  Integer total = count_points(k);
  std::vector<Integer> proj;
  for (long i = 0; i < n; ++i) proj.push_back(count_projection(k, detail::unit_z(n, i)));
  CheckReport r = inequality("discrete_lw", ipow(total, n - 1), "<=", detail::product(proj), "1");
  r.witnesses["count"] = to_string(total);
  r.witnesses["projection_counts"] = detail::integer_list(proj);
  r.finish();
  return r;
}

/// #(K)^{n-1} 4^{n(n-1)} > prod #(K cap e_i^perp); in the plane also 3 #(K) > #(K cap e1^perp) #(K cap e2^perp).
inline CheckReport check_discrete_meyer(const Body& k) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!detail::is_symmetric(k)) return inapplicable("discrete_meyer", "body is not origin-symmetric");
  if (n < 2) return inapplicable("discrete_meyer", "needs n >= 2");
  Integer total = count_points(k);
  std::vector<Integer> sec = detail::coordinate_sections(k);
  Integer prod = detail::product(sec);
  Integer pw = ipow(total, n - 1);
  CheckReport r = inequality("discrete_meyer", pw * detail::pow_z(4, n * (n - 1)), ">", prod, "4^(n(n-1))");
  r.witnesses["count"] = to_string(total);
  r.witnesses["section_counts"] = detail::integer_list(sec);
  r.add_diagnostic("section_product_over_count_power", make_rational(prod, pw));
  r.add_diagnostic("count_power_over_section_product", make_rational(pw, prod));
  r.add_diagnostic("conjectured_limit", Rational(detail::pow_z(3, n - 1)));
  if (n == 2) {
    CheckReport plane = inequality("discrete_meyer_plane", 3 * total, ">", prod, "3");
    r.parts.push_back(plane);
  }
  r.finish();
  return r;
}

/// Counts of T_k and the collapse of #(T_k)^{n-1} / prod #(T_k cap e_i^perp) in k.
inline CheckReport check_simplex_counterexample(long k, long n = 3) {
  if (k < 1 || n < 3) return inapplicable("simplex", "needs k >= 1 and n >= 3");
  auto ratio_at = [&](long kk, Integer& total, std::vector<Integer>& sec) {
    Body t = simplex_T(n, kk);
    total = count_points(t);
    sec = detail::coordinate_sections(t);
    return make_rational(ipow(total, n - 1), detail::product(sec));
  };
  Integer c0, c1;
  std::vector<Integer> s0, s1;
  Rational r0 = ratio_at(k, c0, s0);
  Rational r1 = ratio_at(k + 1, c1, s1);
  CheckReport r = inequality("simplex", r1, "<", r0);
  r.witnesses["count"] = to_string(c0);
  r.witnesses["section_counts"] = detail::integer_list(s0);
  r.add_diagnostic("ratio_at_k", r0);
  r.add_diagnostic("ratio_at_k_plus_1", r1);
  if (n == 3) {
    r.parts.push_back(inequality("simplex_count", c0, "==", Rational(2 * (k + 1))));
    r.parts.push_back(inequality("simplex_section_e1", s0[0], "==", Rational(k + 1)));
    r.parts.push_back(inequality("simplex_section_e2", s0[1], "==", Rational(k + 2)));
    r.parts.push_back(inequality("simplex_section_e3", s0[2], "==", Rational(k + 2)));
    // #^2 / prod <= 4 / (k + 1), so no fixed constant survives large k
    r.parts.push_back(inequality("simplex_decay", Rational(c0 * c0 * (k + 1)), "<=", Rational(4 * detail::product(s0)),
                                 "4/(k+1)"));
  }
  r.finish();
  return r;
}

/// #(K cap (t + L)) <= 2^k #(K cap L) for the lattice subspace L spanned by integer vectors.
inline CheckReport check_brunn(const Body& k, const std::vector<ZVector>& spanning, const ZVector& t) {
  const std::size_t n = k.ambient_dim();
  if (!detail::is_symmetric(k)) return inapplicable("brunn", "body is not origin-symmetric");
  if (t.size() != n) throw std::invalid_argument("brunn: translate has the wrong dimension");
  std::vector<QVector> span;
  for (const auto& v : spanning) {
    if (v.size() != n) throw std::invalid_argument("brunn: spanning vector has the wrong dimension");
    span.push_back(to_rational(v));
  }
  const long dim = static_cast<long>(rank_of(span, n));
  if (dim >= static_cast<long>(n)) return inapplicable("brunn", "subspace must be proper");
  Integer shifted, central;
  if (dim == 0) {
    shifted = k.contains(to_rational(t)) ? 1 : 0;
    central = 1;
  } else {
    Lattice sub = primitive_sublattice(Lattice::integer(n), span);
    shifted = count(k, AffineLattice{sub, to_rational(t)}).count;
    central = count(k, AffineLattice{sub, QVector(n, Rational(0))}).count;
  }
  CheckReport r = inequality("brunn", shifted, "<=", detail::pow_z(2, dim) * central, "2^k");
  r.witnesses["subspace_dim"] = dim;
  r.witnesses["translate"] = to_json(t);
  r.witnesses["shifted_count"] = to_string(shifted);
  r.witnesses["central_count"] = to_string(central);
  r.finish();
  return r;
}

struct ReverseMeyerResult {
  std::vector<QVector> basis;       // basis of the polar lattice
  std::vector<QVector> translates;  // lattice points t_i
  std::vector<Integer> section_counts;
  std::vector<Integer> central_counts;
  CheckReport report;
};

namespace detail {

struct LocalConstruction {
  std::vector<ZVector> normals;  // integer functionals on Z^m
  std::vector<ZVector> shifts;   // points of Z^m
};

/// The induction of the reverse inequality in lattice coordinates: symmetric body in R^m.
inline LocalConstruction construct_reverse_meyer(const Body& k) {
  const std::size_t m = k.ambient_dim();
  LocalConstruction out;
  if (m == 1) {
    out.normals.push_back(ZVector{1});
    out.shifts.push_back(ZVector{0});
    return out;
  }
  if (lattice_span_dim(k) == m) {
    Body pk = polar(k);
    MahlerBasis mb = mahler_basis(pk, Lattice::integer(m));
    for (const auto& c : mb.coords) {
      SectionScan s = max_section_over_levels(k, c);
      SliceResult sl = slice(k, c, s.best_level);
      out.normals.push_back(c);
      out.shifts.push_back(*to_integer(sl.shift));
    }
    return out;
  }
  // every lattice point lies in a hyperplane p^perp; recurse there
  std::vector<ZVector> rows;
  for (const auto& x : lattice_points(k))
    if (!is_zero(to_rational(x))) rows.push_back(x);
  ZMatrix pts = rows.empty() ? ZMatrix(1, m) : ZMatrix::from_rows(rows);
  ZVector p = integer_kernel(pts).col(0);
  ZMatrix g = integer_kernel(ZMatrix::from_rows({p}));
  LocalConstruction sub = construct_reverse_meyer(restrict_to_frame(k, QVector(m, Rational(0)), to_rational(g)));
  ZMatrix v = unimodular_completion(g);
  QMatrix vit = inverse_or_throw(to_rational(v)).transpose();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    QVector c = to_rational(sub.normals[i]);
    c.push_back(0);
    out.normals.push_back(*to_integer(vit * c));
    out.shifts.push_back(g * sub.shifts[i]);
  }
  out.normals.push_back(p);
  out.shifts.push_back(ZVector(m, Integer(0)));
  return out;
}

}  // namespace detail

/// Runs the inductive construction for a symmetric body and lattice and checks
/// #(K)^{n-1} <= (n!)^2 4^n prod #(K cap (t_i + b_i^perp)) and its homogeneous form.
inline ReverseMeyerResult reverse_meyer_construct(const Body& k, const Lattice& l) {
  const long n = static_cast<long>(k.ambient_dim());
  ReverseMeyerResult res;
  if (!detail::is_symmetric(k)) {
    res.report = inapplicable("reverse_meyer", "body is not origin-symmetric");
    return res;
  }
  if (!k.is_polytope()) {
    res.report = inapplicable("reverse_meyer", "construction needs a polytope (polar body and minima)");
    return res;
  }
  if (!l.full_rank() || static_cast<long>(l.ambient_dim()) != n)
    throw std::invalid_argument("reverse_meyer: lattice must be full rank in the body's dimension");
  Body local = detail::to_lattice_coordinates(k, AffineLattice{l, QVector(n, Rational(0))});
  detail::LocalConstruction lc = detail::construct_reverse_meyer(local);
  QMatrix bit = inverse_or_throw(l.basis()).transpose();
  Integer total = count_points(local);
  for (long i = 0; i < n; ++i) {
    const ZVector& c = lc.normals[i];
    res.basis.push_back(bit * to_rational(c));
    res.translates.push_back(l.point(lc.shifts[i]));
    res.section_counts.push_back(count_section(local, c, dot(c, lc.shifts[i])));
    res.central_counts.push_back(count_section(local, c, 0));
  }
  Integer coeff = detail::fact(n) * detail::fact(n) * detail::pow_z(4, n);
  Integer lhs = ipow(total, n - 1);
  CheckReport r = inequality("reverse_meyer", lhs, "<=", coeff * detail::product(res.section_counts), "(n!)^2 4^n");
  r.parts.push_back(inequality("reverse_meyer_homogeneous", lhs, "<=",
                               coeff * detail::pow_z(2, n * (n - 1)) * detail::product(res.central_counts),
                               "(n!)^2 4^n 2^(n(n-1))"));
  Rational det_b = determinant(QMatrix::from_columns(res.basis, static_cast<std::size_t>(n)));
  if (det_b < 0) det_b = -det_b;
  r.parts.push_back(inequality("reverse_meyer_basis_det", det_b, "==", polar_lattice(l).det()));
  for (long i = 0; i < n; ++i)
    r.parts.push_back(inequality("reverse_meyer_brunn", res.section_counts[i], "<=",
                                 detail::pow_z(2, n - 1) * res.central_counts[i], "2^(n-1)"));
  r.witnesses["count"] = to_string(total);
  r.witnesses["basis"] = to_json_list(res.basis);
  r.witnesses["translates"] = to_json_list(res.translates);
  r.witnesses["section_counts"] = detail::integer_list(res.section_counts);
  r.witnesses["central_counts"] = detail::integer_list(res.central_counts);
  r.witnesses["lower_dimensional"] = lattice_span_dim(local) < static_cast<std::size_t>(n);
  r.add_diagnostic("count_power_over_section_product",
                   make_rational(lhs, std::max(Integer(1), detail::product(res.section_counts))));
  r.finish();
  res.report = r;
  return res;
}

inline ReverseMeyerResult reverse_meyer_construct(const Body& k) {
  return reverse_meyer_construct(k, Lattice::integer(k.ambient_dim()));
}

/// #(K)^{n-1} <= 16^n n! (n+1)^n max^n, and (n!)^2 4^n max^n for symmetric K, where max
/// is the largest lattice hyperplane section found with normals bounded by `normal_bound`.
inline CheckReport check_slicing(const Body& k, long normal_bound = 3) {
  const long n = static_cast<long>(k.ambient_dim());
  if (n < 2) return inapplicable("slicing", "needs n >= 2");
  if (lattice_affine_dim(k) < n) return inapplicable("slicing", "lattice points of K are not full-dimensional");
  Integer total = count_points(k);
  GlobalSection g = max_section_global(k, normal_bound);
  Integer maxn = ipow(g.count, n);
  Integer lhs = ipow(total, n - 1);
  CheckReport r = inequality("slicing", lhs, "<=",
                             detail::pow_z(16, n) * detail::fact(n) * detail::pow_z(n + 1, n) * maxn,
                             "16^n n! (n+1)^n");
  if (detail::is_symmetric(k))
    r.parts.push_back(inequality("slicing_symmetric", lhs, "<=", detail::fact(n) * detail::fact(n) * detail::pow_z(4, n) * maxn,
                                 "(n!)^2 4^n"));
  r.witnesses["count"] = to_string(total);
  r.witnesses["normal"] = to_json(g.normal);
  r.witnesses["level"] = to_string(g.level);
  r.witnesses["section_count"] = to_string(g.count);
  r.bounds["normal_bound"] = normal_bound;
  r.bounds["normals_scanned"] = g.normals_scanned;
  r.notes.push_back("maximum searched over primitive normals with entries in [-B, B] only");
  if (k.is_polytope()) {
    QVector c = centroid(k.polytope());
    QMatrix halve = QMatrix::identity(n);
    for (long i = 0; i < n; ++i) halve(i, i) = Rational(1, 2);
    Body half = linear_image(k, halve, scale(c, Rational(1, 2)));
    bool hit = count_points(half) > 0;
    r.witnesses["half_body_has_lattice_point"] = hit;
    if (!hit) r.notes.push_back("flatness branch not exercised");
  }
  r.add_diagnostic("count_power_over_max_power", make_rational(lhs, std::max(Integer(1), maxn)));
  r.finish();
  return r;
}

/// #(K|v^perp) <= 6 4^{n-1} |(K cap Z^n)|v^perp| for v in K cap Z^n \ {0}.
inline CheckReport check_preimages(const Body& k, const ZVector& v) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!detail::is_symmetric(k)) return inapplicable("preimages", "body is not origin-symmetric");
  if (!k.is_polytope()) return inapplicable("preimages", "projections are computed for polytopes only");
  if (is_zero(to_rational(v)) || !k.contains(to_rational(v)))
    return inapplicable("preimages", "direction must be a nonzero lattice point of K");
  Integer proj = count_projection(k, v);
  Integer pts = count_projected_points(k, v);
  CheckReport r = inequality("preimages", proj, "<=", 6 * detail::pow_z(4, n - 1) * pts, "6 4^(n-1)");
  r.witnesses["direction"] = to_json(v);
  r.witnesses["projection_count"] = to_string(proj);
  r.witnesses["projected_points"] = to_string(pts);
  r.finish();
  return r;
}

/// prod #(K|v_i^perp) <= (6 4^{n-1})^n 4^{n^2} (4/3)^n sqrt(3)^{n-1} #(K)^{n-1}, v_i the minima
/// witnesses; compared after squaring. Parts record each step of the chain.
inline CheckReport check_reverse_lw(const Body& k) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!detail::is_symmetric(k)) return inapplicable("reverse_lw", "body is not origin-symmetric");
  if (!k.is_polytope()) return inapplicable("reverse_lw", "projections are computed for polytopes only");
  if (n < 2) return inapplicable("reverse_lw", "needs n >= 2");
  if (!k.polytope().full_dimensional()) return inapplicable("reverse_lw", "body is not full-dimensional");
  MinimaProfile prof = successive_minima(k);
  if (prof.minima.back() > 1) return inapplicable("reverse_lw", "lambda_n > 1");
  Integer total = count_points(k);
  std::vector<Integer> proj, pts, mult;
  CheckReport r;
  for (long i = 0; i < n; ++i) {
    const ZVector& v = prof.witness_coords[i];
    proj.push_back(count_projection(k, v));
    pts.push_back(count_projected_points(k, v));
    mult.push_back(floor(Rational(2 / prof.minima[i])) + 1);
    r.parts.push_back(inequality("reverse_lw_preimages", proj.back(), "<=", 6 * detail::pow_z(4, n - 1) * pts.back(),
                                 "6 4^(n-1)"));
  }
  Integer pp = detail::product(proj), pz = detail::product(pts), pm = detail::product(mult);
  Integer three = detail::pow_z(3, n - 1);
  // 4^{n^2} (4/3)^n = 4^{n^2 + n} / 3^n
  Rational step = make_rational(detail::pow_z(4, n * n + n), detail::pow_z(3, n));
  Rational lemma = Rational(ipow(Integer(6 * detail::pow_z(4, n - 1)), n));
  Rational c = lemma * step;
  Integer zpow = ipow(total, 2 * (n - 1));
  r.check_id = "reverse_lw";
  r.relation = "<=";
  r.lhs = pp * pp;
  r.rhs = c * c * three * zpow;
  r.constant = "(6 4^(n-1))^n 4^(n^2) (4/3)^n sqrt(3)^(n-1), squared";
  r.parts.push_back(inequality("reverse_lw_projected_points", Rational(pz * pz), "<=", step * step * three * zpow,
                               "4^(n^2) (4/3)^n sqrt(3)^(n-1), squared"));
  r.parts.push_back(inequality("reverse_lw_sumset", Rational(pm * pz), "<=", step * ipow(total, n), "4^(n^2) (4/3)^n"));
  r.parts.push_back(inequality("reverse_lw_malikiosis", Rational(total * total), "<=", Rational(three * pm * pm), "3^(n-1)"));
  r.witnesses["count"] = to_string(total);
  r.witnesses["directions"] = to_json_list(prof.witness_coords);
  r.witnesses["minima"] = to_json_list(prof.minima);
  r.witnesses["projection_counts"] = detail::integer_list(proj);
  r.witnesses["projected_points"] = detail::integer_list(pts);
  r.add_diagnostic("projection_product_over_count_power", make_rational(pp, ipow(total, n - 1)));
  r.finish();
  return r;
}

/// #(A K + t) <= 2^{n-1} |det A| (#(K) + 1) for symmetric K and regular integer A.
inline CheckReport check_affine_image(const Body& k, const ZMatrix& a, const QVector& t) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!detail::is_symmetric(k)) return inapplicable("affine_image", "body is not origin-symmetric");
  Integer det = determinant(a);
  if (det == 0) return inapplicable("affine_image", "matrix is singular");
  if (det < 0) det = -det;
  Integer image = count_points(linear_image(k, to_rational(a), t));
  Integer total = count_points(k);
  CheckReport r = inequality("affine_image", image, "<=", detail::pow_z(2, n - 1) * det * (total + 1), "2^(n-1)");
  r.witnesses["translate"] = to_json(t);
  r.witnesses["abs_det"] = to_string(det);
  r.witnesses["count"] = to_string(total);
  r.witnesses["image_count"] = to_string(image);
  if (total > 0) r.add_diagnostic("count_ratio", make_rational(image, total));
  if (a == ZMatrix::identity(n) && n >= 2)
    r.add_diagnostic("conjectured_translation_bound", Rational(detail::pow_z(2, n - 2)));
  r.finish();
  return r;
}

inline CheckReport check_translation(const Body& k, const QVector& t) {
  return check_affine_image(k, ZMatrix::identity(k.ambient_dim()), t);
}

/// |A + B| >= |A| + |B| - 1 for finite integer point sets.
inline CheckReport check_sumset(const std::vector<ZVector>& a, const std::vector<ZVector>& b) {
  std::set<ZVector> sa(a.begin(), a.end()), sb(b.begin(), b.end()), sum;
  if (sa.empty() || sb.empty()) return inapplicable("sumset", "sets must be nonempty");
  for (const auto& x : sa)
    for (const auto& y : sb) {
      ZVector s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
      sum.insert(std::move(s));
    }
  long lhs = static_cast<long>(sum.size());
  CheckReport r = inequality("sumset", Rational(lhs), ">=", Rational(static_cast<long>(sa.size() + sb.size()) - 1));
  r.witnesses["sizes"] = {sa.size(), sb.size(), sum.size()};
  r.finish();
  return r;
}

/// #(mK) <= (2m-1)^n #(K) for unconditional K.
inline CheckReport check_unconditional_dilate(const Body& k, long m) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!k.symmetry().unconditional) return inapplicable("unconditional_dilate", "body is not unconditional");
  if (m < 1) return inapplicable("unconditional_dilate", "needs m >= 1");
  Integer dil = count_points(scaled(k, m));
  Integer total = count_points(k);
  CheckReport r = inequality("unconditional_dilate", dil, "<=", detail::pow_z(2 * m - 1, n) * total, "(2m-1)^n");
  r.witnesses["m"] = m;
  r.witnesses["count"] = to_string(total);
  r.witnesses["dilate_count"] = to_string(dil);
  r.finish();
  return r;
}

/// #(K)^{n-1} 3^{n(n-1)} >= prod #(K cap e_i^perp) for unconditional K.
inline CheckReport check_unconditional_meyer(const Body& k) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!k.symmetry().unconditional) return inapplicable("unconditional_meyer", "body is not unconditional");
  if (n < 2) return inapplicable("unconditional_meyer", "needs n >= 2");
  Integer total = count_points(k);
  std::vector<Integer> sec = detail::coordinate_sections(k);
  Integer pw = ipow(total, n - 1);
  Integer prod = detail::product(sec);
  CheckReport r = inequality("unconditional_meyer", pw * detail::pow_z(3, n * (n - 1)), ">=", prod, "3^(n(n-1))");
  r.witnesses["count"] = to_string(total);
  r.witnesses["section_counts"] = detail::integer_list(sec);
  r.add_diagnostic("section_product_over_count_power", make_rational(prod, pw));
  r.finish();
  return r;
}

/// Classical bounds of the geometry of numbers on one symmetric polytope and lattice.
inline CheckReport check_toolbox(const Body& k, const Lattice& l) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!detail::is_symmetric(k)) return inapplicable("toolbox", "body is not origin-symmetric");
  if (!k.is_polytope()) return inapplicable("toolbox", "volumes are computed for polytopes only");
  if (!k.polytope().full_dimensional()) return inapplicable("toolbox", "body is not full-dimensional");
  const Rational vol = volume(k.polytope());
  const Rational det = l.det();
  MinimaProfile prof = successive_minima(k, l);
  Rational lam = 1;
  Integer mult = 1;
  for (const auto& x : prof.minima) {
    lam *= x;
    mult *= floor(Rational(2 / x)) + 1;
  }
  Body local = detail::to_lattice_coordinates(k, AffineLattice{l, QVector(n, Rational(0))});
  Integer total = count_points(local);
  Rational nf = Rational(detail::fact(n));
  CheckReport r;
  r.check_id = "toolbox";
  r.parts.push_back(inequality("minkowski_lower", Rational(detail::pow_z(2, n)) / nf * det, "<=", lam * vol, "2^n/n!"));
  r.parts.push_back(inequality("minkowski_upper", lam * vol, "<=", Rational(detail::pow_z(2, n)) * det, "2^n"));
  r.parts.push_back(
      inequality("malikiosis", Rational(total * total), "<=", Rational(detail::pow_z(3, n - 1) * mult * mult), "3^(n-1), squared"));
  r.parts.push_back(
      inequality("van_der_corput", vol, "<=", Rational(detail::pow_z(2, n - 1) * (total + 1)) * det, "2^(n-1)"));
  if (lattice_affine_dim(local) == n)
    r.parts.push_back(inequality("blichfeldt", vol, ">=", Rational(total - n) / nf * det, "1/n!"));
  else
    r.parts.push_back(inapplicable("blichfeldt", "lattice points of K are not full-dimensional"));
  Body pk = polar(k);
  MinimaProfile dual = successive_minima(pk, polar_lattice(l));
  Rational worst = dual.minima[0] * prof.minima[n - 1];
  for (long i = 0; i < n; ++i) worst = std::min(worst, Rational(dual.minima[i] * prof.minima[n - 1 - i]));
  r.parts.push_back(inequality("polar_minima", worst, ">=", Rational(1)));
  r.parts.push_back(inequality("mahler_volume", vol * volume(pk.polytope()), ">=",
                               Rational(detail::pow_z(3, n)) / nf, "3^n/n!"));
  MahlerBasis mb = mahler_basis(k, l, prof);
  Rational worst_gauge = 0;
  for (long i = 0; i < n; ++i)
    worst_gauge = std::max(worst_gauge, Rational(mb.gauge_values[i] / (mahler_factor(i + 1) * prof.minima[i])));
  r.parts.push_back(inequality("mahler_basis", worst_gauge, "<=", Rational(1), "max{1,i/2}"));
  r.witnesses["count"] = to_string(total);
  r.witnesses["volume"] = to_string(vol);
  r.witnesses["minima"] = to_json_list(prof.minima);
  r.witnesses["polar_minima"] = to_json_list(dual.minima);
  r.witnesses["mahler_basis"] = to_json_list(mb.vectors);
  r.finish();
  return r;
}

inline CheckReport check_toolbox(const Body& k) { return check_toolbox(k, Lattice::integer(k.ambient_dim())); }

/// |#(rK)/r^n - vol K| shrinks from the smallest to the largest r and lies within
/// band * vol(K) / r_max at the largest r.
inline CheckReport check_vol_approx(const Body& k, std::vector<long> rs, const Rational& band = 0) {
  const long n = static_cast<long>(k.ambient_dim());
  if (!k.is_polytope()) return inapplicable("vol_approx", "exact volume needs a polytope");
  if (!k.polytope().full_dimensional()) return inapplicable("vol_approx", "body is not full-dimensional");
  if (rs.empty()) return inapplicable("vol_approx", "no dilation factors");
  std::sort(rs.begin(), rs.end());
  if (rs.front() < 1) throw std::invalid_argument("vol_approx: dilation factors must be positive");
  const Rational factor = band == 0 ? Rational(2 * n + 1) : band;
  const Rational vol = volume(k.polytope());
  std::vector<Rational> errs;
  Json rows = Json::array();
  for (long r : rs) {
    Integer c = count_points(scaled(k, r));
    Rational e = Rational(make_rational(c, detail::pow_z(r, n)) - vol);
    if (e < 0) e = -e;
    errs.push_back(e);
    rows.push_back({{"r", r}, {"count", to_string(c)}, {"error", to_string(e)}, {"error_approx", e.get_d()}});
  }
  CheckReport r = inequality("vol_approx", errs.back(), "<=", vol * factor / rs.back(), "band*vol/r_max");
  r.parts.push_back(inequality("vol_approx_decreasing", errs.back(), "<=", errs.front()));
  r.witnesses["volume"] = to_string(vol);
  r.witnesses["rows"] = rows;
  r.bounds["band_factor"] = to_string(factor);
  r.finish();
  return r;
}

/// #(P + t) <= #(P) for a lattice polygon P.
inline CheckReport check_wills(const Body& p, const QVector& t) {
  if (p.ambient_dim() != 2 || !p.is_polytope()) return inapplicable("wills", "needs a polygon in the plane");
  for (const auto& v : p.polytope().vertices())
    if (!to_integer(v)) return inapplicable("wills", "polygon is not a lattice polygon");
  Integer shifted = count_points(translated(p, t));
  Integer total = count_points(p);
  CheckReport r = inequality("wills", shifted, "<=", total);
  r.witnesses["translate"] = to_json(t);
  r.finish();
  return r;
}

/// Ball radii scan for a user-supplied lattice: #(rB) against the largest lattice hyperplane
/// section found with bounded normals. Exploratory: the rows check only the symmetric
/// slicing bound, and the ratio trend is recorded.
inline CheckReport slicing_ratio_scan(const Lattice& l, const std::vector<long>& radii, long normal_bound = 3) {
  const long n = static_cast<long>(l.ambient_dim());
  if (!l.full_rank()) throw std::invalid_argument("slicing_ratio_scan: lattice must be full rank");
  CheckReport r;
  r.check_id = "slicing_scan";
  Json rows = Json::array();
  for (long rad : radii) {
    Body ball = Body::ball(static_cast<std::size_t>(n), Rational(rad * rad));
    Integer total = detail::count_in(ball, l);
    GlobalSection g = max_section_global(ball, normal_bound, &l);
    Integer lhs = ipow(total, n - 1), maxn = ipow(g.count, n);
    CheckReport row = inequality("slicing_scan_row", lhs, "<=",
                                 detail::fact(n) * detail::fact(n) * detail::pow_z(4, n) * maxn, "(n!)^2 4^n");
    row.witnesses["r"] = rad;
    row.witnesses["count"] = to_string(total);
    row.witnesses["normal"] = to_json(g.normal);
    row.witnesses["section_count"] = to_string(g.count);
    Rational ratio = make_rational(lhs, std::max(Integer(1), maxn));
    row.add_diagnostic("count_power_over_max_power", ratio);
    rows.push_back({{"r", rad}, {"count", to_string(total)}, {"max_section", to_string(g.count)},
                    {"ratio", to_string(ratio)}, {"ratio_approx", ratio.get_d()}});
    r.parts.push_back(row);
  }
  r.witnesses["lattice_basis"] = Json::array();
  for (std::size_t j = 0; j < l.basis().cols(); ++j) r.witnesses["lattice_basis"].push_back(to_json(l.basis().col(j)));
  r.diagnostics["trend"] = rows;
  r.bounds["normal_bound"] = normal_bound;
  r.notes.push_back("exploratory scan; no self-polar lattice construction and no asserted constant");
  r.finish();
  return r;
}

}  // namespace latslice
