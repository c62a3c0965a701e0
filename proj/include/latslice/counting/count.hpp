#pragma once

#include "latslice/body/operations.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace latslice {

struct CountOptions {
  std::size_t keep_points_below = 100000;
};

struct CountResult {
  Integer count = 0;
  /// Points in coordinates of the lattice used, lexicographically sorted.
  /// Present when the count does not exceed the threshold.
  std::optional<std::vector<ZVector>> points;
};

namespace detail {

struct IntRow {
  ZVector a;  // over the first i+1 coordinates
  Integer b;
};

inline IntRow integer_row(const HalfSpace& h) {
  Rational s = primitive_row_scale(h.normal, h.offset);
  IntRow r;
  for (const auto& x : h.normal) r.a.push_back(Integer(Rational(x * s).get_num()));
  r.b = Rational(h.offset * s).get_num();
  return r;
}

/// Walks Z^k inside a polytope of Q^k one coordinate at a time, bounding
/// coordinate i by the projection of the polytope onto the first i+1 coordinates.
class PolytopeWalker {
 public:
  explicit PolytopeWalker(const Polytope& p) : k_(p.ambient_dim()), empty_(p.is_empty()) {
    if (empty_ || k_ == 0) return;
    levels_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      Polytope proj = p;
      if (i + 1 < k_) {
        std::vector<QVector> pts;
        for (const auto& v : p.vertices()) pts.emplace_back(v.begin(), v.begin() + static_cast<long>(i + 1));
        proj = Polytope::from_vertices(i + 1, std::move(pts));
      }
      for (const auto& f : proj.facets())
        if (f.normal[i] != 0) levels_[i].ineq.push_back(integer_row(f));
      for (const auto& e : proj.equalities())
        if (e.normal[i] != 0) levels_[i].eq.push_back(integer_row(e));
    }
  }

  /// leaf(prefix, lo, hi): prefix holds the first k-1 coordinates, the last one ranges over [lo, hi].
  void walk(const std::function<void(const ZVector&, const Integer&, const Integer&)>& leaf) const {
    if (empty_) return;
    ZVector prefix(k_);
    if (k_ == 0) {
      leaf(prefix, Integer(0), Integer(-1));
      return;
    }
    rec(0, prefix, leaf);
  }

 private:
  struct Level {
    std::vector<IntRow> ineq;
    std::vector<IntRow> eq;
  };

  void rec(std::size_t i, ZVector& prefix,
           const std::function<void(const ZVector&, const Integer&, const Integer&)>& leaf) const {
    Integer lo, hi, rhs, q;
    bool has_lo = false, has_hi = false;
    auto residual = [&](const IntRow& r) {
      rhs = r.b;
      for (std::size_t j = 0; j < i; ++j)
        if (r.a[j] != 0) rhs -= r.a[j] * prefix[j];
    };
    for (const auto& r : levels_[i].eq) {
      residual(r);
      if (!mpz_divisible_p(rhs.get_mpz_t(), r.a[i].get_mpz_t())) return;
      mpz_divexact(q.get_mpz_t(), rhs.get_mpz_t(), r.a[i].get_mpz_t());
      if (!has_lo || q > lo) lo = q;
      if (!has_hi || q < hi) hi = q;
      has_lo = has_hi = true;
    }
    for (const auto& r : levels_[i].ineq) {
      residual(r);
      if (r.a[i] > 0) {
        mpz_fdiv_q(q.get_mpz_t(), rhs.get_mpz_t(), r.a[i].get_mpz_t());
        if (!has_hi || q < hi) hi = q;
        has_hi = true;
      } else {
        mpz_cdiv_q(q.get_mpz_t(), rhs.get_mpz_t(), r.a[i].get_mpz_t());
        if (!has_lo || q > lo) lo = q;
        has_lo = true;
      }
    }
    if (!has_lo || !has_hi) throw std::logic_error("lattice walk: unbounded coordinate");
    if (lo > hi) return;
    if (i + 1 == k_) {
      leaf(prefix, lo, hi);
      return;
    }
    for (Integer z = lo; z <= hi; ++z) {
      prefix[i] = z;
      rec(i + 1, prefix, leaf);
    }
  }

  std::size_t k_;
  bool empty_;
  std::vector<Level> levels_;
};

/// Fincke-Pohst style walk over Z^k inside {(y-c)^T G (y-c) <= level}.
inline void walk_ellipsoid(const Ellipsoid& e, const std::function<void(const ZVector&)>& visit) {
  const std::size_t k = e.ambient_dim();
  if (e.level() < 0) return;
  if (k == 0) {
    visit(ZVector{});
    return;
  }
  // G = L D L^T with L unit lower triangular
  const QMatrix& g = e.shape();
  QMatrix l = QMatrix::identity(k);
  QVector d(k);
  for (std::size_t i = 0; i < k; ++i) {
    Rational s = g(i, i);
    for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * l(i, j) * d[j];
    d[i] = s;
    if (d[i] <= 0) throw std::invalid_argument("ellipsoid shape is not positive definite");
    for (std::size_t r = i + 1; r < k; ++r) {
      Rational t = g(r, i);
      for (std::size_t j = 0; j < i; ++j) t -= l(r, j) * l(i, j) * d[j];
      l(r, i) = t / d[i];
    }
  }
  const QVector& c = e.center();
  ZVector y(k);
  // form = sum_i d_i (y_i - c_i + sum_{j>i} l_{ji} (y_j - c_j))^2
  auto rec = [&](auto&& self, std::size_t i, const Rational& budget) -> void {
    Rational shift = 0;
    for (std::size_t j = i + 1; j < k; ++j) shift += l(j, i) * (Rational(y[j]) - c[j]);
    Rational centre = c[i] - shift;
    Rational q = budget / d[i];
    Integer lo = ceil_sub_sqrt(centre, q), hi = floor_add_sqrt(centre, q);
    for (Integer z = lo; z <= hi; ++z) {
      y[i] = z;
      if (i == 0) {
        visit(y);
      } else {
        Rational t = Rational(z) - centre;
        self(self, i - 1, Rational(budget - d[i] * t * t));
      }
    }
  };
  rec(rec, k - 1, e.level());
}

/// Visits each lattice point of a body already expressed in Z^k coordinates.
inline void for_each_point(const Body& local, const std::function<void(const ZVector&)>& visit) {
  if (local.is_ellipsoid()) {
    walk_ellipsoid(local.ellipsoid(), visit);
    return;
  }
  PolytopeWalker w(local.polytope());
  ZVector pt;
  w.walk([&](const ZVector& prefix, const Integer& lo, const Integer& hi) {
    if (prefix.empty()) {
      visit(prefix);
      return;
    }
    pt = prefix;
    for (Integer z = lo; z <= hi; ++z) {
      pt.back() = z;
      visit(pt);
    }
  });
}

inline Body to_lattice_coordinates(const Body& k, const AffineLattice& lat) {
  if (lat.lattice.ambient_dim() != k.ambient_dim() || lat.shift.size() != k.ambient_dim())
    throw std::invalid_argument("lattice and body dimensions differ");
  if (lat.lattice.is_standard() && is_zero(lat.shift)) return k;
  return restrict_to_frame(k, lat.shift, lat.lattice.basis());
}

}  // namespace detail

/// Count points of a body already in lattice coordinates (Z^k).
inline CountResult count_local(const Body& local, const CountOptions& opt = {}) {
  CountResult res;
  std::vector<ZVector> pts;
  bool keep = true;
  auto note = [&] {
    if (keep && res.count > static_cast<unsigned long>(opt.keep_points_below)) {
      keep = false;
      pts.clear();
      pts.shrink_to_fit();
    }
  };
  if (local.is_polytope()) {
    detail::PolytopeWalker w(local.polytope());
    w.walk([&](const ZVector& prefix, const Integer& lo, const Integer& hi) {
      if (prefix.empty()) {
        res.count += 1;
        if (keep) pts.push_back(prefix);
        note();
        return;
      }
      res.count += hi - lo + 1;
      note();
      if (!keep) return;
      ZVector pt = prefix;
      for (Integer z = lo; z <= hi; ++z) {
        pt.back() = z;
        pts.push_back(pt);
      }
    });
  } else {
    detail::walk_ellipsoid(local.ellipsoid(), [&](const ZVector& y) {
      res.count += 1;
      note();
      if (keep) pts.push_back(y);
    });
  }
  if (keep) {
    std::sort(pts.begin(), pts.end());
    res.points = std::move(pts);
  }
  return res;
}

inline CountResult count(const Body& k, const AffineLattice& lat, const CountOptions& opt = {}) {
  return count_local(detail::to_lattice_coordinates(k, lat), opt);
}

inline CountResult count(const Body& k, const CountOptions& opt = {}) {
  return count_local(k, opt);
}

inline Integer count_points(const Body& k) { return count(k, CountOptions{0}).count; }

/// All lattice points of K (in Z^n), sorted. Throws when there are more than `limit`.
inline std::vector<ZVector> lattice_points(const Body& k, std::size_t limit = 20000000) {
  CountResult r = count(k, CountOptions{limit});
  if (!r.points) throw std::runtime_error("too many lattice points to list (" + to_string(r.count) + ")");
  return *r.points;
}

/// Dimension of the linear span of K intersected with Z^n.
inline std::size_t lattice_span_dim(const Body& k) {
  detail::IncrementalSpan span(k.ambient_dim());
  detail::for_each_point(k, [&](const ZVector& x) {
    if (span.rank() < k.ambient_dim()) span.add(to_rational(x));
  });
  return span.rank();
}

/// Affine dimension of K intersected with Z^n (-1 when there are no lattice points).
inline int lattice_affine_dim(const Body& k) {
  detail::IncrementalSpan span(k.ambient_dim());
  std::optional<QVector> first;
  detail::for_each_point(k, [&](const ZVector& x) {
    if (!first) {
      first = to_rational(x);
      return;
    }
    if (span.rank() < k.ambient_dim()) span.add(sub(to_rational(x), *first));
  });
  return first ? static_cast<int>(span.rank()) : -1;
}

/// # (K intersected with {<b,x> = j} intersected with Z^n).
inline Integer count_section(const Body& k, const ZVector& b, const Integer& j) {
  SliceResult s = slice(k, b, j);
  if (s.lattice_free) return 0;
  return count_points(s.body);
}

struct SectionScan {
  ZVector normal;
  Integer lo, hi;                       // scanned level range
  std::map<Integer, Integer> counts;    // nonzero section counts by level
  Integer best_level = 0;
  Integer best_count = 0;

  Integer at(const Integer& j) const {
    auto it = counts.find(j);
    return it == counts.end() ? Integer(0) : it->second;
  }
};

namespace detail {
/// Max count; ties prefer the smallest |j|, then the smallest j.
inline void choose_best_level(SectionScan& s) {
  bool have = false;
  auto better = [&](const Integer& j, const Integer& c) {
    if (!have) return true;
    if (c != s.best_count) return c > s.best_count;
    Integer aj = abs(j), ab = abs(s.best_level);
    if (aj != ab) return aj < ab;
    return j < s.best_level;
  };
  for (const auto& [j, c] : s.counts)
    if (j >= s.lo && j <= s.hi && better(j, c)) {
      s.best_level = j;
      s.best_count = c;
      have = true;
    }
  // zero-count levels only matter when nothing better exists
  Integer zero_pick = s.lo > 0 ? s.lo : (s.hi < 0 ? s.hi : Integer(0));
  if (s.lo <= s.hi && better(zero_pick, Integer(0))) {
    s.best_level = zero_pick;
    s.best_count = 0;
  }
}
}  // namespace detail

/// Section counts of K along the levels of the integer functional b, and the best level.
inline SectionScan max_section_over_levels(const Body& k, const ZVector& b) {
  if (k.is_empty()) throw std::invalid_argument("section scan of an empty body");
  QVector bq = to_rational(b);
  SectionScan s;
  s.normal = b;
  Integer up = support_floor(k, bq);
  Integer down = support_floor(k, negate(bq));  // -ceil(-h(-b)) = floor(h(-b))
  s.hi = up;
  s.lo = -up < -down ? Integer(-up) : Integer(-down);
  detail::for_each_point(k, [&](const ZVector& x) { s.counts[dot(b, x)] += 1; });
  detail::choose_best_level(s);
  return s;
}

struct GlobalSection {
  ZVector normal;
  Integer level = 0;
  Integer count = 0;
  Integer total = 0;
  std::size_t normals_scanned = 0;
};

/// Primitive vectors of [-bound, bound]^n with first nonzero entry positive, lexicographic.
inline std::vector<std::vector<long>> canonical_normals(std::size_t n, long bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> c(n, -bound);
  while (true) {
    long g = 0;
    for (long x : c) g = std::gcd(g, std::labs(x));
    long first = 0;
    for (long x : c)
      if (x != 0) {
        first = x;
        break;
      }
    if (g == 1 && first > 0) out.push_back(c);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (c[i] < bound) {
        ++c[i];
        break;
      }
      c[i] = -bound;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

/// Largest hyperplane section over all primitive normals with entries bounded by `bound`.
/// Ties prefer the lexicographically first normal, then the level rule of the section scan.
/// For a general lattice the normals are integer functionals on its coordinates.
inline GlobalSection max_section_global(const Body& k, long bound, const Lattice* lattice = nullptr) {
  Body local = lattice ? detail::to_lattice_coordinates(k, {*lattice, QVector(k.ambient_dim(), Rational(0))}) : k;
  const std::size_t n = local.ambient_dim();
  std::vector<std::vector<std::int64_t>> pts;
  detail::for_each_point(local, [&](const ZVector& x) {
    std::vector<std::int64_t> p;
    for (const auto& c : x) p.push_back(to_int64(c));
    pts.push_back(std::move(p));
  });
  GlobalSection best;
  best.total = static_cast<long>(pts.size());
  bool have = false;
  std::unordered_map<std::int64_t, std::int64_t> hist;
  for (const auto& c : canonical_normals(n, bound)) {
    ++best.normals_scanned;
    hist.clear();
    for (const auto& p : pts) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += c[i] * p[i];
      ++hist[s];
    }
    std::int64_t bc = 0, bl = 0;
    bool hb = false;
    for (const auto& [lv, ct] : hist) {
      bool take = !hb || ct > bc || (ct == bc && (std::llabs(lv) < std::llabs(bl) || (std::llabs(lv) == std::llabs(bl) && lv < bl)));
      if (take) {
        bc = ct;
        bl = lv;
        hb = true;
      }
    }
    if (!have || Integer(static_cast<long>(bc)) > best.count) {
      best.count = static_cast<long>(bc);
      best.level = static_cast<long>(bl);
      best.normal.clear();
      for (long x : c) best.normal.push_back(Integer(x));
      have = true;
    }
  }
  return best;
}

/// # of lattice points of the projection of K onto v^perp, in the projected lattice.
inline Integer count_projection(const Body& k, const ZVector& v) { return count_points(project(k, v).body); }

/// # of distinct projections of the points of K intersected with Z^n.
inline Integer count_projected_points(const Body& k, const ZVector& v) {
  ZVector vp(v);
  Integer g = content(vp);
  if (g == 0) throw std::invalid_argument("projection along the zero vector");
  for (auto& x : vp) x /= g;
  // canonical representative of x + Z v': shift so the first nonzero coordinate of v' lies in [0, |v'_c|)
  std::size_t c = 0;
  while (vp[c] == 0) ++c;
  if (vp[c] < 0) vp = negate(vp);
  std::set<ZVector> seen;
  detail::for_each_point(k, [&](const ZVector& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x[c].get_mpz_t(), vp[c].get_mpz_t());
    ZVector r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= q * vp[i];
    seen.insert(std::move(r));
  });
  return static_cast<long>(seen.size());
}

}  // namespace latslice
