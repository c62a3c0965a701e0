#pragma once

#include "latslice/body/operations.hpp"

#include <random>
#include <sstream>

namespace latslice {

/// Parameters of a body family. Unused fields are ignored by the family.
struct FamilySpec {
  std::string family = "cube";
  long n = 3;
  long k = 1;
  long h = 1;
  long m = 2;
  long s = 6;   // sample size for random families
  long R = 3;   // coordinate range for random families
  std::uint64_t seed = 0;
};

namespace detail {

inline QVector unit(std::size_t n, std::size_t i, const Rational& len = 1) {
  QVector v(n, Rational(0));
  v[i] = len;
  return v;
}

inline std::vector<QVector> box_vertices(const std::vector<std::pair<Rational, Rational>>& sides) {
  std::vector<QVector> out;
  const std::size_t n = sides.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    QVector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back((mask >> i & 1) ? sides[i].second : sides[i].first);
    out.push_back(v);
  }
  return out;
}

inline QVector random_point(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  QVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Rational(d(rng)));
  return v;
}

/// Draws points until at least `s` are drawn and they span R^n (or a draw limit hits).
template <class Gen>
std::vector<QVector> spanning_sample(std::size_t n, long s, Gen&& draw) {
  std::vector<QVector> pts;
  IncrementalSpan span(n);
  for (long i = 0; i < 100000 && (static_cast<long>(pts.size()) < s || span.rank() < n); ++i) {
    QVector p = draw();
    if (span.rank() < n) span.add(p);
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace detail

/// conv{0, e1, e1 + k e2, k e3}, lifted by e4..en for n >= 4.
inline Body simplex_T(long n, long k) {
  if (n < 3 || k < 1) throw std::invalid_argument("T_k needs n >= 3 and k >= 1");
  const std::size_t d = static_cast<std::size_t>(n);
  QVector a = detail::unit(d, 0);
  QVector b = a;
  b[1] = k;
  std::vector<QVector> v{QVector(d, Rational(0)), a, b, detail::unit(d, 2, k)};
  for (std::size_t i = 3; i < d; ++i) v.push_back(detail::unit(d, i));
  return Body::from_vertices(d, v);
}

/// Double pyramid over C_{n-1} with apexes +-h e_n.
inline Body double_pyramid(long n, long h) {
  if (n < 2 || h < 1) throw std::invalid_argument("K_h needs n >= 2 and h >= 1");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<std::pair<Rational, Rational>> sides(d - 1, {Rational(-1), Rational(1)});
  std::vector<QVector> v;
  for (auto p : detail::box_vertices(sides)) {
    p.push_back(0);
    v.push_back(p);
  }
  v.push_back(detail::unit(d, d - 1, h));
  v.push_back(detail::unit(d, d - 1, -h));
  return Body::from_vertices(d, v);
}

/// 1/2 [-1,1]^{n-1} x [-k+1/2, k-1/2].
inline Body box_Q(long n, long k) {
  if (n < 1 || k < 1) throw std::invalid_argument("Q_k needs n >= 1 and k >= 1");
  std::vector<std::pair<Rational, Rational>> sides(static_cast<std::size_t>(n - 1), {Rational(-1, 2), Rational(1, 2)});
  sides.emplace_back(Rational(-k) + Rational(1, 2), Rational(k) - Rational(1, 2));
  return Body::from_vertices(static_cast<std::size_t>(n), detail::box_vertices(sides));
}

inline Body cube(long n, const Rational& half = 1) {
  std::vector<std::pair<Rational, Rational>> sides(static_cast<std::size_t>(n), {Rational(-half), half});
  return Body::from_vertices(static_cast<std::size_t>(n), detail::box_vertices(sides));
}

/// [-(1 - 1/2m), 1 - 1/2m]^n.
inline Body shrunken_cube(long n, long m) {
  if (m < 1) throw std::invalid_argument("shrunken cube needs m >= 1");
  return cube(n, Rational(1) - make_rational(1, 2 * m));
}

/// conv{+-e1, +-h e2} in the plane.
inline Body cross_h(long h) {
  if (h < 1) throw std::invalid_argument("cross_h needs h >= 1");
  return Body::from_vertices(2, {QVector{1, 0}, QVector{-1, 0}, QVector{0, Rational(h)}, QVector{0, Rational(-h)}});
}

inline Body cross_polytope(long n) {
  std::vector<QVector> v;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    v.push_back(detail::unit(static_cast<std::size_t>(n), i));
    v.push_back(detail::unit(static_cast<std::size_t>(n), i, -1));
  }
  return Body::from_vertices(static_cast<std::size_t>(n), v);
}

/// conv(+-([0,1]^{n-1} x {1})).
inline Body slab(long n) {
  if (n < 2) throw std::invalid_argument("slab needs n >= 2");
  std::vector<std::pair<Rational, Rational>> sides(static_cast<std::size_t>(n - 1), {Rational(0), Rational(1)});
  std::vector<QVector> v;
  for (auto p : detail::box_vertices(sides)) {
    p.push_back(1);
    v.push_back(p);
    v.push_back(negate(p));
  }
  return Body::from_vertices(static_cast<std::size_t>(n), v);
}

/// (1, 2, 4, ..., 2^{n-1}).
inline ZVector powers_of_two(long n) {
  ZVector u;
  for (long i = 0; i < n; ++i) u.push_back(ipow(Integer(2), static_cast<unsigned long>(i)));
  return u;
}

/// C_n intersected with u^perp for u = (1, 2, ..., 2^{n-1}).
inline Body cube_section_u(long n) {
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<HalfSpace> rows;
  for (std::size_t i = 0; i < d; ++i) {
    rows.push_back({detail::unit(d, i), 1});
    rows.push_back({detail::unit(d, i, -1), 1});
  }
  return Body::from_inequalities(d, rows, {{to_rational(powers_of_two(n)), 0}});
}

/// conv((C_n intersected with u^perp) together with +-e_n).
inline Body cube_section_pyramid(long n) {
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<QVector> v = cube_section_u(n).polytope().vertices();
  v.push_back(detail::unit(d, d - 1));
  v.push_back(detail::unit(d, d - 1, -1));
  return Body::from_vertices(d, v);
}

/// conv(+-p_i) for s points sampled from [-R, R]^n; resampled until full-dimensional.
inline Body random_symmetric(long n, long s, long R, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t d = static_cast<std::size_t>(n);
  auto pts = detail::spanning_sample(d, s, [&] { return detail::random_point(rng, d, -R, R); });
  std::vector<QVector> v;
  for (const auto& p : pts) {
    v.push_back(p);
    v.push_back(negate(p));
  }
  return Body::from_vertices(d, v);
}

/// Hull of all sign flips of s points sampled from [0, R]^n.
inline Body random_unconditional(long n, long s, long R, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t d = static_cast<std::size_t>(n);
  auto pts = detail::spanning_sample(d, s, [&] { return detail::random_point(rng, d, 0, R); });
  std::vector<QVector> v;
  for (const auto& p : pts)
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      QVector q = p;
      for (std::size_t i = 0; i < d; ++i)
        if (mask >> i & 1) q[i] = -q[i];
      v.push_back(q);
    }
  return Body::from_vertices(d, v);
}

/// Hull of s points of [-R, R]^n, not symmetrized.
inline Body random_lattice_polytope(long n, long s, long R, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t d = static_cast<std::size_t>(n);
  auto pts = detail::spanning_sample(d, s, [&] { return detail::random_point(rng, d, -R, R); });
  return Body::from_vertices(d, pts);
}

/// Random rational translation with entries p/q, 0 <= p < q <= 12.
inline QVector random_translation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> den(1, 12);
  QVector t;
  for (std::size_t i = 0; i < n; ++i) {
    long q = den(rng);
    std::uniform_int_distribution<long> num(0, q - 1);
    t.push_back(make_rational(num(rng), q));
  }
  return t;
}

inline std::vector<std::string> family_names() {
  return {"T_k",   "K_h",          "Q_k",          "cube",      "shrunken_cube", "cross_h",        "cross",
          "slab",  "cube_section_u", "cube_section_pyramid", "random_sym", "random_uncond", "random_polytope"};
}

inline Body make_family(const FamilySpec& f) {
  const std::string& id = f.family;
  if (id == "T_k") return simplex_T(f.n, f.k);
  if (id == "K_h") return double_pyramid(f.n, f.h);
  if (id == "Q_k") return box_Q(f.n, f.k);
  if (id == "cube") return cube(f.n);
  if (id == "shrunken_cube") return shrunken_cube(f.n, f.m);
  if (id == "cross_h") return cross_h(f.h);
  if (id == "cross") return cross_polytope(f.n);
  if (id == "slab") return slab(f.n);
  if (id == "cube_section_u") return cube_section_u(f.n);
  if (id == "cube_section_pyramid") return cube_section_pyramid(f.n);
  if (id == "random_sym") return random_symmetric(f.n, f.s, f.R, f.seed);
  if (id == "random_uncond") return random_unconditional(f.n, f.s, f.R, f.seed);
  if (id == "random_polytope") return random_lattice_polytope(f.n, f.s, f.R, f.seed);
  throw std::invalid_argument("unknown family '" + id + "'");
}

/// Short text naming the instance, with only the parameters the family uses.
inline std::string describe(const FamilySpec& f) {
  std::ostringstream o;
  o << f.family << "(n=" << (f.family == "cross_h" ? 2 : f.n);
  if (f.family == "T_k" || f.family == "Q_k") o << ",k=" << f.k;
  if (f.family == "K_h" || f.family == "cross_h") o << ",h=" << f.h;
  if (f.family == "shrunken_cube") o << ",m=" << f.m;
  if (f.family.rfind("random", 0) == 0) o << ",s=" << f.s << ",R=" << f.R << ",seed=" << f.seed;
  o << ")";
  return o.str();
}

}  // namespace latslice
