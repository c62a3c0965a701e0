#pragma once

#include "latslice/counting/count.hpp"

namespace latslice {

struct MinimaProfile {
  std::vector<Rational> minima;
  std::vector<QVector> witnesses;        // ambient coordinates
  std::vector<ZVector> witness_coords;   // coordinates in the lattice basis
};

struct MahlerBasis {
  std::vector<QVector> vectors;
  std::vector<ZVector> coords;
  std::vector<Rational> gauge_values;
};

namespace detail {

/// K in the coordinates of a full-rank lattice basis, checked to be a polytope with 0 interior.
inline Polytope minima_body(const Body& k, const Lattice& l) {
  if (!l.full_rank() || l.ambient_dim() != k.ambient_dim())
    throw std::invalid_argument("successive minima need a full-rank lattice of the body's dimension");
  if (!k.is_polytope()) throw std::invalid_argument("successive minima are computed for polytopes only");
  Body local = to_lattice_coordinates(k, AffineLattice{l, QVector(k.ambient_dim(), Rational(0))});
  const Polytope& p = local.polytope();
  if (!p.full_dimensional() || !p.origin_interior())
    throw std::invalid_argument("successive minima need a full-dimensional body with the origin in its interior");
  return p;
}

inline bool first_nonzero_positive(const ZVector& z) {
  for (const auto& x : z)
    if (x != 0) return x > 0;
  return false;
}

struct Candidate {
  Rational gauge;
  Integer norm_sq;
  ZVector z;
};

/// Gauge ascending, then Euclidean length, then lexicographically larger first (e1 before e2).
inline bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.gauge != b.gauge) return a.gauge < b.gauge;
  if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
  return a.z > b.z;
}

inline std::vector<Candidate> candidates_in(const Polytope& p, const Rational& mu) {
  std::vector<Candidate> out;
  Body dilate(p.scaled(mu));
  for (const auto& z : lattice_points(dilate)) {
    if (!first_nonzero_positive(z)) continue;
    Integer nsq = 0;
    for (const auto& x : z) nsq += x * x;
    out.push_back({gauge(p, to_rational(z)), nsq, z});
  }
  std::sort(out.begin(), out.end(), candidate_before);
  return out;
}

inline std::size_t candidate_rank(const std::vector<Candidate>& c, std::size_t n) {
  IncrementalSpan span(n);
  for (const auto& x : c) {
    span.add(to_rational(x.z));
    if (span.rank() == n) break;
  }
  return span.rank();
}

/// Successive minima of a full-dimensional symmetric polytope given in Z^n coordinates.
inline std::vector<Candidate> local_minima(const Polytope& p) {
  const std::size_t n = p.ambient_dim();
  Rational mu = 1;
  std::vector<Candidate> cand = candidates_in(p, mu);
  if (candidate_rank(cand, n) == n) {
    while (true) {
      std::vector<Candidate> smaller = candidates_in(p, mu / 2);
      if (candidate_rank(smaller, n) < n) break;
      mu /= 2;
      cand = std::move(smaller);
    }
  } else {
    do {
      mu *= 2;
      cand = candidates_in(p, mu);
    } while (candidate_rank(cand, n) < n);
  }
  std::vector<Candidate> picked;
  IncrementalSpan span(n);
  for (const auto& c : cand) {
    if (span.add(to_rational(c.z))) picked.push_back(c);
    if (picked.size() == n) break;
  }
  return picked;
}

}  // namespace detail

inline MinimaProfile successive_minima(const Body& k, const Lattice& l) {
  if (!k.symmetry().origin_symmetric) throw std::invalid_argument("successive minima need an origin-symmetric body");
  Polytope p = detail::minima_body(k, l);
  MinimaProfile out;
  for (const auto& c : detail::local_minima(p)) {
    out.minima.push_back(c.gauge);
    out.witness_coords.push_back(c.z);
    out.witnesses.push_back(l.point(c.z));
  }
  return out;
}

inline MinimaProfile successive_minima(const Body& k) { return successive_minima(k, Lattice::integer(k.ambient_dim())); }

/// Bound max{1, i/2} for the 1-based index i.
inline Rational mahler_factor(std::size_t i) { return i <= 2 ? Rational(1) : make_rational(static_cast<long>(i), 2); }

/// Lattice basis b_1..b_n with |b_i|_K <= max{1, i/2} lambda_i, built from the minima witnesses.
inline MahlerBasis mahler_basis(const Body& k, const Lattice& l, const MinimaProfile& prof) {
  Polytope p = detail::minima_body(k, l);
  const std::size_t n = p.ambient_dim();
  const Lattice zn = Lattice::integer(n);
  std::vector<QVector> a;
  for (const auto& z : prof.witness_coords) a.push_back(to_rational(z));
  std::vector<QVector> b;
  MahlerBasis out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<QVector> span_a(a.begin(), a.begin() + static_cast<long>(i + 1));
    Lattice li = primitive_sublattice(zn, span_a);
    // complete b_1..b_{i-1} to a basis of Lambda_i
    QVector completion;
    if (i == 0) {
      completion = li.basis().col(0);
    } else {
      ZMatrix c(i + 1, i);
      for (std::size_t j = 0; j < i; ++j) {
        ZVector cj = *li.coordinates(b[j]);
        for (std::size_t r = 0; r <= i; ++r) c(r, j) = cj[r];
      }
      ZMatrix w = unimodular_completion(c);
      completion = li.point(w.col(i));
    }
    // coordinates of the completion in a_1..a_i, then reduce the first i-1 into [-1/2, 1/2)
    QVector beta = *solve(QMatrix::from_columns(span_a), completion);
    QVector bi;
    Rational last = beta[i] < 0 ? Rational(-beta[i]) : beta[i];
    if (last == 1) {
      bi = a[i];
    } else {
      bi = completion;
      for (std::size_t j = 0; j < i; ++j) bi = sub(bi, scale(a[j], Rational(round_half_up(beta[j]))));
    }
    // small local improvement: shifts by -1, 0, 1 times earlier basis vectors
    auto norm_sq = [](const QVector& v) { return dot(v, v); };
    QVector best = bi;
    Rational best_g = gauge(p, bi);
    std::vector<int> shift(i, -1);
    while (i > 0) {
      QVector cand = bi;
      for (std::size_t j = 0; j < i; ++j)
        if (shift[j] != 0) cand = add(cand, scale(b[j], Rational(shift[j])));
      Rational g = gauge(p, cand);
      // same order as the minima candidates: gauge, length, lexicographically larger
      bool better = g != best_g ? g < best_g
                                : (norm_sq(cand) != norm_sq(best) ? norm_sq(cand) < norm_sq(best) : cand > best);
      if (better) {
        best = cand;
        best_g = g;
      }
      std::size_t j = 0;
      while (j < i && shift[j] == 1) shift[j++] = -1;
      if (j == i) break;
      ++shift[j];
    }
    if (best_g > mahler_factor(i + 1) * prof.minima[i])
      throw std::logic_error("mahler_basis: gauge bound violated at index " + std::to_string(i + 1));
    b.push_back(best);
    out.coords.push_back(*to_integer(best));
    out.vectors.push_back(l.point(out.coords.back()));
    out.gauge_values.push_back(best_g);
  }
  Integer det = determinant(ZMatrix::from_columns(out.coords));
  if (det != 1 && det != -1) throw std::logic_error("mahler_basis: result is not a lattice basis");
  return out;
}

inline MahlerBasis mahler_basis(const Body& k, const Lattice& l) { return mahler_basis(k, l, successive_minima(k, l)); }

}  // namespace latslice
