#pragma once

// Independent slow reference implementations used only by tests.

#include "latslice/body/polytope.hpp"

#include <cstdint>
#include <functional>

namespace oracle {

using namespace latslice;

/// Facets of a full-dimensional point set by testing every hyperplane through n points.
inline std::vector<HalfSpace> facets_by_subsets(const std::vector<QVector>& pts, std::size_t n) {
  std::vector<HalfSpace> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == n) {
      QMatrix m(n - 1, n);
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = pts[pick[i]][j] - pts[pick[0]][j];
      auto ns = nullspace(m);
      if (ns.size() != 1) return;
      QVector a = ns[0];
      Rational b = dot(a, pts[pick[0]]);
      int pos = 0, neg = 0;
      for (const auto& p : pts) {
        Rational s = dot(a, p) - b;
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      if (pos > 0 && neg > 0) return;
      if (pos > 0) {
        a = negate(a);
        b = -b;
      }
      out.push_back(canonical_halfspace(a, b));
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Points of [-box, box]^n satisfying every row, counted one by one.
inline std::int64_t box_scan_count(const std::vector<HalfSpace>& rows, std::size_t n, long box) {
  std::vector<long> x(n, -box);
  std::int64_t count = 0;
  while (true) {
    QVector q;
    for (long c : x) q.push_back(Rational(c));
    bool in = true;
    for (const auto& r : rows)
      if (dot(r.normal, q) > r.offset) {
        in = false;
        break;
      }
    count += in;
    std::size_t i = 0;
    while (i < n && x[i] == box) x[i++] = -box;
    if (i == n) break;
    ++x[i];
  }
  return count;
}

/// Lattice points of the disc of squared radius r2, by rows.
inline std::int64_t gauss_circle(std::int64_t r2) {
  std::int64_t count = 0;
  for (std::int64_t x = 0; x * x <= r2; ++x) {
    std::int64_t rest = r2 - x * x;
    std::int64_t y = 0;
    while ((y + 1) * (y + 1) <= rest) ++y;
    count += (x == 0 ? 1 : 2) * (2 * y + 1);
  }
  return count;
}

}  // namespace oracle
