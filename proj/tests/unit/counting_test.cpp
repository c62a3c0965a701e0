#include "latslice/counting/count.hpp"
#include "latslice/harness/families.hpp"
#include "support/oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace latslice;
using testutil::qv;
using testutil::zv;

namespace {

ZVector unit_z(std::size_t n, std::size_t i) {
  ZVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

long box_of(const Body& k) {
  Integer m = 0;
  for (const auto& v : k.polytope().vertices())
    for (const auto& x : v) m = std::max(m, Integer(abs(ceil(x))));
  return m.get_si() + 1;
}

}  // namespace

TEST(Counting, CubeAndClosedForms) {
  for (long n = 1; n <= 4; ++n) EXPECT_EQ(count_points(cube(n)), ipow(Integer(3), n));
  for (long k = 1; k <= 12; ++k) {
    Body t = simplex_T(3, k);
    EXPECT_EQ(count_points(t), 2 * (k + 1));
    EXPECT_EQ(count_section(t, unit_z(3, 0), 0), k + 1);
    EXPECT_EQ(count_section(t, unit_z(3, 1), 0), k + 2);
    EXPECT_EQ(count_section(t, unit_z(3, 2), 0), k + 2);
  }
  for (long n = 3; n <= 4; ++n)
    for (long h = 1; h <= 7; ++h) {
      Body kh = double_pyramid(n, h);
      EXPECT_EQ(count_points(kh), ipow(Integer(3), n - 1) + 2 * h);
      for (long i = 0; i + 1 < n; ++i)
        EXPECT_EQ(count_section(kh, unit_z(n, i), 0), ipow(Integer(3), n - 2) + 2 * h);
      EXPECT_EQ(count_section(kh, unit_z(n, n - 1), 0), ipow(Integer(3), n - 1));
    }
}

TEST(Counting, BoxesAndTranslates) {
  for (long n = 2; n <= 4; ++n)
    for (long k = 1; k <= 5; ++k) {
      Body q = box_Q(n, k);
      EXPECT_EQ(count_points(q), 2 * k - 1);
      EXPECT_EQ(count_points(translated(q, QVector(n, Rational(1, 2)))), ipow(Integer(2), n - 1) * 2 * k);
    }
  for (long n = 2; n <= 3; ++n)
    for (long m = 2; m <= 4; ++m) {
      Body c = shrunken_cube(n, m);
      EXPECT_EQ(count_points(scaled(c, m)), ipow(Integer(2 * m - 1), n) * count_points(c));
    }
}

TEST(Counting, AgreesWithBoxScanOnRandomBodies) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    long n = 2 + static_cast<long>(seed % 3);
    Body k = random_symmetric(n, 4, 3, seed);
    auto rows = k.polytope().facets();
    for (const auto& e : k.polytope().equalities()) {
      rows.push_back(e);
      rows.push_back({negate(e.normal), -e.offset});
    }
    EXPECT_EQ(count_points(k), oracle::box_scan_count(rows, n, box_of(k))) << "seed " << seed;
  }
}

TEST(Counting, FubiniOverLevels) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    long n = 2 + static_cast<long>(seed % 3);
    Body k = random_symmetric(n, 4, 3, seed);
    Integer total = count_points(k);
    for (const auto& b : {unit_z(n, 0), ZVector(n, Integer(1)), [&] {
           ZVector v(n, Integer(1));
           v[0] = 2;
           v[n - 1] = -1;
           return v;
         }()}) {
      Integer hb = support_floor(k, to_rational(b));
      Integer sum = 0;
      for (Integer j = -hb; j <= hb; ++j) sum += count_section(k, b, j);
      EXPECT_EQ(sum, total);
      SectionScan s = max_section_over_levels(k, b);
      Integer sum2 = 0;
      for (const auto& [j, c] : s.counts) {
        sum2 += c;
        EXPECT_EQ(c, count_section(k, b, j));
      }
      EXPECT_EQ(sum2, total);
    }
  }
}

TEST(Counting, SectionsOfCubeAlongPowersOfTwo) {
  for (long n = 3; n <= 5; ++n) {
    ZVector u = powers_of_two(n);
    EXPECT_EQ(count_section(cube(n), u, 0), 1);
    EXPECT_EQ(count_section(cube(n), u, 1), n);
  }
}

TEST(Counting, BallMatchesGaussCircle) {
  EXPECT_EQ(count_points(Body::ball(2, 25)), 81);
  for (long r2 = 0; r2 <= 60; ++r2) EXPECT_EQ(count_points(Body::ball(2, r2)), oracle::gauss_circle(r2));
  // ball counted in a sheared copy of Z^2
  Lattice l(QMatrix::from_columns({qv({1, 0}), qv({1, 1})}));
  EXPECT_EQ(count(Body::ball(2, 25), AffineLattice{l, qv({0, 0})}).count, 81);
}

TEST(Counting, Projections) {
  EXPECT_EQ(count_projection(cube(3), zv({0, 0, 1})), 9);
  EXPECT_EQ(count_projected_points(cube(3), zv({0, 0, 1})), 9);
  for (long n = 3; n <= 5; ++n) {
    Body r = cube_section_pyramid(n);
    EXPECT_EQ(count_projection(r, unit_z(n, n - 1)), ipow(Integer(3), n - 1));
    EXPECT_EQ(count_projected_points(r, unit_z(n, n - 1)), 1);
  }
  Body kh = double_pyramid(3, 4);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(count_projection(kh, unit_z(3, i)), count_section(kh, unit_z(3, i), 0));
  // T_k along e1: brute force set of projected points
  Body t = simplex_T(3, 5);
  std::set<std::pair<Integer, Integer>> seen;
  for (const auto& p : lattice_points(t)) seen.insert({p[1], p[2]});
  EXPECT_EQ(count_projected_points(t, zv({1, 0, 0})), static_cast<long>(seen.size()));
}

TEST(Counting, LevelScans) {
  Body t = simplex_T(3, 6);
  SectionScan s = max_section_over_levels(t, zv({1, 0, 0}));
  EXPECT_EQ(s.at(0), 7);
  EXPECT_EQ(s.at(1), 7);
  EXPECT_EQ(s.best_count, 7);
  EXPECT_EQ(s.best_level, 0);
  SectionScan c = max_section_over_levels(cube(3), zv({1, 0, 0}));
  EXPECT_EQ(c.best_level, 0);
  EXPECT_EQ(c.lo, -1);
  EXPECT_EQ(c.hi, 1);
  // the slab body: off-centre level beats the central one
  SectionScan sl = max_section_over_levels(slab(3), zv({0, 0, 1}));
  EXPECT_EQ(sl.at(0), 1);
  EXPECT_EQ(sl.at(1), 4);
  EXPECT_EQ(sl.best_level, -1);
}

TEST(Counting, GlobalSection) {
  GlobalSection g = max_section_global(cube(3), 1);
  EXPECT_EQ(g.count, 9);
  EXPECT_EQ(g.level, 0);
  EXPECT_EQ(g.normal, zv({0, 0, 1}));
  GlobalSection t = max_section_global(simplex_T(3, 8), 2);
  EXPECT_GE(t.count, 10);
  // unconditional bodies: a coordinate normal attains the optimum
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Body u = random_unconditional(3, 3, 2, seed);
    GlobalSection best = max_section_global(u, 2);
    Integer coord = 0;
    for (std::size_t i = 0; i < 3; ++i) coord = std::max(coord, max_section_over_levels(u, unit_z(3, i)).best_count);
    EXPECT_EQ(best.count, coord);
  }
}

TEST(Counting, SumsetLowerBound) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::set<std::pair<int, int>> a, b, sum;
    int sa = 1 + trial % 7, sb = 1 + trial % 5;
    for (int i = 0; i < sa; ++i) a.insert({d(rng), d(rng)});
    for (int i = 0; i < sb; ++i) b.insert({d(rng), d(rng)});
    for (auto [x, y] : a)
      for (auto [u, v] : b) sum.insert({x + u, y + v});
    EXPECT_GE(sum.size() + 1, a.size() + b.size());
  }
}

TEST(Body, DifferenceBody) {
  Body unit = Body::from_vertices(2, detail::box_vertices({{0, 1}, {0, 1}}));
  EXPECT_EQ(difference_body(unit).polytope(), cube(2).polytope());
  Body c = random_symmetric(3, 4, 2, 3);
  EXPECT_EQ(difference_body(c).polytope(), scaled(c, 2).polytope());
  EXPECT_THROW(difference_body(Body::ball(2, 1)), std::invalid_argument);
  for (long k : {2, 4, 6}) {
    Body dt = difference_body(simplex_T(3, k));
    EXPECT_TRUE(dt.contains(qv({0, 0, 0})));
    EXPECT_TRUE(dt.contains(QVector{0, make_rational(k, 2), 0}));
    EXPECT_TRUE(dt.contains(qv({0, 0, k})));
  }
}

TEST(Body, ProjectionOfUnconditionalEqualsSection) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Body u = random_unconditional(3, 3, 3, seed);
    for (std::size_t i = 0; i < 3; ++i) {
      ZVector e = unit_z(3, i);
      EXPECT_EQ(project(u, e).body.polytope(), slice(u, e, 0).body.polytope());
    }
  }
  for (long n = 3; n <= 5; ++n) {
    Body p = project(cube_section_u(n), unit_z(n, n - 1)).body;
    EXPECT_EQ(p.polytope(), cube(n - 1).polytope());
  }
}
