#include "latslice/exact/hnf.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace latslice;

namespace {

QMatrix qm(std::vector<std::vector<long>> rows) {
  std::vector<QVector> r;
  for (auto& row : rows) {
    QVector q;
    for (long x : row) q.push_back(Rational(x));
    r.push_back(q);
  }
  return QMatrix::from_rows(r);
}

ZMatrix zm(std::vector<std::vector<long>> rows) {
  std::vector<ZVector> r;
  for (auto& row : rows) {
    ZVector z;
    for (long x : row) z.push_back(Integer(x));
    r.push_back(z);
  }
  return ZMatrix::from_rows(r);
}

// number of residues of Z^n modulo the columns of a nonsingular diagonal-ish
// integer matrix, by enumerating a box and reducing each point
long coset_count_oracle(const ZMatrix& m, long box) {
  QMatrix inv = inverse_or_throw(to_rational(m));
  std::set<QVector> classes;
  std::size_t n = m.rows();
  std::vector<long> x(n, 0);
  while (true) {
    QVector v;
    for (long c : x) v.push_back(Rational(c));
    QVector coeff = inv * v;
    for (auto& c : coeff) c = Rational(c - Rational(floor(c)));
    classes.insert(coeff);
    std::size_t i = 0;
    while (i < n && ++x[i] == box) x[i++] = 0;
    if (i == n) break;
  }
  return static_cast<long>(classes.size());
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(make_rational(-3, 9)), "-1/3");
  EXPECT_EQ(to_string(make_rational(8, 4)), "2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, FloorCeilRound) {
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(round_half_up(Rational(5, 2)), 3);
  EXPECT_EQ(round_half_up(Rational(-5, 2)), -2);
}

TEST(Rational, SqrtBoundsExact) {
  // floor(a + sqrt(q)) against a direct search over integers
  for (int an = -20; an <= 20; an += 3)
    for (int qn = 0; qn <= 60; qn += 7) {
      Rational a = make_rational(an, 3), q = make_rational(qn, 2);
      Integer f = floor_add_sqrt(a, q);
      Rational d = Rational(f) - a;
      EXPECT_TRUE(d <= 0 || d * d <= q);
      Rational d1 = Rational(f + 1) - a;
      EXPECT_TRUE(d1 > 0 && d1 * d1 > q);
      Integer c = ceil_sub_sqrt(a, q);
      Rational e = a - Rational(c);
      EXPECT_TRUE(e <= 0 || e * e <= q);
      Rational e1 = a - Rational(c - 1);
      EXPECT_TRUE(e1 > 0 && e1 * e1 > q);
    }
  EXPECT_EQ(floor_sqrt(Rational(25)), 5);
  EXPECT_EQ(floor_add_sqrt(Rational(0), Rational(25)), 5);
}

TEST(Elimination, SolveIdentityAndDiagonal) {
  auto x = solve(QMatrix::identity(3), {Rational(1), Rational(2), Rational(3)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (QVector{1, 2, 3}));
  auto y = solve(qm({{2, 0}, {0, 4}}), {Rational(1), Rational(1)});
  ASSERT_TRUE(y);
  EXPECT_EQ(*y, (QVector{Rational(1, 2), Rational(1, 4)}));
}

TEST(Elimination, InconsistentSystemHasNoSolution) {
  EXPECT_FALSE(solve(qm({{1, 1}, {2, 2}}), {Rational(1), Rational(3)}));
}

TEST(Elimination, Nullspace) {
  auto ns = nullspace(qm({{1, 2, 3}}));
  ASSERT_EQ(ns.size(), 2u);
  for (auto& v : ns) EXPECT_EQ(dot(v, QVector{1, 2, 3}), 0);
  EXPECT_EQ(rank(qm({{1, 2}, {2, 4}})), 1u);
}

TEST(Determinant, MatchesCosetCountOracle) {
  ZMatrix d = zm({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}});
  EXPECT_EQ(determinant(d), 8);
  EXPECT_EQ(coset_count_oracle(d, 4), 8);
  ZMatrix two = zm({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  EXPECT_EQ(determinant(two), 8);
  EXPECT_EQ(coset_count_oracle(two, 2), 8);
  ZMatrix skew = zm({{2, 1}, {0, 3}});
  EXPECT_EQ(determinant(skew), 6);
  EXPECT_EQ(coset_count_oracle(skew, 6), 6);
}

TEST(Determinant, RationalAndSingular) {
  QMatrix m = QMatrix::from_rows({{Rational(1, 2), Rational(1)}, {Rational(1, 3), Rational(3)}});
  EXPECT_EQ(determinant(m), Rational(3, 2) - Rational(1, 3));
  EXPECT_EQ(determinant(qm({{1, 2}, {2, 4}})), 0);
  EXPECT_EQ(determinant(qm({{0, 1}, {1, 0}})), -1);
}

TEST(Inverse, RoundTrip) {
  QMatrix m = qm({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, QMatrix::identity(3));
  EXPECT_FALSE(inverse(qm({{1, 2}, {2, 4}})));
}

TEST(Hnf, PropertiesOnRandomMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    ZMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 13) - 6;
    ColumnHnf f = column_hnf(m);
    EXPECT_EQ(m * f.u, f.h);
    Integer du = determinant(f.u);
    EXPECT_TRUE(du == 1 || du == -1);
    EXPECT_EQ(f.rank(), rank(to_rational(m)));
    for (std::size_t j = f.rank(); j < c; ++j)
      for (std::size_t i = 0; i < r; ++i) EXPECT_EQ(f.h(i, j), 0);
    for (std::size_t j = 0; j < f.rank(); ++j) {
      std::size_t pr = f.pivot_rows[j];
      EXPECT_GT(f.h(pr, j), 0);
      for (std::size_t i = 0; i < pr; ++i) EXPECT_EQ(f.h(i, j), 0);
      for (std::size_t l = 0; l < j; ++l) {
        EXPECT_GE(f.h(pr, l), 0);
        EXPECT_LT(f.h(pr, l), f.h(pr, j));
      }
    }
    ZMatrix k = integer_kernel(m);
    EXPECT_EQ(k.cols(), c - f.rank());
    ZMatrix prod = m * k;
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j) EXPECT_EQ(prod(i, j), 0);
  }
}

TEST(Hnf, UnimodularCompletion) {
  ZMatrix c = zm({{1, 0}, {2, 1}, {3, 5}});
  EXPECT_TRUE(columns_primitive(c));
  ZMatrix w = unimodular_completion(c);
  Integer d = determinant(w);
  EXPECT_TRUE(d == 1 || d == -1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(w(i, j), c(i, j));
  EXPECT_FALSE(columns_primitive(zm({{2}, {4}})));
  EXPECT_THROW(unimodular_completion(zm({{2}, {4}})), std::invalid_argument);
}
