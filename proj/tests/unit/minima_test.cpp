#include "latslice/harness/families.hpp"
#include "latslice/lattice/minima.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace latslice;
using testutil::qv;
using testutil::zv;

TEST(Minima, Cube) {
  for (long n = 2; n <= 4; ++n) {
    MinimaProfile m = successive_minima(cube(n));
    ASSERT_EQ(m.minima.size(), static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      EXPECT_EQ(m.minima[i], 1);
      QVector e(n, Rational(0));
      e[i] = 1;
      EXPECT_EQ(m.witnesses[i], e);
    }
    MahlerBasis b = mahler_basis(cube(n), Lattice::integer(n));
    for (long i = 0; i < n; ++i) EXPECT_EQ(b.gauge_values[i], 1);
    EXPECT_EQ(b.vectors, m.witnesses);
  }
}

TEST(Minima, ElongatedCross) {
  for (long h : {2, 5, 50}) {
    MinimaProfile m = successive_minima(cross_h(h));
    EXPECT_EQ(m.minima[0], make_rational(1, h));
    EXPECT_EQ(m.witnesses[0], qv({0, 1}));
    EXPECT_EQ(m.minima[1], 1);
    EXPECT_EQ(m.witnesses[1], qv({1, 0}));
    MahlerBasis b = mahler_basis(cross_h(h), Lattice::integer(2));
    EXPECT_EQ(b.vectors[0], qv({0, 1}));
    EXPECT_EQ(b.gauge_values[0], make_rational(1, h));
    EXPECT_EQ(b.gauge_values[1], 1);
  }
}

TEST(Minima, HalfCubeAndLargeBodies) {
  MinimaProfile m = successive_minima(cube(3, Rational(1, 2)));
  for (const auto& l : m.minima) EXPECT_EQ(l, 2);
  MinimaProfile big = successive_minima(cube(2, 7));
  for (const auto& l : big.minima) EXPECT_EQ(l, Rational(1, 7));
}

TEST(Minima, GeneralLattice) {
  // 2Z x Z with the cube: lambda = (1, 2)
  Lattice l(QMatrix::from_columns({qv({2, 0}), qv({0, 1})}));
  MinimaProfile m = successive_minima(cube(2), l);
  EXPECT_EQ(m.minima[0], 1);
  EXPECT_EQ(m.witnesses[0], qv({0, 1}));
  EXPECT_EQ(m.minima[1], 2);
  EXPECT_THROW(successive_minima(simplex_T(3, 2)), std::invalid_argument);
}

TEST(Minima, MahlerBoundOnRandomBodies) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    long n = 2 + static_cast<long>(seed % 3);
    Body k = random_symmetric(n, 3, 4, seed);
    MinimaProfile m = successive_minima(k);
    for (std::size_t i = 1; i < m.minima.size(); ++i) EXPECT_LE(m.minima[i - 1], m.minima[i]);
    for (std::size_t i = 0; i < m.minima.size(); ++i) EXPECT_EQ(gauge(k.polytope(), m.witnesses[i]), m.minima[i]);
    EXPECT_EQ(rank_of(m.witnesses, n), static_cast<std::size_t>(n));
    MahlerBasis b = mahler_basis(k, Lattice::integer(n), m);
    EXPECT_EQ(abs(determinant(ZMatrix::from_columns(b.coords))), 1);
    for (std::size_t i = 0; i < b.vectors.size(); ++i)
      EXPECT_LE(b.gauge_values[i], mahler_factor(i + 1) * m.minima[i]);
  }
}

TEST(Minima, PolarMinimaProduct) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    long n = 2 + static_cast<long>(seed % 2);
    Body k = random_symmetric(n, 3, 3, seed);
    MinimaProfile a = successive_minima(k);
    MinimaProfile b = successive_minima(polar(k));
    for (long i = 0; i < n; ++i) EXPECT_GE(b.minima[i] * a.minima[n - 1 - i], 1);
  }
}
