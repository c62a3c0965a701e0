#include "latslice/lattice/lattice.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace latslice;
using testutil::qv;

TEST(Lattice, DeterminantAndMembership) {
  Lattice l(QMatrix::from_columns({qv({2, 0}), qv({1, 3})}));
  EXPECT_EQ(l.det(), 6);
  EXPECT_TRUE(l.contains(qv({3, 3})));
  EXPECT_FALSE(l.contains(qv({1, 0})));
  auto c = l.coordinates(qv({3, 3}));
  ASSERT_TRUE(c);
  EXPECT_EQ(l.point(*c), qv({3, 3}));
  EXPECT_THROW(Lattice(QMatrix::from_columns({qv({1, 2}), qv({2, 4})})), std::invalid_argument);
}

TEST(Lattice, PolarOfPolarIsOriginal) {
  Lattice l(QMatrix::from_columns({qv({2, 1, 0}), qv({0, 3, 1}), qv({1, 0, 5})}));
  Lattice d = polar_lattice(l);
  EXPECT_EQ(d.det() * l.det(), 1);
  EXPECT_TRUE(same_lattice(polar_lattice(d), l));
  // pairing is integral
  QMatrix pairing = d.basis().transpose() * l.basis();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(is_integer(pairing(i, j)));
}

TEST(Lattice, PrimitiveSublattice) {
  Lattice z3 = Lattice::integer(3);
  Lattice s = primitive_sublattice(z3, {qv({2, 2, 0}), qv({0, 0, 3})});
  EXPECT_EQ(s.rank(), 2u);
  EXPECT_TRUE(s.contains(qv({1, 1, 0})));
  EXPECT_TRUE(s.contains(qv({0, 0, 1})));
  EXPECT_EQ(s.det_sq(), 2);
  EXPECT_THROW(primitive_sublattice(z3, {qv({1, 0, 0}), QVector{Rational(1, 2), 0, 0}}), std::exception);
}

TEST(Lattice, ProjectedLatticeMatchesProjectedGenerators) {
  // projecting Z^2 along (1,2): image generated by projections of e1, e2
  Lattice p = projected_lattice(Lattice::integer(2), qv({1, 2}));
  EXPECT_EQ(p.rank(), 1u);
  // |pi(e1)| = 2/sqrt5 and pi(e2) = -1/2 pi(e1): the image is generated by pi(e2), det^2 = 1/5
  EXPECT_EQ(p.det_sq(), Rational(1, 5));
  QVector pe2 = {Rational(-2, 5), Rational(1, 5)};
  EXPECT_TRUE(p.contains(pe2));
}

TEST(Lattice, ProjectedLatticeDeterminantIdentity) {
  // det(pi Z^n) = 1 / |v| for primitive integer v
  for (auto v : {qv({1, 1, 1}), qv({1, 2, 3}), qv({0, 0, 1}), qv({2, 3, 0})}) {
    Lattice p = projected_lattice(Lattice::integer(3), v);
    EXPECT_EQ(p.det_sq(), 1 / dot(v, v));
  }
}

TEST(Lattice, PrimitiveNormal) {
  QVector n = primitive_normal(Lattice::integer(3), {qv({1, 1, 0}), qv({0, 2, 2})});
  EXPECT_EQ(n, qv({1, -1, 1}));
  Lattice l(QMatrix::from_columns({qv({2, 0}), qv({0, 1})}));
  QVector m = primitive_normal(l, {qv({0, 1})});
  EXPECT_EQ(m, (QVector{Rational(1, 2), 0}));
}

TEST(Lattice, CosetRepresentatives) {
  Lattice l(QMatrix::from_columns({qv({1, 1}), qv({0, 2})}));
  auto reps = coset_representatives(l, 3);
  EXPECT_EQ(reps.size(), 9u);
  // pairwise distinct modulo 3L
  Lattice l3(QMatrix::from_columns({qv({3, 3}), qv({0, 6})}));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(l3.contains(sub(reps[i], reps[j])));
}
