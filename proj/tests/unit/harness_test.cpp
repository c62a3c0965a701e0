#include "latslice/harness/fuzz.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace latslice;
using testutil::qv;
using testutil::zv;

namespace {

Body flat_square() {
  return Body::from_vertices(3, {qv({1, 1, 0}), qv({1, -1, 0}), qv({-1, 1, 0}), qv({-1, -1, 0})});
}

}  // namespace

TEST(Report, VerdictFromExactFields) {
  CheckReport r = inequality("x", 3, "<=", 3);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(inequality("x", 4, "<=", 3).verdict, Verdict::fails);
  EXPECT_EQ(inequality("x", 3, "<", 3).verdict, Verdict::fails);
  CheckReport agg;
  agg.parts = {inequality("a", 1, "<", 2), inapplicable("b", "why")};
  agg.finish();
  EXPECT_EQ(agg.verdict, Verdict::holds);
  agg.parts.push_back(inequality("c", 5, "==", 6));
  agg.finish();
  EXPECT_EQ(agg.verdict, Verdict::fails);
  EXPECT_EQ(inapplicable("d", "r").verdict, Verdict::inapplicable);
}

TEST(Report, JsonRoundTripKeepsVerdict) {
  CheckReport r = check_discrete_meyer(double_pyramid(3, 7));
  std::string line = r.to_json().dump();
  CheckReport back = CheckReport::from_json(Json::parse(line));
  EXPECT_EQ(back.lhs, r.lhs);
  EXPECT_EQ(back.rhs, r.rhs);
  EXPECT_EQ(back.evaluate(), r.verdict);
  EXPECT_EQ(back.to_json().dump(), line);
}

TEST(Report, CsvQuoting) {
  CheckReport r = inequality("a,b", make_rational(1, 3), "<=", 1);
  r.witnesses["s"] = "say \"hi\"";
  std::string row = csv_row(r);
  EXPECT_EQ(row.substr(0, 6), "\"a,b\",");
  EXPECT_NE(row.find("\"{\"\"s\"\":\"\"say \\\"\"hi\\\"\"\"\"}\""), std::string::npos);
  EXPECT_EQ(row.substr(row.size() - 2), "\r\n");
}

TEST(Checks, DiscreteLoomisWhitney) {
  for (long n = 2; n <= 4; ++n) {
    CheckReport r = check_discrete_lw(cube(n));
    EXPECT_EQ(r.verdict, Verdict::holds);
    EXPECT_EQ(r.lhs, r.rhs);
  }
  EXPECT_EQ(check_discrete_lw(simplex_T(3, 10)).verdict, Verdict::holds);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_EQ(check_discrete_lw(random_symmetric(3, 5, 3, seed)).verdict, Verdict::holds) << seed;
}

TEST(Checks, DiscreteMeyer) {
  Rational prev = 0;
  for (long h : {10, 100, 1000}) {
    CheckReport r = check_discrete_meyer(double_pyramid(3, h));
    EXPECT_EQ(r.verdict, Verdict::holds);
    Rational ratio = parse_rational(r.diagnostics["section_product_over_count_power"]["exact"].get<std::string>());
    EXPECT_EQ(ratio, make_rational(9 * (2 * h + 3) * (2 * h + 3), (2 * h + 9) * (2 * h + 9)));
    EXPECT_GT(ratio, prev);
    prev = ratio;
  }
  EXPECT_EQ(check_discrete_meyer(cube(3)).verdict, Verdict::holds);
  EXPECT_EQ(check_discrete_meyer(simplex_T(3, 2)).verdict, Verdict::inapplicable);
  // planar refinement: #(cross_h) = 2h + 3, sections 3 and 2h + 1
  CheckReport p = check_discrete_meyer(cross_h(500));
  ASSERT_EQ(p.parts.size(), 1u);
  EXPECT_EQ(p.parts[0].lhs, 3 * 1003);
  EXPECT_EQ(p.parts[0].rhs, 3 * 1001);
  EXPECT_EQ(p.verdict, Verdict::holds);
}

TEST(Checks, SimplexCollapse) {
  CheckReport r = check_simplex_counterexample(1);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.witnesses["count"], "4");
  EXPECT_EQ(r.witnesses["section_counts"], Json::array({"2", "3", "3"}));
  auto ratio = [](long k, long n) {
    return parse_rational(check_simplex_counterexample(k, n).diagnostics["ratio_at_k"]["exact"].get<std::string>());
  };
  EXPECT_LT(ratio(100, 3), ratio(10, 3));
  EXPECT_LT(ratio(30, 4), ratio(10, 4));
  EXPECT_EQ(check_simplex_counterexample(5, 4).verdict, Verdict::holds);
}

TEST(Checks, BrunnSlabIsTight) {
  for (long k = 1; k <= 3; ++k) {
    std::vector<ZVector> span;
    for (long i = 0; i < k; ++i) span.push_back(detail::unit_z(4, i));
    CheckReport r = check_brunn(slab(4), span, zv({0, 0, 0, 1}));
    EXPECT_EQ(r.verdict, Verdict::holds);
    EXPECT_EQ(r.lhs, r.rhs);
    EXPECT_EQ(r.lhs, ipow(Integer(2), k));
  }
  CheckReport z = check_brunn(cube(3), {zv({1, 1, 0})}, zv({0, 0, 0}));
  EXPECT_EQ(z.lhs * 2, z.rhs);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-2, 2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Body k = random_symmetric(3, 5, 3, seed);
    ZVector t{d(rng), d(rng), d(rng)};
    ZVector a{d(rng), d(rng), 1};
    EXPECT_NE(check_brunn(k, {a}, t).verdict, Verdict::fails);
    EXPECT_NE(check_brunn(k, {a, zv({1, 0, 0})}, t).verdict, Verdict::fails);
  }
}

TEST(Checks, ReverseMeyerConstruction) {
  ReverseMeyerResult c = reverse_meyer_construct(cube(3));
  EXPECT_EQ(c.report.verdict, Verdict::holds);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(c.basis[i], to_rational(detail::unit_z(3, i)));
    EXPECT_TRUE(is_zero(c.translates[i]));
  }
  ReverseMeyerResult x = reverse_meyer_construct(cross_h(50));
  EXPECT_EQ(x.report.verdict, Verdict::holds);
  // polar body is the box [-1,1] x [-1/h,1/h]: e1 comes first
  EXPECT_EQ(x.basis[0], qv({1, 0}));
  EXPECT_EQ(x.basis[1], qv({0, 1}));
  // lower-dimensional body: recursion path
  ReverseMeyerResult f = reverse_meyer_construct(flat_square());
  EXPECT_EQ(f.report.verdict, Verdict::holds);
  EXPECT_TRUE(f.report.witnesses["lower_dimensional"].get<bool>());
  EXPECT_EQ(abs(determinant(QMatrix::from_columns(f.basis, 3))), 1);
  // general lattice: basis of the polar lattice
  Lattice l(QMatrix::from_columns({qv({2, 0}), qv({1, 1})}));
  ReverseMeyerResult g = reverse_meyer_construct(cube(2, 3), l);
  EXPECT_EQ(g.report.verdict, Verdict::holds);
  Lattice dual = polar_lattice(l);
  for (const auto& b : g.basis) EXPECT_TRUE(dual.contains(b));
  for (const auto& t : g.translates) EXPECT_TRUE(l.contains(t));
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    ReverseMeyerResult r = reverse_meyer_construct(random_symmetric(2 + seed % 3, 4, 3, seed));
    EXPECT_EQ(r.report.verdict, Verdict::holds) << seed;
  }
}

TEST(Checks, Slicing) {
  CheckReport c = check_slicing(cube(3));
  EXPECT_EQ(c.verdict, Verdict::holds);
  EXPECT_EQ(c.bounds["normal_bound"], 3);
  EXPECT_EQ(c.parts.size(), 1u);
  CheckReport t = check_slicing(simplex_T(3, 50));
  EXPECT_EQ(t.verdict, Verdict::holds);
  EXPECT_TRUE(t.parts.empty());
  EXPECT_EQ(check_slicing(flat_square()).verdict, Verdict::inapplicable);
  EXPECT_EQ(check_slicing(double_pyramid(3, 40)).verdict, Verdict::holds);
}

TEST(Checks, Preimages) {
  for (long n = 3; n <= 4; ++n) {
    Body r = cube_section_pyramid(n);
    CheckReport p = check_preimages(r, detail::unit_z(n, n - 1));
    EXPECT_EQ(p.lhs, ipow(Integer(3), n - 1));
    EXPECT_EQ(p.rhs, 6 * ipow(Integer(4), n - 1));
    EXPECT_EQ(p.verdict, Verdict::holds);
  }
  EXPECT_EQ(check_preimages(cube(3), zv({2, 0, 0})).verdict, Verdict::inapplicable);
}

TEST(Checks, ReverseLoomisWhitney) {
  EXPECT_EQ(check_reverse_lw(cube(3)).verdict, Verdict::holds);
  // only 0 and +-e3 are lattice points, so lambda_3 > 1
  EXPECT_EQ(check_reverse_lw(cube_section_pyramid(3)).verdict, Verdict::inapplicable);
  EXPECT_EQ(count_points(cube_section_pyramid(3)), 3);
  EXPECT_EQ(check_reverse_lw(cube(2, Rational(1, 2))).verdict, Verdict::inapplicable);
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CheckReport x = check_reverse_lw(random_symmetric(2 + seed % 3, 5, 3, seed));
    EXPECT_NE(x.verdict, Verdict::fails);
    applied += x.verdict == Verdict::holds;
  }
  EXPECT_GT(applied, 10);
}

TEST(Checks, AffineImagesAndBoxes) {
  for (long n = 2; n <= 4; ++n)
    for (long k = 1; k <= 6; ++k) {
      CheckReport r = check_translation(box_Q(n, k), QVector(n, Rational(1, 2)));
      EXPECT_EQ(r.verdict, Verdict::holds);
      EXPECT_EQ(r.lhs, ipow(Integer(2), n - 1) * 2 * k);
      EXPECT_EQ(r.rhs, r.lhs);  // sharp
    }
  ZMatrix a = ZMatrix::from_rows({zv({2, 1}), zv({0, 3})});
  EXPECT_EQ(check_affine_image(cross_h(4), a, qv({1, 2})).verdict, Verdict::holds);
  EXPECT_EQ(check_affine_image(simplex_T(3, 2), ZMatrix::identity(3), qv({0, 0, 0})).verdict, Verdict::inapplicable);
}

TEST(Checks, Sumset) {
  CheckReport r = check_sumset({zv({0, 0}), zv({1, 0}), zv({2, 0})}, {zv({0, 0}), zv({3, 0})});
  EXPECT_EQ(r.lhs, 6);
  EXPECT_EQ(r.verdict, Verdict::holds);
  CheckReport ap = check_sumset({zv({0}), zv({1}), zv({2})}, {zv({0}), zv({1})});
  EXPECT_EQ(ap.lhs, ap.rhs);
}

TEST(Checks, Unconditional) {
  for (long m = 2; m <= 4; ++m)
    for (long n = 2; n <= 3; ++n) {
      CheckReport r = check_unconditional_dilate(shrunken_cube(n, m), m);
      EXPECT_EQ(r.lhs, r.rhs);
      EXPECT_EQ(r.verdict, Verdict::holds);
    }
  EXPECT_EQ(check_unconditional_dilate(cube(3), 3).lhs, 343);
  EXPECT_EQ(check_unconditional_dilate(slab(3), 2).verdict, Verdict::inapplicable);
  CheckReport c = check_unconditional_meyer(cube(3));
  EXPECT_EQ(c.verdict, Verdict::holds);
  EXPECT_EQ(check_unconditional_meyer(double_pyramid(3, 100)).verdict, Verdict::holds);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_EQ(check_unconditional_meyer(random_unconditional(3, 3, 3, seed)).verdict, Verdict::holds);
}

TEST(Checks, Toolbox) {
  for (long n = 2; n <= 3; ++n) {
    CheckReport r = check_toolbox(cube(n));
    EXPECT_EQ(r.verdict, Verdict::holds);
    EXPECT_EQ(r.parts.size(), 8u);
  }
  EXPECT_EQ(check_toolbox(cross_h(6)).verdict, Verdict::holds);
  Lattice l(QMatrix::from_columns({qv({2, 0}), qv({1, 1})}));
  EXPECT_EQ(check_toolbox(cube(2, 3), l).verdict, Verdict::holds);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_EQ(check_toolbox(random_symmetric(2 + seed % 2, 4, 3, seed)).verdict, Verdict::holds) << seed;
}

TEST(Checks, VolumeApproximation) {
  CheckReport c = check_vol_approx(cube(2), {1, 2, 4, 8, 16, 32});
  EXPECT_EQ(c.verdict, Verdict::holds);
  EXPECT_EQ(c.rhs, make_rational(4 * 5, 32));
  // boundary layer: (2r+1)^2 points, error (4r+1)/r^2
  EXPECT_EQ(c.lhs, Rational(129, 1024));
  EXPECT_EQ(check_vol_approx(cross_polytope(3), {2, 4, 8, 16}).verdict, Verdict::holds);
  EXPECT_EQ(check_vol_approx(Body::ball(2, 1), {2}).verdict, Verdict::inapplicable);
}

TEST(Checks, Wills) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Body p = random_lattice_polytope(2, 5, 4, seed);
    EXPECT_EQ(check_wills(p, random_translation(2, seed)).verdict, Verdict::holds);
  }
  EXPECT_EQ(check_wills(cube(2, Rational(1, 2)), qv({0, 0})).verdict, Verdict::inapplicable);
}

TEST(Checks, SlicingScan) {
  CheckReport z = slicing_ratio_scan(Lattice::integer(2), {1, 3, 5});
  EXPECT_EQ(z.verdict, Verdict::holds);
  EXPECT_EQ(z.parts[2].witnesses["count"], "81");
  EXPECT_EQ(z.parts[2].witnesses["section_count"], "11");
}

TEST(Fuzz, DeterministicAcrossJobs) {
  FuzzParams p;
  p.probe = "discrete_meyer";
  p.n = 3;
  p.budget = 24;
  p.seed = 11;
  FuzzResult a = fuzz_extremal(p);
  p.jobs = 4;
  FuzzResult b = fuzz_extremal(p);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  ASSERT_EQ(a.leaderboard.size(), 10u);
  for (std::size_t i = 1; i < a.leaderboard.size(); ++i) EXPECT_GE(a.leaderboard[i - 1].ratio, a.leaderboard[i].ratio);
  for (const auto& probe : fuzz_probes()) {
    p.probe = probe;
    p.budget = 6;
    EXPECT_EQ(fuzz_extremal(p).evaluated, 6u);
  }
}
