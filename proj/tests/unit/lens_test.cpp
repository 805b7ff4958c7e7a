#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "dlat/errors.hpp"
#include "dlat/lens.hpp"

namespace dlat {
namespace {

// Recursive surgery formula for lens space correction terms.
Rational recursive_d(Int p, Int q, Int i) {
  if (p == 1) return 0;
  const Int r = p % q, j = i % q;
  const Int t = 2 * i + 1 - p - q;
  return Rational(t * t, 4 * p * q) - Rational(1, 4) - recursive_d(q, r, j);
}

std::vector<Rational> sorted_values(const DTable& t) {
  std::vector<Rational> v;
  for (const auto& e : t.entries) v.push_back(e.d);
  std::sort(v.begin(), v.end());
  return v;
}

TEST(Lens, ContinuedFractions) {
  EXPECT_EQ(neg_cont_frac(3, 1).coeffs, IntVec{3});
  EXPECT_EQ(neg_cont_frac(9, 2).coeffs, (IntVec{5, 2}));
  EXPECT_EQ(neg_cont_frac(9, 7).coeffs, (IntVec{2, 2, 2, 3}));
  EXPECT_TRUE(neg_cont_frac(1, 1).coeffs.empty());
  for (Int p = 2; p <= 60; ++p)
    for (Int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ContFrac cf = neg_cont_frac(p, q);
      EXPECT_EQ(evaluate(cf), Rational(p, q));
      for (Int a : cf.coeffs) EXPECT_GE(a, 2);
    }
  for (auto [p, q] : std::vector<std::pair<Int, Int>>{{6, 4}, {3, 3}, {3, 0}, {2, 5}}) {
    try {
      neg_cont_frac(p, q);
      FAIL() << p << "/" << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadFraction);
    }
  }
}

TEST(Lens, LinearPlumbing) {
  EXPECT_EQ(linear_plumbing(3, 1).gram(), (IntMatrix{{3}}));
  EXPECT_EQ(linear_plumbing(9, 2).gram(), (IntMatrix{{5, -1}, {-1, 2}}));
  auto l = linear_plumbing(9, 7);
  EXPECT_EQ(l.rank(), 4);
  EXPECT_EQ(l.det(), 9);
  for (Int p = 2; p <= 400; p += 7)
    for (Int q = 1; q < p; q += 3)
      if (std::gcd(p, q) == 1) EXPECT_EQ(linear_plumbing(p, q).det(), p);
}

TEST(Lens, TreePlumbing) {
  EXPECT_EQ(tree_plumbing({{3}, {}}).gram(), (IntMatrix{{3}}));
  EXPECT_EQ(tree_plumbing({{5, 2}, {{0, 1}}}).gram(), linear_plumbing(9, 2).gram());
  // Star with centre 1 and three legs of weight 2: determinant goes negative.
  try {
    tree_plumbing({{1, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
  EXPECT_THROW(tree_plumbing({{2, 2, 2}, {{0, 1}, {1, 0}}}), Error);
}

TEST(Lens, SmallTables) {
  LensDTable s3 = lens_d(1, 1);
  ASSERT_EQ(s3.table.entries.size(), 1u);
  EXPECT_EQ(s3.table.entries[0].d, 0);
  EXPECT_EQ(sorted_values(lens_d(3, 1).table),
            (std::vector<Rational>{Rational(-1, 6), Rational(-1, 6), Rational(1, 2)}));
  LensDTable t9 = lens_d(9, 1);
  for (std::size_t i = 0; i < t9.labels.size(); ++i) {
    if (t9.labels[i] == 0) EXPECT_EQ(t9.table.entries[i].d, 2);
    if (t9.labels[i] == 3 || t9.labels[i] == 6) EXPECT_EQ(t9.table.entries[i].d, 0);
  }
  EXPECT_THROW(lens_d(4, 1), Error);
}

TEST(Lens, MatchesRecursiveFormula) {
  for (Int p = 2; p <= 45; ++p)
    for (Int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      std::vector<Rational> expected;
      for (Int i = 0; i < p; ++i) expected.push_back(recursive_d(p, q, i));
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(sorted_values(d_table(linear_plumbing(p, q))), expected) << p << "/" << q;
    }
}

TEST(Lens, SubsetT) {
  auto t = subset_T(9, 1);
  ASSERT_EQ(t.size(), 3u);
  LensDTable tab = lens_d(9, 1);
  std::vector<Int> labels;
  for (const auto& c : t) labels.push_back(tab.labels[*tab.table.find(c)]);
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(labels, (std::vector<Int>{0, 3, 6}));
  EXPECT_EQ(subset_T(1, 1).size(), 1u);
  for (Int m = 1; m * m <= 225; m += 2) {
    const Int p = m * m;
    for (Int q = 1; q < std::max<Int>(p, 2); q += 1 + p / 17) {
      if (p > 1 && std::gcd(p, q) != 1) continue;
      auto cls = subset_T(p, q);
      EXPECT_EQ(static_cast<Int>(cls.size()), m);
      auto lat = linear_plumbing(p, q);
      for (const auto& c : cls) EXPECT_NE(std::find(cls.begin(), cls.end(), conjugate(lat, c)), cls.end());
    }
  }
  for (Int p : {8, 15, 4}) {
    try {
      subset_T(p, 1);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotOddSquare);
    }
  }
}

TEST(Lens, OrientationReverseSmall) {
  for (auto [p, q] : std::vector<std::pair<Int, Int>>{{1, 1}, {3, 1}, {9, 2}, {25, 7}, {49, 18}}) {
    TorsorIsoWitness w = orientation_reverse_check(p, q);
    EXPECT_EQ(w.sign, -1);
    EXPECT_TRUE(verify_torsor_iso(linear_plumbing(p, q), p == 1 ? linear_plumbing(1, 1) : linear_plumbing(p, p - q), w));
  }
}

}  // namespace
}  // namespace dlat
