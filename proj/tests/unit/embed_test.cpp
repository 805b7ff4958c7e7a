#include <random>

#include <gtest/gtest.h>

#include "dlat/embed.hpp"
#include "dlat/errors.hpp"

namespace dlat {
namespace {

IntMatrix path_gram(int n, Int diag) {
  IntMatrix g(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) {
    g[i][i] = diag;
    if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
  }
  return g;
}

IntMatrix e8_gram() {
  IntMatrix g = path_gram(7, 2);
  for (auto& r : g) r.push_back(0);
  g.push_back(IntVec(8, 0));
  g[7][7] = 2;
  g[4][7] = g[7][4] = -1;
  return g;
}

TEST(Embed, SquareRootOfFour) {
  auto lat = lattice_from_gram({{4}});
  EmbedResult r = embed(lat, 1);
  ASSERT_EQ(r.status, EmbedStatus::Embeds);
  EXPECT_EQ(r.witness->matrix, (IntMatrix{{2}}));
  EXPECT_TRUE(verify_witness(lat, EmbeddingWitness{{{2}}}));
  EXPECT_FALSE(verify_witness(lat, EmbeddingWitness{{{1}}}));
  EXPECT_THROW(verify_witness(lat, EmbeddingWitness{{{1}, {1}}}), Error);
}

TEST(Embed, A2) {
  auto lat = lattice_from_gram(path_gram(2, 2));
  EXPECT_EQ(embed(lat, 2).status, EmbedStatus::DoesNotEmbed);
  EmbedResult r = embed(lat, 3);
  ASSERT_EQ(r.status, EmbedStatus::Embeds);
  EXPECT_TRUE(verify_witness(lat, *r.witness));
  EXPECT_TRUE(verify_witness(lat, EmbeddingWitness{{{1, -1, 0}, {0, 1, -1}}}));
}

TEST(Embed, E8DoesNotEmbed) {
  auto lat = lattice_from_gram(e8_gram());
  EmbedResult r = embed(lat, 8);
  EXPECT_EQ(r.status, EmbedStatus::DoesNotEmbed);
}

TEST(Embed, BudgetGivesInconclusive) {
  auto lat = lattice_from_gram(e8_gram());
  Limits l;
  l.budget_nodes = 10;
  EXPECT_EQ(embed(lat, 8, l).status, EmbedStatus::Inconclusive);
  EXPECT_THROW(embed_or_throw(lat, 8, l), Error);
}

TEST(Embed, RankAboveTargetDoesNotEmbed) {
  EXPECT_EQ(embed(lattice_from_gram(identity_matrix(3)), 2).status, EmbedStatus::DoesNotEmbed);
}

TEST(Embed, Monotone) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<Int> dist(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + trial % 3, n = r + 1;
    IntMatrix w(r, IntVec(n));
    for (auto& row : w)
      for (auto& v : row) v = dist(rng);
    IntMatrix g = multiply_transpose(w, w);
    if (determinant(g) == 0) continue;
    auto lat = lattice_from_gram(g);
    EmbedResult a = embed(lat, n);
    ASSERT_EQ(a.status, EmbedStatus::Embeds);
    EXPECT_TRUE(verify_witness(lat, *a.witness));
    EmbedResult b = embed(lat, n + 1);
    ASSERT_EQ(b.status, EmbedStatus::Embeds);
    EXPECT_TRUE(verify_witness(lat, *b.witness));
  }
}

TEST(Embed, Deterministic) {
  auto lat = lattice_from_gram({{3, 1, 0}, {1, 3, 1}, {0, 1, 3}});
  EmbedResult a = embed(lat, 5), b = embed(lat, 5);
  ASSERT_EQ(a.status, EmbedStatus::Embeds);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(Embed, IsEuclidean) {
  for (int n = 1; n <= 12; ++n) EXPECT_TRUE(is_euclidean(lattice_from_gram(identity_matrix(n))));
  EXPECT_FALSE(is_euclidean(lattice_from_gram(e8_gram())));
  EXPECT_FALSE(is_euclidean(dplus_lattice(8)));
  EXPECT_FALSE(is_euclidean(dplus_lattice(12)));
  try {
    is_euclidean(lattice_from_gram({{2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnimodular);
  }
}

TEST(Embed, ChainWithFive) {
  // Linear chain (5, 2), det 9.
  auto lat = lattice_from_gram({{5, -1}, {-1, 2}});
  // Norm-2 vectors of Z^2 are (+-1,+-1); norm-5 are (+-2,+-1),(+-1,+-2); (2,1).(-1,1) = -1.
  EmbedResult r = embed(lat, 2);
  ASSERT_EQ(r.status, EmbedStatus::Embeds);
  EXPECT_TRUE(verify_witness(lat, *r.witness));
}

}  // namespace
}  // namespace dlat
