#include <gtest/gtest.h>

#include "gu22/invariants.hpp"

using namespace gu22;

class Kottwitz : public ::testing::TestWithParam<std::tuple<long, Uniformizer>> {};

TEST_P(Kottwitz, RepresentativesAndNeutrality) {
  auto [p, kind] = GetParam();
  const Tower& t = Tower::get(p, kind);
  const SMat H = antidiagonal_hermitian(4);
  auto b0 = make_group_element(b0_matrix(t), H);
  auto b1 = make_group_element(b1_matrix(t), H);
  EXPECT_EQ(kottwitz(b0), (KottwitzClass{1, 0}));
  EXPECT_EQ(kottwitz(b1), (KottwitzClass{1, 1}));
  EXPECT_TRUE(is_mu_neutral(b0));
  EXPECT_FALSE(is_mu_neutral(b1));
  EXPECT_TRUE(is_basic_slope_half(b0, t));
  EXPECT_TRUE(is_basic_slope_half(b1, t));

  auto L = lambda_bar(t);
  EXPECT_TRUE(dil_conditions(L, b0, H).all());
  EXPECT_TRUE(dil_conditions(L, b1, H).all());
  auto n0 = neutrality_report(b0, L, H, cb_gram(0, t));
  auto n1 = neutrality_report(b1, L, H, cb_gram(1, t));
  EXPECT_TRUE(n0.agree);
  EXPECT_TRUE(n0.i && n0.ii_squared && n0.iii && n0.iv);
  EXPECT_TRUE(n1.agree);
  EXPECT_FALSE(n1.i || n1.ii_squared || n1.iii || n1.iv);
  EXPECT_EQ(n0.iv_length % 2, 0);
  EXPECT_EQ(n1.iv_length % 2, 1);
}

INSTANTIATE_TEST_SUITE_P(Primes, Kottwitz,
                         ::testing::Combine(::testing::Values(3L, 5L, 7L),
                                            ::testing::Values(Uniformizer::P, Uniformizer::UP)));

TEST(Invariants, SquareClasses) {
  EXPECT_EQ(square_class(Rat(4), 3).label(), "1");
  EXPECT_EQ(square_class(Rat(2), 3).label(), "u");
  EXPECT_EQ(square_class(Rat(-3), 3).label(), "up");
  EXPECT_EQ(square_class(Rat(1, 27), 3).label(), "p");
  EXPECT_EQ(square_class(Rat(-1), 5).label(), "1");
}

TEST(Invariants, HasseOfDiagonalForms) {
  // Hasse invariant is the product of pairwise Hilbert symbols of the diagonal.
  for (long p : {3L, 5L}) {
    std::vector<Rat> d{Rat(1), Rat(p), Rat(-p), Rat(smallest_nonresidue(p)), Rat(p * smallest_nonresidue(p))};
    RatMat G = RatMat::diag(d);
    int h = 1;
    for (size_t i = 0; i < d.size(); ++i)
      for (size_t j = i + 1; j < d.size(); ++j) h *= hilbert_symbol(d[i], d[j], p);
    Rat det = 1;
    for (auto& x : d) det *= x;
    auto q = quad_invariants(G, p);
    EXPECT_EQ(q.dim, 5);
    EXPECT_EQ(q.hasse, h);
    EXPECT_EQ(q.disc, square_class(det, p));
  }
}

TEST(Invariants, CongruenceDiagonalization) {
  RatMat G(3, 3);
  G(0, 1) = G(1, 0) = 1;
  G(2, 2) = 3;
  auto d = diagonalize_congruence(G);
  Rat prod = 1;
  for (auto& x : d) prod *= x;
  EXPECT_EQ(square_class(prod, 5), square_class(G.det(), 5));
  EXPECT_EQ(quad_invariants(G, 5).hasse, quad_invariants(RatMat::diag(d), 5).hasse);
}

TEST(Invariants, NormsFromTheRamifiedExtension) {
  for (long p : {3L, 5L}) {
    const Tower& t = Tower::get(p);
    EXPECT_TRUE(is_norm(Rat(1), t));
    EXPECT_TRUE(is_norm(Rat(-t.c), t));
    EXPECT_FALSE(is_norm(Rat(t.u), t));
  }
}
