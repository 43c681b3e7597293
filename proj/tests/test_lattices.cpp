#include <gtest/gtest.h>

#include <random>

#include "gu22/lattices.hpp"

using namespace gu22;

namespace {

RatMat random_int_matrix(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  RatMat m(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = d(rng);
  } while (is_zero(m.det()));
  return m;
}

}  // namespace

TEST(Smith, DivisorsMatchDeterminantValuation) {
  std::mt19937_64 rng(5);
  Dvr<Rat> R(3);
  for (int n = 0; n < 50; ++n) {
    auto A = random_int_matrix(4, rng);
    auto s = smith_normal_form(R, A);
    int sum = 0;
    for (size_t i = 0; i < s.divisors.size(); ++i) {
      sum += s.divisors[i];
      if (i) EXPECT_LE(s.divisors[i - 1], s.divisors[i]);
    }
    EXPECT_EQ(sum, ord_p(A.det(), 3));
    EXPECT_EQ(s.U * A * s.V, s.D);
  }
}

TEST(Smith, KnownExample) {
  Dvr<Rat> R(5);
  RatMat A(2, 2);
  A(0, 0) = 25;
  A(0, 1) = 5;
  A(1, 0) = 0;
  A(1, 1) = 50;
  auto s = smith_normal_form(R, A);
  EXPECT_EQ(s.divisors, (ElementaryDivisors{1, 3}));
}

TEST(Lattice, CanonicalFormAndLength) {
  std::mt19937_64 rng(9);
  Dvr<Rat> R(3);
  for (int n = 0; n < 30; ++n) {
    DvrLattice<Rat> L(R, random_int_matrix(4, rng));
    auto I = DvrLattice<Rat>::standard(R, 4);
    EXPECT_TRUE(I.contains(L));
    EXPECT_EQ(module_length(I, L), ord_p(L.basis().det(), 3));
    EXPECT_EQ(module_length(L, L.scaled(1)), 4);
    EXPECT_EQ(L.standard_dual().standard_dual(), L);
    EXPECT_EQ(L.intersect(I), L);
    EXPECT_EQ(L + I, I);
    auto M = DvrLattice<Rat>(R, random_int_matrix(4, rng));
    EXPECT_EQ(module_length(L + M, L) + module_length(L, L.intersect(M)),
              module_length(L + M, M) + module_length(M, L.intersect(M)));
  }
}

TEST(Lattice, FormDualOfHyperbolicPlane) {
  Dvr<Rat> R(3);
  RatMat H(2, 2);
  H(0, 1) = H(1, 0) = 3;
  auto L = DvrLattice<Rat>::standard(R, 2);
  auto Ld = L.form_dual(H);
  EXPECT_TRUE(Ld.contains(L));
  EXPECT_EQ(module_length(Ld, L), 2);
  EXPECT_EQ(Ld.scaled(1), L);
}

TEST(Lattice, HermitianOverRamifiedExtension) {
  const Tower& t = Tower::get(3);
  Dvr<SymElem> R(t);
  auto L = DvrLattice<SymElem>::standard(R, 2);
  EXPECT_EQ(module_length(L, L.scaled(1)), 2);
  EXPECT_EQ(module_length(L, L.scaled(2)), 4);
  SMat H(2, 2);
  H(0, 1) = SymElem::pi(t);
  H(1, 0) = SymElem::pi(t).conj();
  auto Ld = L.form_dual(H);
  EXPECT_EQ(Ld, L.scaled(-1));
}
