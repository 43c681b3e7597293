#include <gtest/gtest.h>

#include <random>

#include "gu22/exceptional.hpp"
#include "gu22/invariants.hpp"

using namespace gu22;

namespace {

SymElem random_sym(const Tower& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return SymElem(&t, d(rng), d(rng), d(rng), d(rng));
}

Wedge2Elem random_wedge(const Tower& t, std::mt19937_64& rng) {
  Wedge2Elem v;
  for (auto& c : v) c = random_sym(t, rng);
  return v;
}

}  // namespace

class Frame : public ::testing::TestWithParam<std::tuple<long, Uniformizer>> {
 protected:
  const Tower& t() const { return Tower::get(std::get<0>(GetParam()), std::get<1>(GetParam())); }
};

TEST_P(Frame, StarAndFrobenius) {
  IsocrystalFrame fr(t());
  std::mt19937_64 rng(1);
  for (int i = 1; i <= 6; ++i) {
    EXPECT_EQ(fr.hodge_star(fr.x(i)), fr.x(i));
    EXPECT_EQ(fr.phi(fr.y(i)), fr.y(i));
  }
  for (int n = 0; n < 30; ++n) {
    auto v = random_wedge(t(), rng);
    auto a = random_sym(t(), rng);
    EXPECT_EQ(fr.hodge_star(fr.hodge_star(v)), v);
    EXPECT_EQ(fr.hodge_star(a * v), a.conj() * fr.hodge_star(v));
    EXPECT_EQ(fr.phi(fr.hodge_star(v)), fr.hodge_star(fr.phi(v)));
  }
}

TEST_P(Frame, CliffordRelations) {
  IsocrystalFrame fr(t());
  auto xs = fr.x_endos();
  SMat G = clifford_gram(xs);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      EXPECT_EQ(G(i, j), G(j, i));
      auto anti = compose(xs[i], xs[j]) + compose(xs[j], xs[i]);
      auto s = anti.as_scalar();
      ASSERT_TRUE(s.has_value());
      EXPECT_EQ(*s, SymElem(2) * G(i, j));
    }
  EXPECT_FALSE(is_zero(G.det()));
}

TEST_P(Frame, FixedQuadraticSpace) {
  IsocrystalFrame fr(t());
  auto q = quad_invariants(rational_y_gram(fr), t().p);
  EXPECT_EQ(q.dim, 6);
  EXPECT_EQ(q.disc, square_class(Rat(-t().c), t().p));
  EXPECT_EQ(q.hasse, -1);
  auto r = verify_picl(fr);
  EXPECT_TRUE(r.is_scalar);
  EXPECT_EQ(r.reverse_sign, r.predicted_sign);
}

TEST_P(Frame, AdjointIdentities) {
  IsocrystalFrame fr(t());
  std::mt19937_64 rng(2);
  auto xs = fr.x_endos();
  for (int n = 0; n < 20; ++n) {
    Endo v{SMat(4, 4), 1};
    for (int i = 0; i < 6; ++i) v = v + SymElem(random_sym(t(), rng).a()) * xs[i];
    Vec4 x(4), y(4);
    for (auto& c : x) c = random_sym(t(), rng);
    for (auto& c : y) c = random_sym(t(), rng);
    auto r = adjoint_identities(fr, v, x, y);
    EXPECT_TRUE(r.hermitian);
    EXPECT_TRUE(r.alternating);
  }
}

TEST_P(Frame, BaseLattice) {
  IsocrystalFrame fr(t());
  auto L0 = fr.L0();
  EXPECT_EQ(L0.form_dual(fr.y_gram()), fr.L0_dual_expected());
  EXPECT_EQ(module_length(fr.L0_dual_expected(), L0), 1);
  auto L = fr.special_lattice_of(fr.base_lattice());
  EXPECT_EQ(L, fr.L0_dual_expected());
  EXPECT_TRUE(is_special(L));
}

INSTANTIATE_TEST_SUITE_P(Primes, Frame,
                         ::testing::Combine(::testing::Values(3L, 5L),
                                            ::testing::Values(Uniformizer::P, Uniformizer::UP)));

TEST(Tower, SurveyIsValidAndSeeded) {
  const Tower& t = Tower::get(3);
  auto a = tower_survey(t, 40, 17);
  EXPECT_EQ(a.total, 40);
  EXPECT_EQ(a.bad, 0);
  EXPECT_EQ(a.gen_fail, 0);
  for (auto& [r, n] : a.by_r) {
    EXPECT_GE(r, 0);
    EXPECT_LE(r, 2);
  }
  auto b = tower_survey(t, 40, 17);
  EXPECT_EQ(a.by_r, b.by_r);
}

TEST(Tower, Type5LatticeIsSelfDualUpToIndex) {
  const Tower& t = Tower::get(5);
  IsocrystalFrame fr(t);
  RatMat G = rational_y_gram(fr);
  auto L = type5_lattice(G, 5);
  ASSERT_TRUE(L.has_value());
  auto Ld = L->form_dual(G);
  EXPECT_TRUE(L->contains(Ld));
  EXPECT_TRUE(Ld.contains(L->scaled(1)));
  EXPECT_EQ(module_length(*L, Ld), 5);
}
