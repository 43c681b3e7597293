#include <gtest/gtest.h>

#include "gu22/localmodel.hpp"

using namespace gu22;

namespace {

const NaiveEnumeration& naive3() {
  static const NaiveEnumeration e = enumerate_naive_points(3);
  return e;
}

}  // namespace

TEST(LocalModel, GramAndPi) {
  for (int p : {3, 5}) {
    auto J = local_model_gram(p);
    const FField& F = FField::get(p, 1);
    auto form = [&](const FFVec& x, const FFVec& y) {
      int s = 0;
      for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l) s = F.add(s, F.mul(x[k], F.mul(J[k][l], y[l])));
      return s;
    };
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) EXPECT_EQ(J[i][j], J[j][i]);
    // Over F_p, ϖ² = 0 and ϖ is skew-adjoint (conj ϖ = −ϖ).
    for (int i = 0; i < 8; ++i) {
      FFVec e(8, 0);
      e[i] = 1;
      EXPECT_EQ(local_model_pi(p, local_model_pi(p, e)), FFVec(8, 0));
      for (int j = 0; j < 8; ++j) {
        FFVec f(8, 0);
        f[j] = 1;
        EXPECT_EQ(form(local_model_pi(p, e), f), F.neg(form(e, local_model_pi(p, f))));
      }
    }
  }
}

TEST(LocalModel, StandardPoints) {
  for (int p : {3, 5})
    for (int r = 0; r < 3; ++r) {
      auto F = standard_point(p, r);
      EXPECT_TRUE(is_naive_point(p, F));
      EXPECT_EQ(pi_rank(p, F), r);
    }
}

TEST(LocalModel, UniquePointAndRoundTrip) {
  auto& e = naive3();
  EXPECT_EQ(e.counts[0], 1);
  EXPECT_EQ(e.counts[1], 40);
  EXPECT_EQ(e.counts[2], 120);
  EXPECT_EQ(static_cast<long>(e.points.size()), e.counts[0] + e.counts[1] + e.counts[2]);
  for (auto& pt : e.points) {
    EXPECT_TRUE(is_naive_point(3, pt.F));
    EXPECT_EQ(pi_rank(3, pt.F), pt.rank);
  }
  EXPECT_EQ(e.points.front().F.dim(), 4);
}

TEST(LocalModel, EnumerationIsThreadIndependent) {
  auto a = local_model_lagrangians(3, 1e6, 1);
  auto b = local_model_lagrangians(3, 1e6, 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(static_cast<long>(a.size()), naive3().lagrangians);
}

TEST(LocalModel, TangentDimensions) {
  auto h = tangent_histogram(naive3());
  long fives = 0;
  for (auto& [k, n] : h) {
    auto [r, dim] = k;
    EXPECT_GE(dim, 3);
    EXPECT_LE(dim, 5);
    if (dim == 5) fives += n;
    EXPECT_EQ(dim == 3, r == 1);
  }
  EXPECT_EQ(fives, 1);
  EXPECT_EQ(tangent_dimension(3, standard_point(3, 0)), 5);
  EXPECT_EQ(tangent_dimension(3, standard_point(3, 1)), 3);
  EXPECT_EQ(tangent_dimension(3, standard_point(3, 2)), 4);
}

TEST(LocalModel, ComponentSplit) {
  auto a = component_split_audit(naive3());
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.minus[0] + a.minus[2] + a.plus[1], 0);
}

TEST(LocalModel, GroupActionPreservesStrata) {
  auto& e = naive3();
  for (unsigned long seed = 1; seed <= 20; ++seed) {
    auto g = random_group_element(3, seed);
    std::array<long, 3> c{};
    for (auto& pt : e.points) {
      auto F = apply_group(3, g, pt.F);
      ASSERT_TRUE(is_naive_point(3, F));
      ++c[pi_rank(3, F)];
    }
    EXPECT_EQ(c, e.counts);
  }
}

TEST(LocalModel, ChartsAtThree) {
  auto rep = verify_chart_equations(3, 3);
  EXPECT_EQ(rep.checks.size(), 6u);
  for (auto& c : rep.checks) EXPECT_TRUE(c.matches) << c.chart << " mod " << c.modulus << ": " << c.first_discrepancy;
  EXPECT_TRUE(rep.all_match());
}

TEST(LocalModel, ChartsWithRamifiedUnit) {
  const Tower& t = Tower::get(3, Uniformizer::UP);
  EXPECT_TRUE(verify_chart_equations(3, t.c).all_match());
}
