#include <gtest/gtest.h>

#include <set>

#include "gu22/finitegeom.hpp"

using namespace gu22;

namespace {

// Oracle: isotropic d-subspaces found by testing every d-subspace of F_q^n.
long brute_isotropic(const FiniteQuadSpace& V, const FField& F, int d) {
  long n = 0;
  for_each_subspace(F, V.n, d, [&](const FFRows& rows) {
    bool iso = true;
    for (size_t i = 0; iso && i < rows.size(); ++i)
      for (size_t j = i; iso && j < rows.size(); ++j) iso = V.bil(F, rows[i], rows[j]) == 0;
    n += iso;
    return true;
  });
  return n;
}

}  // namespace

TEST(FiniteGeom, StandardSpacesHaveTheirKind) {
  for (int p : {3, 5})
    for (auto [n, k] : {std::pair{4, QuadKind::SplitEven}, std::pair{6, QuadKind::SplitEven},
                        std::pair{4, QuadKind::NonSplitEven}, std::pair{5, QuadKind::Odd}}) {
      auto V = FiniteQuadSpace::standard(p, n, k);
      EXPECT_EQ(V.computed_kind(), k);
      EXPECT_EQ(V.twisted(), k == QuadKind::NonSplitEven);
    }
}

TEST(FiniteGeom, EnumerationMatchesBruteForce) {
  for (auto [n, k] : {std::pair{4, QuadKind::SplitEven}, std::pair{5, QuadKind::Odd}, std::pair{6, QuadKind::SplitEven}}) {
    auto V = FiniteQuadSpace::standard(3, n, k);
    const FField& F = FField::get(3, 1);
    for (int d = 1; d <= n / 2; ++d) {
      auto all = enumerate_isotropic(V, F, d);
      EXPECT_EQ(static_cast<long>(all.size()), brute_isotropic(V, F, d)) << n << " " << d;
      EXPECT_EQ(static_cast<long>(all.size()), static_cast<long>(predicted_isotropic_count(n, d, 3, k)));
      EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
      for (auto& L : all) EXPECT_TRUE(is_totally_isotropic(V, F, L));
    }
  }
}

TEST(FiniteGeom, EnumerationIsThreadIndependent) {
  auto V = FiniteQuadSpace::standard(3, 6, QuadKind::SplitEven);
  const FField& F = FField::get(3, 2);
  EXPECT_EQ(enumerate_isotropic(V, F, 3, 1e6, 1), enumerate_isotropic(V, F, 3, 1e6, 3));
}

TEST(FiniteGeom, CeilingGuard) {
  auto V = FiniteQuadSpace::standard(5, 6, QuadKind::SplitEven);
  EXPECT_THROW(rational_lagrangians(V, 2, 100), CeilingExceeded);
}

TEST(FiniteGeom, SubspaceLattice) {
  const FField& F = FField::get(3, 1);
  auto a = make_subspace(F, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  auto b = make_subspace(F, {{0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_EQ(subspace_sum(F, a, b).dim(), 3);
  EXPECT_EQ(subspace_intersection(F, a, b, 4).dim(), 1);
  EXPECT_EQ(make_subspace(F, {{2, 2, 0, 0}, {1, 1, 0, 0}}).dim(), 1);
}

class Strata : public ::testing::TestWithParam<std::tuple<int, QuadKind>> {};

TEST_P(Strata, PartitionAndBounds) {
  auto [n, kind] = GetParam();
  auto V = FiniteQuadSpace::standard(3, n, kind);
  const int d = V.max_isotropic_dim();
  for (auto& c : stratum_point_counts(V, 2)) {
    EXPECT_EQ(c.sum(), c.total);
    for (auto& [lab, m] : c.by_label) {
      EXPECT_GE(lab.r, 0);
      EXPECT_LE(lab.r, d - 1);
      EXPECT_EQ(lab.sign == '0', n % 2 == 1);
    }
    long expect = (kind == QuadKind::NonSplitEven && c.k % 2)
                      ? 0
                      : static_cast<long>(predicted_isotropic_count(
                            n, d, c.k == 1 ? 3 : 9, kind == QuadKind::NonSplitEven ? QuadKind::SplitEven : kind));
    EXPECT_EQ(c.total, expect);
  }
}

INSTANTIATE_TEST_SUITE_P(Spaces, Strata,
                         ::testing::Values(std::tuple{4, QuadKind::SplitEven}, std::tuple{6, QuadKind::SplitEven},
                                           std::tuple{4, QuadKind::NonSplitEven}, std::tuple{6, QuadKind::NonSplitEven},
                                           std::tuple{5, QuadKind::Odd}));

TEST(FiniteGeom, RationalStratumIsZero) {
  // Over F_p every Lagrangian of a split space is Φ-stable, so r = 0.
  auto V = FiniteQuadSpace::standard(3, 6, QuadKind::SplitEven);
  auto c = stratum_point_counts(V, 1).front();
  EXPECT_EQ(c.by_label.size(), 2u);
  EXPECT_EQ(c.by_label.begin()->first.r, 0);
}

TEST(FiniteGeom, ComponentsSplitEvenly) {
  auto V = FiniteQuadSpace::standard(3, 6, QuadKind::SplitEven);
  const FField& F = FField::get(3, 1);
  auto ref = reference_lagrangian(V, F);
  long plus = 0, minus = 0;
  for (auto& L : rational_lagrangians(V, 1)) (ogr_component(F, L, ref, 6) == '+' ? plus : minus)++;
  EXPECT_EQ(plus, minus);
  EXPECT_EQ(plus, 40);
}

TEST(Fermat, BruteForce) {
  for (int p : {3, 5}) {
    const FField& F = FField::get(p, 1);
    long affine = 0;
    for_each_vector(F, 4, [&](const FFVec& v) {
      int s = 0;
      for (int x : v) s = F.add(s, F.pow(x, p + 1));
      affine += s == 0;
      return true;
    });
    EXPECT_EQ(fermat_count(p, 1), (affine - 1) / (p - 1));
  }
  EXPECT_EQ(fermat_count(3, 1), 16);
  EXPECT_EQ(fermat_count(3, 2), 280);
}

TEST(FiniteGeom, So6So5Bijection) {
  for (auto& r : so6_so5_bijection(3, 3, 2)) {
    EXPECT_TRUE(r.bijective()) << "k=" << r.k;
    EXPECT_TRUE(r.labels_match) << "k=" << r.k;
    EXPECT_EQ(r.source, r.target);
  }
}
