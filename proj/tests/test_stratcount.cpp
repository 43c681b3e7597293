#include <gtest/gtest.h>

#include "gu22/stratcount.hpp"

using namespace gu22;

TEST(Links, QuadraticType5) {
  const Tower& t = Tower::get(3);
  auto Q = quadratic_ambient(t);
  auto L5 = quadratic_type5(Q);
  ASSERT_TRUE(L5.has_value());
  EXPECT_EQ(L5->type, 5);
  auto rs = residue_space(Q, *L5);
  EXPECT_EQ(rs.space.n, 5);
  auto lt = link_counts(Q, *L5);
  EXPECT_EQ(lt.sub[1], 40);
  EXPECT_EQ(lt.sub[3], 40);
  for (auto& [type, n] : lt.super) EXPECT_GT(type, 5);
}

TEST(Links, PrefilterDoesNotChangeCounts) {
  const Tower& t = Tower::get(3);
  auto Q = quadratic_ambient(t);
  auto L5 = *quadratic_type5(Q);
  LinkOptions off;
  off.residue_prefilter = false;
  EXPECT_EQ(link_counts(Q, L5).sub, link_counts(Q, L5, off).sub);
}

TEST(Links, SubVertexIsThreadIndependent) {
  const Tower& t = Tower::get(3);
  auto Q = quadratic_ambient(t);
  auto L5 = *quadratic_type5(Q);
  LinkOptions two;
  two.threads = 2;
  auto a = enumerate_subvertex(Q, L5), b = enumerate_subvertex(Q, L5, two);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].L, b[i].L);
}

TEST(Links, CertifyRejectsNonVertexLattices) {
  const Tower& t = Tower::get(3);
  auto Q = quadratic_ambient(t);
  auto L5 = *quadratic_type5(Q);
  EXPECT_FALSE(certify(Q, L5.L.scaled(-1)).has_value());
  auto again = certify(Q, L5.L);
  ASSERT_TRUE(again.has_value());
  EXPECT_EQ(again->type, 5);
}

class NonNeutral : public ::testing::TestWithParam<long> {};

TEST_P(NonNeutral, IncidenceAndResidues) {
  const long p = GetParam();
  const Tower& t = Tower::get(p);
  auto H = hermitian_ambient(1, t);
  EXPECT_FALSE(H.neutral);
  auto T = hermitian_self_dual(H);
  EXPECT_EQ(T.type, 0);
  auto rs = residue_space(H, T);
  EXPECT_EQ(rs.space.n, 4);
  EXPECT_EQ(rs.space.kind, QuadKind::NonSplitEven);
  auto subs = enumerate_subvertex(H, T);
  EXPECT_EQ(static_cast<long>(subs.size()), p * p + 1);
  for (auto& s : subs) {
    EXPECT_EQ(s.type, 2);
    EXPECT_TRUE(residue_space(H, s, false).matches());
  }
  EXPECT_EQ(incidence(H, T, 2).neighbours, p * (p * p + 1));
}

INSTANTIATE_TEST_SUITE_P(Primes, NonNeutral, ::testing::Values(3L, 5L));

TEST(Links, NeutralHermitianOrders) {
  const Tower& t = Tower::get(3);
  auto H = hermitian_ambient(0, t);
  auto T0 = certify(H, t0_bar(H));
  ASSERT_TRUE(T0.has_value());
  EXPECT_EQ(T0->type, 4);
  EXPECT_TRUE(in_even_class(H, *T0));
  auto S = hermitian_self_dual(H);
  auto o = order_check(H, S, S);
  EXPECT_EQ(o.leq, Relation::Equal);
  auto cands = prec_candidates(H, *T0);
  EXPECT_FALSE(cands.empty());
  for (auto& c : cands) EXPECT_TRUE(c.type == 0 || c.type == 4);
}

TEST(Links, CorrespondenceAudit) {
  auto au = correspondence_audit(Tower::get(3));
  EXPECT_FALSE(au.rows.empty());
  for (auto& r : au.rows) EXPECT_TRUE(r.agree()) << r.relation << " vs " << r.dictionary;
}
