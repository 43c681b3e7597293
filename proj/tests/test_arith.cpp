#include <gtest/gtest.h>

#include <random>

#include "gu22/arith.hpp"

using namespace gu22;

TEST(Arith, PrimesAndValuations) {
  EXPECT_TRUE(is_prime(3));
  EXPECT_TRUE(is_prime(7919));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(ord_p(Int(162), 3), 4);
  EXPECT_EQ(ord_p(Rat(5, 27), 3), -3);
  EXPECT_EQ(pow_p(5, -2), Rat(1, 25));
  EXPECT_THROW(require_odd_prime(2), std::invalid_argument);
}

TEST(Arith, LegendreMatchesEulerCriterion) {
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (long a = 1; a < p; ++a) {
      long e = 1;
      for (long i = 0; i < (p - 1) / 2; ++i) e = e * a % p;
      EXPECT_EQ(legendre(a, p), e == 1 ? 1 : -1) << a << " mod " << p;
    }
}

TEST(Arith, SmallestNonresidue) {
  EXPECT_EQ(smallest_nonresidue(3), 2);
  EXPECT_EQ(smallest_nonresidue(7), 3);
  EXPECT_EQ(smallest_nonresidue(17), 3);
}

// Brute-force oracle: (a,b)_p = 1 iff ax² + by² = z² has a nonzero solution mod p^3
// with a primitive vector, for a, b of valuation ≤ 1.
int hilbert_brute(long a, long b, long p) {
  long m = p * p * p;
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y)
      for (long z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (((a * x % m * x + b * y % m * y - z * z) % m + m) % m == 0) return 1;
      }
  return -1;
}

TEST(Arith, HilbertSymbolBruteForce) {
  const long p = 3;
  std::vector<long> reps{1, 2, 3, 6, -1, -3};
  for (long a : reps)
    for (long b : reps) EXPECT_EQ(hilbert_symbol(Rat(a), Rat(b), p), hilbert_brute(a, b, p)) << a << "," << b;
}

TEST(Arith, HilbertSymbolProperties) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(1, 200);
  for (long p : {3L, 5L, 7L})
    for (int n = 0; n < 200; ++n) {
      Rat a(d(rng) * (n % 2 ? -1 : 1)), b(d(rng)), c(d(rng));
      EXPECT_EQ(hilbert_symbol(a, b, p), hilbert_symbol(b, a, p));
      EXPECT_EQ(hilbert_symbol(a, -a, p), 1);
      EXPECT_EQ(hilbert_symbol(a, b * c, p), hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p));
    }
}

TEST(Arith, TowerConstants) {
  for (long p : {3L, 5L, 7L}) {
    const Tower& t = Tower::get(p);
    EXPECT_EQ(t.c, p);
    EXPECT_EQ(legendre(t.u, p), -1);
    const Tower& tu = Tower::get(p, Uniformizer::UP);
    EXPECT_EQ(tu.c, tu.u * p);
    EXPECT_EQ(tu.eta_is_eps(), 1);
  }
}

namespace {

SymElem random_sym(const Tower& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  Rat a(d(rng), 1 + (d(rng) + 5) % 3);
  a.canonicalize();
  return SymElem(&t, a, d(rng), d(rng), d(rng));
}

}  // namespace

TEST(Arith, SymElemFieldAxioms) {
  std::mt19937_64 rng(11);
  for (Uniformizer k : {Uniformizer::P, Uniformizer::UP}) {
    const Tower& t = Tower::get(5, k);
    SymElem w = SymElem::pi(t), e = SymElem::eps(t);
    EXPECT_EQ(w * w, SymElem(Rat(t.c)));
    EXPECT_EQ(e * e, SymElem(Rat(t.u)));
    EXPECT_EQ(w.valuation(), 1);
    EXPECT_EQ(SymElem(Rat(t.p)).valuation(t.p), 2);
    for (int n = 0; n < 100; ++n) {
      SymElem a = random_sym(t, rng), b = random_sym(t, rng), c = random_sym(t, rng);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b).sigma(), a.sigma() * b.sigma());
      EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
      EXPECT_EQ(a.conj().conj(), a);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), SymElem(1));
        if (!b.is_zero()) EXPECT_EQ((a * b).valuation(), a.valuation() + b.valuation());
      }
    }
  }
}

TEST(Arith, FiniteFieldAxioms) {
  for (auto [p, k] : {std::pair{3L, 2}, std::pair{5L, 1}, std::pair{3L, 3}}) {
    const FField& F = FField::get(p, k);
    const int q = F.q();
    for (int x = 1; x < q; ++x) {
      EXPECT_EQ(F.mul(x, F.inv(x)), 1);
      EXPECT_EQ(F.pow(x, q - 1), 1);
      EXPECT_EQ(F.frob(x), F.pow(x, p));
    }
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        EXPECT_EQ(F.add(x, F.neg(x)), 0);
        EXPECT_EQ(F.frob(F.add(x, y)), F.add(F.frob(x), F.frob(y)));
        for (int z = 0; z < q; z += 2) EXPECT_EQ(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)));
      }
  }
}

TEST(Arith, WittFrobeniusLift) {
  for (long p : {3L, 5L}) {
    WittRing W(p, 2, 6);
    auto g = TruncWitt::generator(W);
    EXPECT_EQ(g.frobenius().frobenius(), g);
    TruncWitt gp = TruncWitt::constant(W, 1);
    for (long i = 0; i < p; ++i) gp = gp * g;
    EXPECT_EQ((g.frobenius() - gp).reduce_mod_p().value(), 0);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<int64_t> d(0, W.pm() - 1);
    for (int n = 0; n < 50; ++n) {
      TruncWitt a(W, {d(rng), d(rng)}), b(W, {d(rng), d(rng)});
      EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
      EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
    }
  }
}

TEST(Arith, RamifiedValuation) {
  WittRing W(3, 2, 6);
  auto one = TruncWitt::constant(W, 1), zero = TruncWitt::constant(W, 0), three = TruncWitt::constant(W, 3);
  EXPECT_EQ(RamElem(one, zero, 3).valuation(), 0);
  EXPECT_EQ(RamElem(zero, one, 3).valuation(), 1);
  EXPECT_EQ(RamElem(three, zero, 3).valuation(), 2);
  EXPECT_EQ(RamElem(zero, three, 3).valuation(), 3);
  EXPECT_THROW(RamElem(zero, zero, 3).valuation(), PrecisionExhausted);
}
