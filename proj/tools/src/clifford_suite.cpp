#include <map>
#include <random>

#include "gu22/exceptional.hpp"
#include "suite.hpp"

namespace gu22::cli {

namespace {

std::string matrix_diff(const SMat& got, const SMat& want) {
  std::ostringstream os;
  int n = 0;
  for (int i = 0; i < got.rows(); ++i)
    for (int j = i; j < got.cols(); ++j)
      if (got(i, j) != want(i, j)) {
        if (n++) os << "; ";
        os << "(" << i + 1 << "," << j + 1 << ") computed " << got(i, j).str() << " printed " << want(i, j).str();
      }
  return n ? os.str() : "";
}

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

SMat printed_x_gram(const Tower& t) {
  SMat G(6, 6);
  G(0, 1) = G(1, 0) = SymElem(Rat(-1, 2));
  G(2, 2) = SymElem(frac(-1, t.c));
  G(3, 3) = SymElem(1);
  G(4, 4) = G(5, 5) = SymElem(Rat(-1, 2));
  return G;
}

SMat printed_y_gram(const Tower& t) {
  Rat cp = frac(t.c, t.p);
  Rat u(t.u);
  return SMat::diag({SymElem(Rat(-cp)), SymElem(Rat(cp * u)), SymElem(Rat(-u / t.c)), SymElem(u), SymElem(-1),
                     SymElem(u)});
}

SMat to_smat(const QMat& m) {
  SMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = SymElem(m(i, j));
  return r;
}

SymElem random_sym(const Tower& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return SymElem(&t, d(rng), d(rng), d(rng), d(rng));
}

}  // namespace

void clifford_suite(Suite& s) {
  const Tower& t = Tower::get(s.cfg().p, s.cfg().uniformizer);
  const IsocrystalFrame fr(t);
  std::mt19937_64 rng(s.cfg().seed);

  s.add("clifford.x-gram", "Gram matrix of the Clifford form on the x-basis", claim("printed matrix"), [&] {
    auto d = matrix_diff(clifford_gram(fr.x_endos()), printed_x_gram(t));
    return Outcome{d.empty() ? "printed matrix" : "differs", d.empty(), d};
  });
  s.add("clifford.y-gram", "Gram matrix of the Clifford form on the y-basis", claim("printed matrix"), [&] {
    auto d = matrix_diff(to_smat(fr.y_gram()), printed_y_gram(t));
    return Outcome{d.empty() ? "printed matrix" : "differs", d.empty(), d};
  });
  s.add("clifford.disc-hasse", "discriminant and Hasse invariant of the fixed quadratic space",
        claim("disc " + square_class(Rat(-t.c), t.p).label() + ", hasse -1"), [&] {
          auto q = quad_invariants(rational_y_gram(fr), t.p);
          auto want = square_class(Rat(-t.c), t.p);
          return Outcome{"disc " + q.disc.label() + ", hasse " + std::to_string(q.hasse),
                         q.dim == 6 && q.disc == want && q.hasse == -1, ""};
        });
  s.add("clifford.picl", "the product of the y-basis recovers the uniformizer", claim("pi"), [&] {
    auto r = verify_picl(fr);
    return Outcome{r.is_scalar ? r.scalar.str() : "not scalar", r.is_scalar && r.matches_pi, ""};
  });
  s.add("clifford.picl-reverse", "reversed product sign from anticommutation",
        oracle("sign from the Gram", "pairwise anticommutation parity"), [&] {
          auto r = verify_picl(fr);
          return Outcome{std::to_string(r.reverse_sign), r.reverse_sign == r.predicted_sign && r.reverse_sign != 0,
                         "predicted " + std::to_string(r.predicted_sign)};
        });
  s.add("clifford.x-star-fixed", "the x-basis spans the star-fixed part", claim("x_i fixed, i = 1..6"), [&] {
    std::string bad;
    for (int i = 1; i <= 6; ++i)
      if (fr.hodge_star(fr.x(i)) != fr.x(i)) bad += (bad.empty() ? "x" : ",x") + std::to_string(i);
    return Outcome{bad.empty() ? "all fixed" : "not fixed: " + bad, bad.empty(), ""};
  });
  s.add("clifford.star-involution", "star is a conjugate-linear involution", identity("true on 50 samples"), [&] {
    long bad = 0;
    for (int n = 0; n < 50; ++n) {
      Wedge2Elem v;
      for (auto& c : v) c = random_sym(t, rng);
      if (fr.hodge_star(fr.hodge_star(v)) != v) ++bad;
      SymElem a = random_sym(t, rng);
      if (fr.hodge_star(a * v) != a.conj() * fr.hodge_star(v)) ++bad;
    }
    return Outcome{bad ? std::to_string(bad) + " failures" : "true on 50 samples", bad == 0, ""};
  });
  s.add("clifford.phi-fixes-y", "the y-basis is fixed by the Frobenius on the wedge square", claim("y_i fixed"), [&] {
    std::string bad;
    for (int i = 1; i <= 6; ++i)
      if (fr.phi(fr.y(i)) != fr.y(i)) bad += (bad.empty() ? "y" : ",y") + std::to_string(i);
    return Outcome{bad.empty() ? "all fixed" : "not fixed: " + bad, bad.empty(), ""};
  });
  s.add("clifford.phi-star", "Frobenius commutes with star", claim("true on 50 samples"), [&] {
    long bad = 0;
    for (int n = 0; n < 50; ++n) {
      Wedge2Elem v;
      for (auto& c : v) c = random_sym(t, rng);
      if (fr.phi(fr.hodge_star(v)) != fr.hodge_star(fr.phi(v))) ++bad;
    }
    return Outcome{bad ? std::to_string(bad) + " failures" : "true on 50 samples", bad == 0, ""};
  });
  s.add("clifford.square-scalar", "v squared is the scalar [v,v]", claim("true on 100 samples"), [&] {
    auto xs = fr.x_endos();
    SMat G = clifford_gram(xs);
    std::uniform_int_distribution<int> d(-4, 4);
    long bad = 0;
    for (int n = 0; n < 100; ++n) {
      std::vector<SymElem> c(6);
      Endo v{SMat(4, 4), 1};
      for (int i = 0; i < 6; ++i) {
        c[i] = SymElem(Rat(d(rng)));
        v = v + c[i] * xs[i];
      }
      SymElem q;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) q += c[i] * c[j] * G(i, j);
      auto sq = compose(v, v).as_scalar();
      if (!sq || *sq != q) ++bad;
    }
    return Outcome{bad ? std::to_string(bad) + " failures" : "true on 100 samples", bad == 0, ""};
  });
  s.add("clifford.adjoint", "adjoint identities for the hermitian and alternating forms",
        claim("true on 100 random triples"), [&] {
          auto xs = fr.x_endos();
          long bad = 0;
          for (int n = 0; n < 100; ++n) {
            Endo v{SMat(4, 4), 1};
            for (int i = 0; i < 6; ++i) v = v + SymElem(random_sym(t, rng).a()) * xs[i];
            Vec4 x(4), y(4);
            for (auto& c : x) c = random_sym(t, rng);
            for (auto& c : y) c = random_sym(t, rng);
            auto r = adjoint_identities(fr, v, x, y);
            if (!r.hermitian || !r.alternating) ++bad;
          }
          return Outcome{bad ? std::to_string(bad) + " failures" : "true on 100 random triples", bad == 0, ""};
        });
  s.add("clifford.l0-dual", "dual of the base lattice and its index", claim("expected dual, length 1"), [&] {
    auto L0 = fr.L0();
    auto L0d = fr.L0_dual_expected();
    bool eq = L0.form_dual(fr.y_gram()) == L0d;
    int len = module_length(L0d, L0);
    return Outcome{std::string(eq ? "expected dual" : "other dual") + ", length " + std::to_string(len),
                   eq && len == 1, ""};
  });
  s.add("clifford.special-of-base", "the special lattice of the base Dieudonne lattice",
        oracle("dual of the base lattice, special", "direct computation"), [&] {
          auto L = fr.special_lattice_of(fr.base_lattice());
          bool eq = L == fr.L0_dual_expected();
          bool sp = is_special(L);
          return Outcome{std::string(eq ? "dual of the base lattice" : "other") + (sp ? ", special" : ", not special"),
                         eq && sp, ""};
        });
  s.add("clifford.equivariance", "the lattice correspondence is equivariant", claim("true on 2 stabilizer samples"),
        [&] {
          SymElem w = fr.pi();
          SMat g1 = SMat::diag({1, -1, 1, -1});
          SMat g2(4, 4);
          g2(1, 0) = w.inverse();
          g2(3, 2) = w.inverse();
          g2(0, 1) = w;
          g2(2, 3) = w;
          auto L = fr.special_lattice_of(fr.base_lattice());
          long bad = 0;
          for (auto& g : {g1, g2})
            if (fr.special_lattice_of(fr.base_lattice().transform(g)) != L.transform(fr.action_on_y(g))) ++bad;
          return Outcome{bad ? std::to_string(bad) + " failures" : "true on 2 stabilizer samples", bad == 0, ""};
        });
  s.add("clifford.tower", "special lattice tower has r in {0,1,2} and type 2r+1",
        claim("all 200 towers valid"), [&] {
          auto sum = tower_survey(t, 200, s.cfg().seed);
          std::ostringstream d;
          for (auto& [r, n] : sum.by_r) d << "r=" << r << ":" << n << " ";
          d << "generation failures " << sum.gen_fail;
          return Outcome{sum.bad ? std::to_string(sum.bad) + " invalid" : "all " + std::to_string(sum.total) + " towers valid",
                         sum.bad == 0 && sum.gen_fail == 0 && sum.total == 200, d.str()};
        });
  s.add("witt.frobenius", "Frobenius lift on the truncated Witt layer",
        identity("order 2, multiplicative, lifts x^p"), [&] {
          WittRing W(t.p, 2, s.cfg().precision);
          auto g = TruncWitt::generator(W);
          bool order = g.frobenius().frobenius() == g;
          TruncWitt gp = TruncWitt::constant(W, 1);
          for (long i = 0; i < t.p; ++i) gp = gp * g;
          bool lift = (g.frobenius() - gp).reduce_mod_p().value() == 0;
          std::uniform_int_distribution<int64_t> d(0, W.pm() - 1);
          bool mult = true;
          for (int n = 0; n < 20; ++n) {
            TruncWitt a(W, {d(rng), d(rng)}), b(W, {d(rng), d(rng)});
            if ((a * b).frobenius() != a.frobenius() * b.frobenius()) mult = false;
          }
          return Outcome{yes_no(order) + "," + yes_no(mult) + "," + yes_no(lift), order && mult && lift,
                         "precision " + std::to_string(s.cfg().precision)};
        });
}

}  // namespace gu22::cli
