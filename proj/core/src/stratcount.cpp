#include "gu22/stratcount.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gu22/parallel.hpp"

namespace gu22 {

HermAmbient hermitian_ambient(int j, const Tower& t) {
  return HermAmbient{AmbientKind::Hermitian, Dvr<SymElem>(t, 1), cb_gram(j, t), j == 0, {0, 2, 4}};
}

QuadAmbient quadratic_ambient(const Tower& t) {
  IsocrystalFrame fr(t);
  return QuadAmbient{AmbientKind::Quadratic, Dvr<Rat>(t.p), rational_y_gram(fr), true, {1, 3, 5}};
}

namespace {

template <class E>
E pair(const LinkAmbient<E>& amb, const std::vector<E>& x, const std::vector<E>& y) {
  const int n = amb.G.rows();
  E s(0);
  for (int i = 0; i < n; ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < n; ++j)
      if (!is_zero(amb.G(i, j)) && !is_zero(y[j])) s += x[i] * amb.G(i, j) * amb.R.conj(y[j]);
  }
  return s;
}

template <class E>
int raw_type(const LinkAmbient<E>& amb, const DvrLattice<E>& L) {
  return amb.kind == AmbientKind::Hermitian ? hermitian_vertex_type(L, amb.G) : quadratic_vertex_type(L, amb.G);
}

// Residue values: `scaled` multiplies by p (quadratic) or takes the ϖ⁻¹-coefficient (hermitian, alternating).
template <class E>
int residue_value(const LinkAmbient<E>& amb, const std::vector<E>& x, const std::vector<E>& y, bool scaled) {
  E s = pair(amb, x, y);
  if constexpr (std::is_same_v<E, Rat>) {
    if (scaled) s *= Rat(amb.R.p);
    return amb.R.residue(s);
  } else {
    const Tower* t = amb.R.t;
    if (scaled) return amb.R.residue(SymElem(t, s.b() * QEps(t, Rat(t->c)), QEps(t, 0)));
    return amb.R.residue(SymElem(t, s.a(), QEps(t, 0)));
  }
}

template <class E>
struct Window {
  DvrLattice<E> lo, hi;
  bool scaled;       // which residue value
  bool coisotropic;  // criterion: U^⊥ ⊆ U, else U totally isotropic
  bool dualize;      // result is (lo + lift U)^∨
};

template <class E>
std::vector<std::vector<E>> quotient_basis(const DvrLattice<E>& hi, const DvrLattice<E>& lo) {
  auto [C, div] = adapted_basis(hi, lo);
  std::vector<std::vector<E>> basis;
  for (size_t i = 0; i < div.size(); ++i) {
    if (div[i] > 1) throw std::invalid_argument("window quotient is not killed by the uniformizer");
    if (div[i] == 1) basis.push_back(C.row(static_cast<int>(i)));
  }
  return basis;
}

// F_p-basis of hi/lo when the quotient is killed by p but not by the uniformizer.
template <class E>
std::vector<std::vector<E>> fp_quotient_basis(const Dvr<E>& R, const DvrLattice<E>& hi, const DvrLattice<E>& lo) {
  auto [C, div] = adapted_basis(hi, lo);
  std::vector<std::vector<E>> basis;
  const E pi = R.pi_pow(1);
  for (size_t i = 0; i < div.size(); ++i) {
    std::vector<E> c = C.row(static_cast<int>(i));
    for (int k = 0; k < div[i]; ++k) {
      basis.push_back(c);
      for (auto& x : c) x *= pi;
    }
  }
  return basis;
}

template <class E>
FFRows quotient_gram(const LinkAmbient<E>& amb, const std::vector<std::vector<E>>& basis, bool scaled) {
  const int m = static_cast<int>(basis.size());
  FFRows g(m, FFVec(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g[i][j] = residue_value(amb, basis[i], basis[j], scaled);
  return g;
}

bool criterion_holds(const FField& F, const FFRows& g, const FFRows& U, bool coisotropic) {
  const int m = static_cast<int>(g.size());
  FFRows ug;
  for (const auto& u : U) {
    FFVec r(m, 0);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        if (u[i] && g[i][j]) r[j] = F.add(r[j], F.mul(u[i], g[i][j]));
    ug.push_back(r);
  }
  if (!coisotropic) {
    for (const auto& r : ug)
      for (const auto& v : U)
        if (ff_dot(F, r, v)) return false;
    return true;
  }
  FFRows perp = ug.empty() ? FFRows{} : ff_kernel(F, ug, m);
  if (ug.empty())
    for (int i = 0; i < m; ++i) {
      FFVec e(m, 0);
      e[i] = 1;
      perp.push_back(e);
    }
  FFRows all = U;
  all.insert(all.end(), perp.begin(), perp.end());
  return ff_rank(F, all) == static_cast<int>(U.size());
}

template <class E>
std::vector<VertexLattice<E>> scan_window(const LinkAmbient<E>& amb, const Window<E>& w, const DvrLattice<E>& self,
                                          const LinkOptions& opt) {
  const auto basis = quotient_basis(w.hi, w.lo);
  const int m = static_cast<int>(basis.size());
  const FField& F = FField::get(amb.R.p, 1);
  long double total = 0;
  for (int d = 0; d <= m; ++d) total += gaussian_binomial(amb.R.p, m, d);
  if (total > opt.ceiling) throw CeilingExceeded(total, opt.ceiling);
  const FFRows g = quotient_gram(amb, basis, w.scaled);

  std::vector<FFRows> cand;
  for (int d = 0; d <= m; ++d)
    for_each_subspace(F, m, d, [&](const FFRows& U) {
      if (!opt.residue_prefilter || criterion_holds(F, g, U, w.coisotropic)) cand.push_back(U);
      return true;
    });

  const int n = self.dim();
  std::vector<std::optional<VertexLattice<E>>> res(cand.size());
  parallel_for(static_cast<int>(cand.size()), opt.threads, [&](int idx) {
    std::vector<std::vector<E>> gens;
    for (const auto& r : cand[idx]) {
      std::vector<E> v(n, E(0));
      for (int i = 0; i < m; ++i) {
        if (!r[i]) continue;
        E l = amb.R.lift(r[i]);
        for (int j = 0; j < n; ++j) v[j] += l * basis[i][j];
      }
      gens.push_back(std::move(v));
    }
    DvrLattice<E> L = gens.empty() ? w.lo : w.lo.add_vectors(gens);
    if (w.dualize) L = L.form_dual(amb.G);
    if (L == self) return;
    res[idx] = certify(amb, L);
  });
  std::vector<VertexLattice<E>> out;
  std::set<std::string> seen;
  for (auto& r : res)
    if (r && seen.insert(r->L.key()).second) out.push_back(std::move(*r));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.L.key() < b.L.key(); });
  return out;
}

}  // namespace

template <class E>
std::optional<VertexLattice<E>> certify(const LinkAmbient<E>& amb, const DvrLattice<E>& L) {
  int t = raw_type(amb, L);
  if (t < 0 || std::find(amb.menu.begin(), amb.menu.end(), t) == amb.menu.end()) return std::nullopt;
  return VertexLattice<E>{L, t};
}

bool ResidueSpace::matches() const {
  if (!has_expectation) return true;
  return space.n == expected_dim && (space.n == 0 || space.kind == expected_kind);
}

template <class E>
ResidueSpace residue_space(const LinkAmbient<E>& amb, const VertexLattice<E>& T, bool strict) {
  ResidueSpace rs;
  DvrLattice<E> Td = T.L.form_dual(amb.G);
  std::vector<std::vector<E>> basis;
  bool scaled = false;
  if (amb.kind == AmbientKind::Quadratic) {
    basis = quotient_basis(T.L, Td);
    scaled = true;
    rs.quotient = "Λ/Λ^∨";
  } else if (amb.neutral && T.type == 2) {
    basis = fp_quotient_basis(amb.R, Td, T.L.scaled(1));
    rs.quotient = "T^∨/ϖT";
  } else {
    basis = quotient_basis(T.L, Td.scaled(1));
    rs.quotient = "T/ϖT^∨";
  }
  rs.space = FiniteQuadSpace::from_gram(static_cast<int>(amb.R.p), quotient_gram(amb, basis, scaled));
  if (amb.kind == AmbientKind::Hermitian) {
    rs.has_expectation = true;
    if (amb.neutral) {
      rs.expected_dim = T.type == 0 ? 4 : T.type == 2 ? 6 : 0;
      rs.expected_kind = QuadKind::SplitEven;
    } else {
      rs.expected_dim = 4 - T.type;
      rs.expected_kind = QuadKind::NonSplitEven;
    }
  }
  if (strict && !rs.matches())
    throw std::logic_error("residue_space: classification mismatch for type " + std::to_string(T.type) + " (" +
                           to_string(rs.space.kind) + ", dim " + std::to_string(rs.space.n) + ")");
  return rs;
}

template <class E>
std::vector<VertexLattice<E>> enumerate_subvertex(const LinkAmbient<E>& amb, const VertexLattice<E>& T,
                                                  const LinkOptions& opt) {
  DvrLattice<E> Td = T.L.form_dual(amb.G);
  if (amb.kind == AmbientKind::Quadratic) return scan_window(amb, Window<E>{Td, T.L, true, true, false}, T.L, opt);
  return scan_window(amb, Window<E>{Td.scaled(1), T.L, false, true, false}, T.L, opt);
}

template <class E>
std::vector<VertexLattice<E>> enumerate_supervertex(const LinkAmbient<E>& amb, const VertexLattice<E>& T,
                                                    const LinkOptions& opt) {
  DvrLattice<E> Td = T.L.form_dual(amb.G);
  // Quadratic: Λ''^∨ runs over [pΛ, Λ^∨] and is dualized back. Hermitian: T'' ∈ [T, T^∨] with T''/T isotropic.
  if (amb.kind == AmbientKind::Quadratic) return scan_window(amb, Window<E>{T.L.scaled(1), Td, false, true, true}, T.L, opt);
  return scan_window(amb, Window<E>{T.L, Td, true, false, false}, T.L, opt);
}

template <class E>
LinkTable link_counts(const LinkAmbient<E>& amb, const VertexLattice<E>& T, const LinkOptions& opt) {
  LinkTable tab;
  for (const auto& v : enumerate_subvertex(amb, T, opt)) ++tab.sub[v.type];
  for (const auto& v : enumerate_supervertex(amb, T, opt)) ++tab.super[v.type];
  return tab;
}

template <class E>
IncidenceReport incidence(const LinkAmbient<E>& amb, const VertexLattice<E>& T, int via, const LinkOptions& opt) {
  IncidenceReport rep;
  rep.via = via;
  std::map<std::string, DvrLattice<E>> nb;
  for (const auto& s : enumerate_subvertex(amb, T, opt)) {
    if (s.type != via) continue;
    for (const auto& u : enumerate_supervertex(amb, s, opt))
      if (u.type == T.type && u.L != T.L) nb.emplace(u.L.key(), u.L);
  }
  rep.neighbours = static_cast<long>(nb.size());
  for (const auto& [_, L] : nb) ++rep.by_meet_type[raw_type(amb, T.L.intersect(L))];
  return rep;
}

template std::optional<VertexLattice<Rat>> certify(const QuadAmbient&, const DvrLattice<Rat>&);
template std::optional<VertexLattice<SymElem>> certify(const HermAmbient&, const DvrLattice<SymElem>&);
template ResidueSpace residue_space(const QuadAmbient&, const VertexLattice<Rat>&, bool);
template ResidueSpace residue_space(const HermAmbient&, const VertexLattice<SymElem>&, bool);
template std::vector<VertexLattice<Rat>> enumerate_subvertex(const QuadAmbient&, const VertexLattice<Rat>&,
                                                             const LinkOptions&);
template std::vector<VertexLattice<SymElem>> enumerate_subvertex(const HermAmbient&, const VertexLattice<SymElem>&,
                                                                 const LinkOptions&);
template std::vector<VertexLattice<Rat>> enumerate_supervertex(const QuadAmbient&, const VertexLattice<Rat>&,
                                                               const LinkOptions&);
template std::vector<VertexLattice<SymElem>> enumerate_supervertex(const HermAmbient&, const VertexLattice<SymElem>&,
                                                                   const LinkOptions&);
template LinkTable link_counts(const QuadAmbient&, const VertexLattice<Rat>&, const LinkOptions&);
template LinkTable link_counts(const HermAmbient&, const VertexLattice<SymElem>&, const LinkOptions&);
template IncidenceReport incidence(const QuadAmbient&, const VertexLattice<Rat>&, int, const LinkOptions&);
template IncidenceReport incidence(const HermAmbient&, const VertexLattice<SymElem>&, int, const LinkOptions&);

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
    case Relation::Incomparable: return "incomparable";
    case Relation::Equal: return "=";
  }
  return "?";
}

DvrLattice<SymElem> t0_bar(const HermAmbient& amb) {
  const Tower* t = amb.R.t;
  SMat B = SMat::identity(4);
  B(2, 2) = SymElem::pi(*t);
  B(3, 3) = SymElem::pi(*t);
  return DvrLattice<SymElem>(amb.R, B);
}

bool in_even_class(const HermAmbient& amb, const VertexLattice<SymElem>& T) {
  auto T0 = t0_bar(amb);
  return module_length(T.L + T0, T0) % 2 == 0;
}

namespace {

bool leq_less(const HermAmbient& amb, const VertexLattice<SymElem>& a, const VertexLattice<SymElem>& b) {
  if (a.type == 4 && b.type == 0) return b.L.contains(a.L);
  if ((a.type == 4 || a.type == 0) && b.type == 2) return b.L.form_dual(amb.G).contains(a.L);
  return false;
}

bool prec_less(const HermAmbient& amb, const VertexLattice<SymElem>& a, const VertexLattice<SymElem>& b) {
  auto even = [&](const VertexLattice<SymElem>& x) { return x.type == 4 && in_even_class(amb, x); };
  auto odd = [&](const VertexLattice<SymElem>& x) { return x.type == 4 && !in_even_class(amb, x); };
  if (even(a) && b.type == 0) return b.L.contains(a.L);
  if (even(a) && odd(b)) return b.L.scaled(-1).contains(a.L);
  if (a.type == 0 && odd(b)) return b.L.scaled(-1).contains(a.L);
  return false;
}

}  // namespace

OrderResult order_check(const HermAmbient& amb, const VertexLattice<SymElem>& a, const VertexLattice<SymElem>& b) {
  if (a.L == b.L) return {Relation::Equal, Relation::Equal};
  auto rel = [&](auto&& less) {
    if (less(amb, a, b)) return Relation::Less;
    if (less(amb, b, a)) return Relation::Greater;
    return Relation::Incomparable;
  };
  OrderResult r;
  r.leq = rel(leq_less);
  r.prec = rel(prec_less);
  return r;
}

std::vector<VertexLattice<SymElem>> prec_candidates(const HermAmbient& amb, const VertexLattice<SymElem>& T,
                                                    const LinkOptions& opt) {
  std::vector<VertexLattice<SymElem>> hubs{T};
  for (auto& s : enumerate_supervertex(amb, T, opt)) hubs.push_back(std::move(s));
  std::map<std::string, VertexLattice<SymElem>> out;
  for (const auto& S : hubs) {
    if (S.type != 2 && S.L != T.L) out.emplace(S.L.key(), S);
    for (auto& u : enumerate_subvertex(amb, S, opt))
      if (u.type != 2 && u.L != T.L) out.emplace(u.L.key(), std::move(u));
  }
  std::vector<VertexLattice<SymElem>> v;
  for (auto& [_, x] : out) v.push_back(std::move(x));
  return v;
}

bool CorrespondenceReport::all_agree() const {
  for (const auto& r : rows)
    if (!r.agree()) return false;
  return !rows.empty();
}

std::optional<VertexLattice<Rat>> quadratic_type5(const QuadAmbient& amb) {
  auto L = type5_lattice(amb.G, amb.R.p);
  if (!L) return std::nullopt;
  return certify(amb, *L);
}

VertexLattice<SymElem> hermitian_self_dual(const HermAmbient& amb) {
  auto v = certify(amb, DvrLattice<SymElem>::standard(amb.R, 4));
  if (!v || v->type != 0) throw std::logic_error("standard lattice is not self-dual");
  return *v;
}

CorrespondenceReport correspondence_audit(const Tower& t, const LinkOptions& opt) {
  CorrespondenceReport rep;
  rep.p = static_cast<int>(t.p);
  auto Q = quadratic_ambient(t);
  auto L5 = quadratic_type5(Q);
  if (!L5 || L5->type != 5) throw std::runtime_error("correspondence_audit: no type-5 lattice");
  auto subs5 = enumerate_subvertex(Q, *L5, opt);
  std::optional<VertexLattice<Rat>> L1, L3;
  std::map<int, long> c5;
  for (const auto& s : subs5) {
    ++c5[s.type];
    if (s.type == 1 && !L1) L1 = s;
    if (s.type == 3 && !L3) L3 = s;
  }
  auto t1 = link_counts(Q, *L1, opt);
  auto t3 = link_counts(Q, *L3, opt);

  auto H = hermitian_ambient(0, t);
  auto T0 = certify(H, t0_bar(H));
  if (!T0 || T0->type != 4 || !in_even_class(H, *T0)) throw std::logic_error("T̄₀ is not an even type-4 lattice");
  std::optional<VertexLattice<SymElem>> Todd, S0;
  for (const auto& c : prec_candidates(H, *T0, opt)) {
    if (c.type == 4 && !in_even_class(H, c) && !Todd) Todd = c;
    if (c.type == 0 && !S0) S0 = c;
  }
  if (!Todd || !S0) throw std::runtime_error("correspondence_audit: hermitian representatives not found");

  auto count = [&](const VertexLattice<SymElem>& T, bool below, auto&& pred) {
    long n = 0;
    for (const auto& c : prec_candidates(H, T, opt)) {
      if (!pred(c)) continue;
      Relation r = order_check(H, c, T).prec;
      if (r == (below ? Relation::Less : Relation::Greater)) ++n;
    }
    return n;
  };
  auto even4 = [&](const VertexLattice<SymElem>& c) { return c.type == 4 && in_even_class(H, c); };
  auto odd4 = [&](const VertexLattice<SymElem>& c) { return c.type == 4 && !in_even_class(H, c); };
  auto zero = [](const VertexLattice<SymElem>& c) { return c.type == 0; };

  rep.rows.push_back({"itself", "distance 0", 1, order_check(H, *T0, *T0).prec == Relation::Equal ? 1 : 0});
  rep.rows.push_back({"type-1 ⊂ Λ(5)", "VL_{T̄₀}(4) ≺ odd type 4", c5[1], count(*Todd, true, even4)});
  rep.rows.push_back({"type-3 ⊂ Λ(5)", "VL(0) ≺ odd type 4", c5[3], count(*Todd, true, zero)});
  rep.rows.push_back({"Λ(1) ⊂ type-3", "VL_{T̄₀}(4) ≺ VL(0)", t1.super[3], count(*T0, false, zero)});
  rep.rows.push_back({"Λ(1) ⊂ type-5", "VL_{T̄₀}(4) ≺ odd type 4", t1.super[5], count(*T0, false, odd4)});
  rep.rows.push_back({"type-1 ⊂ Λ(3)", "VL_{T̄₀}(4) ≺ VL(0)", t3.sub[1], count(*S0, true, even4)});
  rep.rows.push_back({"Λ(3) ⊂ type-5", "VL(0) ≺ odd type 4", t3.super[5], count(*S0, false, odd4)});
  return rep;
}

}  // namespace gu22
