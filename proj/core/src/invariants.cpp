#include "gu22/invariants.hpp"

#include <stdexcept>

namespace gu22 {

bool GramForm::well_formed() const {
  int n = G.rows();
  if (G.cols() != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SymElem& a = G(i, j);
      const SymElem& b = G(j, i);
      switch (kind) {
        case FormKind::Symmetric:
          if (a != b) return false;
          break;
        case FormKind::Hermitian:
          if (a != b.conj()) return false;
          break;
        case FormKind::Alternating:
          if (a != -b) return false;
          break;
      }
    }
  return true;
}

Rat SquareClass::representative(long p) const {
  Rat r(1);
  if (nonsquare) r *= Rat(smallest_nonresidue(p));
  if (odd) r *= Rat(p);
  return r;
}

std::string SquareClass::label() const {
  if (odd) return nonsquare ? "up" : "p";
  return nonsquare ? "u" : "1";
}

SquareClass square_class(const Rat& x, long p) {
  if (sgn(x) == 0) throw std::invalid_argument("square_class of zero");
  int v = ord_p(x, p);
  Rat w = x / pow_p(p, v);
  return {(v & 1) != 0, legendre(static_cast<long>(residue_mod(w, p)), p) == -1};
}

std::vector<Rat> diagonalize_congruence(const RatMat& G0) {
  int n = G0.rows();
  RatMat G(G0);
  std::vector<Rat> d;
  for (int i = 0; i < n; ++i) {
    if (sgn(G(i, i)) == 0) {
      int j = -1;
      for (int k = i + 1; k < n; ++k)
        if (sgn(G(k, k)) != 0) {
          j = k;
          break;
        }
      if (j >= 0) {
        G.swap_rows(i, j);
        G.swap_cols(i, j);
      } else {
        for (int k = i + 1; k < n; ++k)
          if (sgn(G(i, k)) != 0) {
            j = k;
            break;
          }
        if (j < 0) throw std::domain_error("diagonalize_congruence: degenerate form");
        // e_i ← e_i + e_j
        for (int c = 0; c < n; ++c) G(i, c) += G(j, c);
        for (int r = 0; r < n; ++r) G(r, i) += G(r, j);
      }
    }
    Rat piv = G(i, i);
    for (int k = i + 1; k < n; ++k) {
      if (sgn(G(k, i)) == 0) continue;
      Rat f = G(k, i) / piv;
      for (int c = 0; c < n; ++c) G(k, c) -= f * G(i, c);
      for (int r = 0; r < n; ++r) G(r, k) -= f * G(r, i);
    }
    d.push_back(piv);
  }
  return d;
}

QuadInvariants quad_invariants(const RatMat& G, long p) {
  for (int i = 0; i < G.rows(); ++i)
    for (int j = 0; j < G.cols(); ++j)
      if (G(i, j) != G(j, i)) throw std::invalid_argument("quad_invariants: Gram not symmetric");
  auto d = diagonalize_congruence(G);
  QuadInvariants q;
  q.dim = G.rows();
  Rat disc(1);
  for (const auto& x : d) disc *= x;
  q.disc = square_class(disc, p);
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) q.hasse *= hilbert_symbol(d[i], d[j], p);
  return q;
}

bool is_norm(const Rat& x, const Tower& t) {
  if (sgn(x) == 0) throw std::invalid_argument("is_norm of zero");
  // N(ϖ) = −c; norms of units are the unit squares.
  int k = ord_p(x, t.p);
  Rat w = x / (k >= 0 ? Rat(ipow(t.c, k)) : Rat(Int(1), ipow(t.c, -k)));
  if (k & 1) w = -w;
  return legendre(static_cast<long>(residue_mod(w, t.p)), t.p) == 1;
}

bool hermitian_is_split(const SMat& G, const Tower& t) {
  int n = G.rows();
  if (n % 2) throw std::invalid_argument("hermitian_is_split: odd dimension");
  SymElem d = G.det();
  if (!d.is_rational()) throw std::domain_error("hermitian_is_split: determinant not in Q_p");
  Rat x = d.to_rat();
  if ((n * (n - 1) / 2) % 2) x = -x;
  return is_norm(x, t);
}

SMat antidiagonal_hermitian(int n) {
  SMat H(n, n);
  for (int i = 0; i < n; ++i) H(i, n - 1 - i) = SymElem(1);
  return H;
}

SymElem similitude_factor(const SMat& g, const SMat& H) {
  SMat cg = g.map([](const SymElem& x) { return x.conj(); });
  SMat M = g.transpose() * H * cg;
  SymElem c;
  bool found = false;
  for (int i = 0; i < H.rows() && !found; ++i)
    for (int j = 0; j < H.cols() && !found; ++j)
      if (!is_zero(H(i, j))) {
        c = M(i, j) / H(i, j);
        found = true;
      }
  if (!found || M != c * H) throw std::domain_error("not a similitude: gᵀH conj(g) is not a multiple of H");
  return c;
}

GroupElement make_group_element(const SMat& g, const SMat& H) { return {g, similitude_factor(g, H)}; }

SMat b0_matrix(const Tower& t) {
  SMat b(4, 4);
  SymElem w = SymElem::pi(t);
  for (int i = 0; i < 4; ++i) b(i, 3 - i) = w;
  return b;
}

SMat b1_matrix(const Tower& t) {
  SMat b(4, 4);
  SymElem w = SymElem::pi(t);
  b(0, 3) = w;
  b(1, 1) = w;
  b(2, 2) = w;
  b(3, 0) = w;
  return b;
}

KottwitzClass kottwitz(const GroupElement& b) {
  const Tower* t = b.g(0, 0).tower();
  for (int i = 0; i < b.g.rows() && !t; ++i)
    for (int j = 0; j < b.g.cols() && !t; ++j) t = b.g(i, j).tower();
  if (!t) t = b.sml.tower();
  long p = t ? t->p : 0;
  if (!t) throw std::logic_error("kottwitz: no tower attached to b");
  if (!b.sml.a().is_zero() && !b.sml.b().is_zero()) throw std::domain_error("kottwitz: similitude not in K_0");
  if (!b.sml.b().is_zero()) throw std::domain_error("kottwitz: similitude not in K_0");
  KottwitzClass k;
  k.w = b.sml.a().vp(p);
  SymElem d = b.g.det() / (b.sml * b.sml);
  if (d.valuation(p) != 0) throw std::domain_error("kottwitz: det/sml² is not a unit");
  if (d * d.conj() != SymElem(1)) throw std::domain_error("kottwitz: det/sml² does not have norm 1");
  Dvr<QEps> w(*t);
  int r = w.residue(d.a());
  if (r == 1)
    k.d = 0;
  else if (r == static_cast<int>(p - 1))
    k.d = 1;
  else
    throw std::domain_error("kottwitz: det/sml² mod ϖ is not ±1");
  return k;
}

bool is_mu_neutral(const GroupElement& b) { return kottwitz(b) == KottwitzClass{1, 0}; }

bool is_basic_slope_half(const GroupElement& b, const Tower& t) {
  SMat sb = b.g.map([](const SymElem& x) { return x.sigma(); });
  auto s = smith_normal_form(nb_ring(t), b.g * sb);
  if (static_cast<int>(s.divisors.size()) != b.g.rows()) return false;
  for (int d : s.divisors)
    if (d != 2) return false;
  return true;
}

Dvr<SymElem> nb_ring(const Tower& t) { return Dvr<SymElem>(t, 2); }

NLattice lambda_bar(const Tower& t) {
  SMat B = SMat::identity(4);
  B(2, 2) = SymElem::pi(t);
  B(3, 3) = SymElem::pi(t);
  return NLattice(nb_ring(t), B);
}

NLattice frobenius_inverse(const NLattice& M, const GroupElement& b) { return M.transform(b.g.inverse()).sigma(); }

NLattice verschiebung(const NLattice& M, const GroupElement& b) { return frobenius_inverse(M, b).scaled(2); }

NLattice alternating_dual(const NLattice& L, const SMat& H) {
  const Dvr<SymElem>& R = L.ring();
  const Tower& t = *R.t;
  int n = L.dim();
  SymElem w = SymElem::pi(t);
  // K_0-basis f = (e_1..e_n, ϖe_1..ϖe_n); (x,y) is the ϖ-coefficient of ⟨x,y⟩.
  auto fvec = [&](int k) {
    std::vector<SymElem> v(n, SymElem(0));
    v[k % n] = k < n ? SymElem(1) : w;
    return v;
  };
  auto herm = [&](const std::vector<SymElem>& x, const std::vector<SymElem>& y) {
    SymElem s(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!is_zero(H(i, j))) s += x[i] * H(i, j) * y[j].conj();
    return s;
  };
  QMat A(2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k)
    for (int l = 0; l < 2 * n; ++l) A(k, l) = herm(fvec(k), fvec(l)).b();
  Dvr<QEps> W(t);
  QMat gens(2 * n, 2 * n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < 2; ++s) {
      for (int i = 0; i < n; ++i) {
        SymElem x = L.basis()(r, i) * (s ? w : SymElem(1));
        gens(2 * r + s, i) = x.a();
        gens(2 * r + s, n + i) = x.b();
      }
    }
  DvrLattice<QEps> Lw(W, gens);
  DvrLattice<QEps> Dw = Lw.form_dual(A);
  SMat back(2 * n, n);
  for (int r = 0; r < 2 * n; ++r)
    for (int i = 0; i < n; ++i) back(r, i) = SymElem(&t, Dw.basis()(r, i), Dw.basis()(r, n + i));
  return NLattice(R, back);
}

DilReport dil_conditions(const NLattice& M, const GroupElement& b, const SMat& H) {
  DilReport r;
  r.modular = M.form_dual(H) == M.scaled(-1);
  NLattice pM = M.scaled(2);
  NLattice Fi = frobenius_inverse(pM, b);
  r.chain = Fi.contains(pM) && M.contains(Fi);
  if (!r.chain) return r;
  r.length_top = module_length(M, Fi);
  r.length_middle = module_length(M.scaled(1) + Fi, Fi);
  return r;
}

bool is_dil_lattice(const NLattice& M, const GroupElement& b, const SMat& H) { return dil_conditions(M, b, H).all(); }

NeutralityReport neutrality_report(const GroupElement& b, const NLattice& M, const SMat& H, const SMat& cb) {
  if (!is_dil_lattice(M, b, H)) throw std::invalid_argument("neutrality_report: M is not in DiL");
  const Tower& t = *M.ring().t;
  long p = t.p;
  NeutralityReport r;
  r.i = is_mu_neutral(b);
  SymElem det = b.g.det();
  auto near_one = [&](const SymElem& x) { return is_zero(x - SymElem(1)) || (x - SymElem(1)).valuation(p) >= 1; };
  r.ii_literal = near_one(det / b.sml);
  r.ii_squared = near_one(det / (b.sml * b.sml));
  r.iii = hermitian_is_split(cb, t);
  NLattice V = verschiebung(M, b);
  r.iv_length = module_length(M.scaled(1) + V, V);
  r.iv = r.iv_length % 2 == 0;
  r.agree = r.i == r.ii_squared && r.i == r.iii && r.i == r.iv;
  return r;
}

SMat cb_gram(int j, const Tower& t) {
  if (j == 0) return antidiagonal_hermitian(4);
  SMat G = SMat::identity(4);
  G(3, 3) = SymElem(Rat(t.u));
  return G;
}

SMat derived_cb_gram(const GroupElement& b, const Tower& t, const SMat& H) {
  if (t.eta_is_eps()) throw std::invalid_argument("derived_cb_gram: only for ϖ² = p (η = 1)");
  SMat A = SymElem::pi(t).inverse() * b.g;
  SMat sA = A.map([](const SymElem& x) { return x.sigma(); });
  if (A * sA != SMat::identity(4)) throw std::domain_error("derived_cb_gram: F_{b,0}² ≠ σ²");
  SymElem e = SymElem::eps(t);
  std::vector<std::vector<SymElem>> fixed;
  // F-rank is tracked through the 8 F-coordinates (1 and ε parts).
  std::vector<std::vector<SymElem>> flat;
  for (int k = 0; k < 8; ++k) {
    std::vector<SymElem> x(4, SymElem(0));
    x[k % 4] = k < 4 ? SymElem(1) : e;
    auto sx = x;
    for (auto& c : sx) c = c.sigma();
    auto v = A.apply(sx);
    for (int i = 0; i < 4; ++i) v[i] += x[i];
    std::vector<SymElem> f(8);
    for (int i = 0; i < 4; ++i) {
      f[i] = SymElem(&t, v[i].c00(), 0, v[i].c01(), 0);
      f[4 + i] = SymElem(&t, v[i].c10(), 0, v[i].c11(), 0);
    }
    auto trial = flat;
    trial.push_back(f);
    SMat m(static_cast<int>(trial.size()), 8);
    for (size_t r = 0; r < trial.size(); ++r) m.set_row(static_cast<int>(r), trial[r]);
    if (m.rank() == static_cast<int>(trial.size())) {
      flat = trial;
      fixed.push_back(v);
    }
    if (fixed.size() == 4) break;
  }
  if (fixed.size() != 4) throw std::domain_error("derived_cb_gram: fixed space too small");
  SMat G(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      SymElem s(0);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
          if (!is_zero(H(a, c))) s += fixed[i][a] * H(a, c) * fixed[j][c].conj();
      G(i, j) = s;
    }
  return G;
}

}  // namespace gu22
