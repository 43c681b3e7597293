#include "gu22/exceptional.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace gu22 {

int wedge_index(int i, int j) {
  for (int k = 0; k < 6; ++k)
    if (kWedgePairs[k].first == i && kWedgePairs[k].second == j) return k;
  throw std::invalid_argument("wedge_index: need 0 <= i < j < 4");
}

Wedge2Elem wedge(const Vec4& x, const Vec4& y) {
  Wedge2Elem w;
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = kWedgePairs[k];
    w[k] = x[i] * y[j] - x[j] * y[i];
  }
  return w;
}

Wedge2Elem operator+(const Wedge2Elem& a, const Wedge2Elem& b) {
  Wedge2Elem w;
  for (int k = 0; k < 6; ++k) w[k] = a[k] + b[k];
  return w;
}

Wedge2Elem operator-(const Wedge2Elem& a, const Wedge2Elem& b) {
  Wedge2Elem w;
  for (int k = 0; k < 6; ++k) w[k] = a[k] - b[k];
  return w;
}

Wedge2Elem operator*(const SymElem& s, const Wedge2Elem& a) {
  Wedge2Elem w;
  for (int k = 0; k < 6; ++k) w[k] = s * a[k];
  return w;
}

bool is_zero(const Wedge2Elem& a) {
  return std::all_of(a.begin(), a.end(), [](const SymElem& x) { return x.is_zero(); });
}

static SMat conj_mat(const SMat& m) {
  return m.map([](const SymElem& x) { return x.conj(); });
}
static SMat sigma_mat(const SMat& m) {
  return m.map([](const SymElem& x) { return x.sigma(); });
}

Vec4 Endo::operator()(const Vec4& z) const {
  if (s % 2 == 0) return A.apply(z);
  Vec4 c(z.size());
  for (size_t i = 0; i < z.size(); ++i) c[i] = z[i].conj();
  return A.apply(c);
}

std::optional<SymElem> Endo::as_scalar() const {
  if (s % 2 != 0) return std::nullopt;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && !A(i, j).is_zero()) return std::nullopt;
  for (int i = 1; i < 4; ++i)
    if (A(i, i) != A(0, 0)) return std::nullopt;
  return A(0, 0);
}

Endo compose(const Endo& f, const Endo& g) {
  return {f.A * (f.s % 2 ? conj_mat(g.A) : g.A), (f.s + g.s) % 2};
}

Endo operator+(const Endo& f, const Endo& g) {
  if (f.s % 2 != g.s % 2) throw std::invalid_argument("Endo: adding maps of different semilinearity");
  return {f.A + g.A, f.s};
}

Endo operator*(const SymElem& c, const Endo& f) { return {c * f.A, f.s}; }

IsocrystalFrame::IsocrystalFrame(const Tower& t) : t_(&t), H_(4, 4), Fm_(4, 4) {
  SymElem w = SymElem::pi(t), wi = w.inverse();
  H_(0, 2) = wi;
  H_(2, 0) = -wi;
  H_(1, 3) = w;
  H_(3, 1) = -w;
  SymElem pw = SymElem(Rat(t.p)) * wi;
  Fm_(2, 0) = w;
  Fm_(3, 1) = w;
  Fm_(0, 2) = pw;
  Fm_(1, 3) = pw;
  Fm_inv_ = Fm_.inverse();
  yend_ = y_endos();
}

SymElem IsocrystalFrame::eta() const { return t_->kind == Uniformizer::UP ? eps() : SymElem(1); }

SymElem IsocrystalFrame::form(const Vec4& x, const Vec4& y) const {
  SymElem s(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!H_(i, j).is_zero()) s += x[i] * H_(i, j) * y[j].conj();
  return s;
}

SymElem IsocrystalFrame::alt_form(const Vec4& x, const Vec4& y) const { return SymElem(form(x, y).b()); }

Vec4 IsocrystalFrame::F(const Vec4& z) const {
  Vec4 s(4);
  for (int i = 0; i < 4; ++i) s[i] = z[i].sigma();
  return Fm_.apply(s);
}

Vec4 IsocrystalFrame::F_inv(const Vec4& z) const {
  Vec4 w = Fm_inv_.apply(z);
  for (auto& x : w) x = x.sigma();
  return w;
}

Endo IsocrystalFrame::wedge_to_endo(const Wedge2Elem& v) const {
  // x∧y ↦ z ↦ ⟨x,z⟩y − ⟨y,z⟩x has matrix (y xᵀ − x yᵀ) H against conj(z).
  SMat A(4, 4);
  for (int k = 0; k < 6; ++k) {
    if (v[k].is_zero()) continue;
    auto [i, j] = kWedgePairs[k];
    for (int c = 0; c < 4; ++c) {
      A(j, c) += v[k] * H_(i, c);
      A(i, c) -= v[k] * H_(j, c);
    }
  }
  return {A, 1};
}

SymElem IsocrystalFrame::pair2(const Wedge2Elem& v, const Wedge2Elem& w) const {
  SymElem s(0);
  for (int I = 0; I < 6; ++I) {
    if (v[I].is_zero()) continue;
    auto [a, b] = kWedgePairs[I];
    for (int J = 0; J < 6; ++J) {
      if (w[J].is_zero()) continue;
      auto [c, d] = kWedgePairs[J];
      SymElem det = H_(a, c) * H_(b, d) - H_(a, d) * H_(b, c);
      if (!det.is_zero()) s += v[I] * w[J].conj() * det;
    }
  }
  return s;
}

static int perm_sign(std::array<int, 4> a) {
  int s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (a[i] > a[j]) s = -s;
  return s;
}

Wedge2Elem IsocrystalFrame::hodge_star(const Wedge2Elem& v) const {
  // e_I ∧ v⋆ = ⟨e_I, v⟩₂ ω determines the coefficient of e_{I^c}.
  Wedge2Elem out;
  for (int I = 0; I < 6; ++I) {
    auto [a, b] = kWedgePairs[I];
    int Ic = 5 - I;  // complementary pair in the fixed ordering
    auto [c, d] = kWedgePairs[Ic];
    Wedge2Elem eI{};
    eI[I] = SymElem(1);
    out[Ic] = SymElem(perm_sign({a, b, c, d})) * pair2(eI, v);
  }
  return out;
}

Wedge2Elem IsocrystalFrame::phi(const Wedge2Elem& v) const {
  Wedge2Elem out{};
  SymElem pinv = SymElem(Rat(1, t_->p));
  for (int k = 0; k < 6; ++k) {
    if (v[k].is_zero()) continue;
    auto [i, j] = kWedgePairs[k];
    out = out + (pinv * v[k].sigma()) * wedge(Fm_.col(i), Fm_.col(j));
  }
  return out;
}

Endo IsocrystalFrame::phi(const Endo& f) const {
  SMat inv = f.s % 2 ? conj_mat(Fm_inv_) : Fm_inv_;
  return {Fm_ * sigma_mat(f.A) * inv, f.s};
}

Wedge2Elem IsocrystalFrame::x(int i) const {
  Wedge2Elem w{};
  SymElem pi = this->pi();
  switch (i) {
    case 1: w[wedge_index(0, 1)] = 1; break;
    case 2: w[wedge_index(2, 3)] = 1; break;
    case 3:
      w[wedge_index(0, 2)] = 1;
      w[wedge_index(1, 3)] = -(pi * pi).inverse();
      break;
    case 4:
      w[wedge_index(0, 2)] = pi;
      w[wedge_index(1, 3)] = pi.inverse();
      break;
    case 5: w[wedge_index(0, 3)] = 1; break;
    case 6: w[wedge_index(1, 2)] = -1; break;  // e₃∧e₂
    default: throw std::out_of_range("x(i): i must be 1..6");
  }
  return w;
}

Wedge2Elem IsocrystalFrame::y(int i) const {
  SymElem e = eps();
  SymElem r = SymElem(Rat(1, t_->p)) * pi() * pi();  // p⁻¹ϖ²
  switch (i) {
    case 1: return x(1) + r * x(2);
    case 2: return e * (x(1) - r * x(2));
    case 3: return e * x(3);
    case 4: return e * x(4);
    case 5: return x(5) + x(6);
    case 6: return e * (x(5) - x(6));
    default: throw std::out_of_range("y(i): i must be 1..6");
  }
}

std::vector<Endo> IsocrystalFrame::x_endos() const {
  std::vector<Endo> v;
  for (int i = 1; i <= 6; ++i) v.push_back(wedge_to_endo(x(i)));
  return v;
}

std::vector<Endo> IsocrystalFrame::y_endos() const {
  std::vector<Endo> v;
  for (int i = 1; i <= 6; ++i) v.push_back(wedge_to_endo(y(i)));
  return v;
}

std::optional<std::vector<QEps>> IsocrystalFrame::y_coordinates(const Endo& f) const {
  if (f.s % 2 != 1) return std::nullopt;
  // Columns 0..5: y_j entry parts; column 6: −(entry part of f).
  QMat M(32, 7);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      int row = 2 * (4 * r + c);
      for (int j = 0; j < 6; ++j) {
        M(row, j) = yend_[j].A(r, c).a();
        M(row + 1, j) = yend_[j].A(r, c).b();
      }
      M(row, 6) = -f.A(r, c).a();
      M(row + 1, 6) = -f.A(r, c).b();
    }
  for (const auto& k : M.kernel()) {
    if (k[6].is_zero()) continue;
    std::vector<QEps> eta(6);
    for (int j = 0; j < 6; ++j) eta[j] = k[j] / k[6];
    return eta;
  }
  return std::nullopt;
}

NLattice IsocrystalFrame::base_lattice() const {
  SMat B = SMat::diag({pi(), SymElem(1), pi(), SymElem(1)});
  return NLattice(nb_ring(*t_), B);
}

NLattice IsocrystalFrame::verschiebung(const NLattice& M) const {
  SMat B(4, 4);
  SymElem p(Rat(t_->p));
  for (int i = 0; i < 4; ++i) {
    Vec4 v = F_inv(M.basis().row(i));
    for (auto& x : v) x = p * x;
    B.set_row(i, v);
  }
  return NLattice(M.ring(), B);
}

DvrLattice<QEps> IsocrystalFrame::integrality_lattice(const NLattice& N, int k) const {
  SMat T = nb_ring(*t_).pi_pow(k) * N.basis();
  SMat Tinv = T.inverse();
  // Coordinates of y_j(n_r) in the basis of ϖ^k N: row vector y_j(n_r)·T⁻¹.
  QMat M(32, 6);
  for (int r = 0; r < 4; ++r) {
    Vec4 n = N.basis().row(r);
    for (int j = 0; j < 6; ++j) {
      Vec4 w = yend_[j](n);
      for (int s = 0; s < 4; ++s) {
        SymElem c(0);
        for (int l = 0; l < 4; ++l)
          if (!w[l].is_zero() && !Tinv(l, s).is_zero()) c += w[l] * Tinv(l, s);
        M(8 * r + 2 * s, j) = c.a();
        M(8 * r + 2 * s + 1, j) = c.b();
      }
    }
  }
  DvrLattice<QEps> rows(Dvr<QEps>(*t_), M);
  return rows.standard_dual();
}

DvrLattice<QEps> IsocrystalFrame::special_lattice_of(const NLattice& M) const {
  return integrality_lattice(verschiebung(M), -1);
}

QMat IsocrystalFrame::y_gram() const {
  SMat G = clifford_gram(yend_);
  QMat Q(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (!G(i, j).b().is_zero()) throw std::logic_error("y_gram: entry outside Q(ε)");
      Q(i, j) = G(i, j).a();
    }
  return Q;
}

DvrLattice<QEps> IsocrystalFrame::L0() const { return integrality_lattice(base_lattice(), 0); }

DvrLattice<QEps> IsocrystalFrame::L0_dual_expected() const {
  QMat B(6, 6);
  for (int i = 1; i <= 6; ++i) {
    auto c = y_coordinates(wedge_to_endo(x(i)));
    if (!c) throw std::logic_error("x_i outside the y-span");
    B.set_row(i - 1, *c);
  }
  return DvrLattice<QEps>(Dvr<QEps>(*t_), B);
}

QMat IsocrystalFrame::action_on_y(const SMat& g) const {
  SMat gi = g.inverse();
  QMat out(6, 6);
  for (int j = 0; j < 6; ++j) {
    Endo conj_by{g * yend_[j].A * conj_mat(gi), 1};
    auto c = y_coordinates(conj_by);
    if (!c) throw std::invalid_argument("action_on_y: g does not preserve L_b");
    for (int i = 0; i < 6; ++i) out(i, j) = (*c)[i];
  }
  return out;
}

SMat clifford_gram(const std::vector<Endo>& basis) {
  int n = static_cast<int>(basis.size());
  SMat G(n, n);
  SymElem half(Rat(1, 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Endo a = compose(basis[i], basis[j]) + compose(basis[j], basis[i]);
      auto s = a.as_scalar();
      if (!s) throw std::logic_error("clifford_gram: anticommutator (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not scalar");
      G(i, j) = G(j, i) = half * *s;
    }
  return G;
}

PiclReport verify_picl(const IsocrystalFrame& fr) {
  auto ys = fr.y_endos();
  Endo fwd = Endo::identity(), rev = Endo::identity();
  for (int i = 0; i < 6; ++i) {
    fwd = compose(fwd, ys[i]);
    rev = compose(rev, ys[5 - i]);
  }
  SymElem e = fr.eps();
  SymElem c = SymElem(Rat(-fr.tower().p)) * e * e * e * e;
  PiclReport r;
  auto s = (c * fwd).as_scalar();
  r.is_scalar = s.has_value();
  if (s) {
    r.scalar = *s;
    r.matches_pi = *s == fr.pi();
  }
  if (rev == fwd) r.reverse_sign = 1;
  else if (rev == SymElem(-1) * fwd) r.reverse_sign = -1;
  SMat G = clifford_gram(ys);
  bool diagonal = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j && !G(i, j).is_zero()) diagonal = false;
  // Reversing six pairwise anticommuting factors takes 15 transpositions.
  r.predicted_sign = diagonal ? -1 : 0;
  return r;
}

AdjointReport adjoint_identities(const IsocrystalFrame& fr, const Endo& v, const Vec4& x, const Vec4& y) {
  Vec4 vx = v(x), vy = v(y);
  AdjointReport r;
  r.hermitian = fr.form(vx, y) == -fr.form(x, vy).conj();
  r.alternating = fr.alt_form(vx, y) == fr.alt_form(x, vy);
  return r;
}

RatMat rational_y_gram(const IsocrystalFrame& fr) {
  QMat Q = fr.y_gram();
  RatMat R(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (!Q(i, j).is_rational()) throw std::logic_error("rational_y_gram: irrational entry");
      R(i, j) = Q(i, j).a();
    }
  return R;
}

std::optional<DvrLattice<Rat>> type5_lattice(const RatMat& G, long p) {
  int n = G.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && sgn(G(i, j)) != 0) return std::nullopt;
  // Rescale each basis vector so that the norm has valuation 0 or −1.
  std::vector<std::vector<Rat>> v(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> d(n);
  std::vector<int> unim, pinv;
  for (int i = 0; i < n; ++i) {
    int e = ord_p(G(i, i), p);
    int m = (-e >= 0) ? (-e) / 2 : -((e + 1) / 2);  // floor(−e/2)
    v[i][i] = pow_p(p, m);
    d[i] = G(i, i) * pow_p(p, 2 * m);
    (ord_p(d[i], p) == 0 ? unim : pinv).push_back(i);
  }
  int need = 5 - static_cast<int>(pinv.size());
  if (need < 0 || need % 2 != 0) return std::nullopt;
  int pairs = need / 2;
  // Choose disjoint unimodular pairs (i, j) with −d_i/d_j a square mod p.
  std::vector<std::pair<int, int>> chosen;
  std::vector<bool> used(n, false);
  std::function<bool(int)> search = [&](int left) -> bool {
    if (left == 0) return true;
    for (size_t a = 0; a < unim.size(); ++a) {
      if (used[unim[a]]) continue;
      for (size_t b = a + 1; b < unim.size(); ++b) {
        if (used[unim[b]]) continue;
        int i = unim[a], j = unim[b];
        long r = residue_mod(-d[i] / d[j], p);
        if (legendre(r, p) != 1) continue;
        used[i] = used[j] = true;
        chosen.push_back({i, j});
        if (search(left - 1)) return true;
        chosen.pop_back();
        used[i] = used[j] = false;
      }
    }
    return false;
  };
  if (!search(pairs)) {
    // No coordinate pairs: search the window [Λ, p⁻¹Λ^∨] over the diagonal lattice.
    RatMat B0(n, n);
    for (int i = 0; i < n; ++i) B0.set_row(i, v[i]);
    DvrLattice<Rat> base(Dvr<Rat>(p), B0);
    DvrLattice<Rat> hi = base.form_dual(G).scaled(-1);
    std::optional<DvrLattice<Rat>> out;
    for_each_lattice_between(base, hi, pairs, [&](const DvrLattice<Rat>& L) {
      if (quadratic_vertex_type(L, G) == 5) {
        out = L;
        return false;
      }
      return true;
    });
    return out;
  }
  RatMat B(n, n);
  for (int i = 0; i < n; ++i) B.set_row(i, v[i]);
  for (auto [i, j] : chosen) {
    long r = residue_mod(-d[i] / d[j], p);
    long t = 0;
    while ((t * t - r) % p != 0) ++t;
    // span(v_i, (v_i + t v_j)/p) is p⁻¹-modular.
    std::vector<Rat> w(n, Rat(0));
    for (int c = 0; c < n; ++c) w[c] = (v[i][c] + Rat(t) * v[j][c]) / Rat(p);
    B.set_row(j, w);
  }
  DvrLattice<Rat> L(Dvr<Rat>(p), B);
  if (quadratic_vertex_type(L, G) != 5) return std::nullopt;
  return L;
}

namespace {

template <class E>
void tower_batch(const DvrLattice<Rat>& L5, const RatMat& G, const Dvr<E>& R, int k, const std::vector<int>& modes,
                 int count, std::mt19937_64& rng, std::map<int, long>& by_r, long& bad, long& gen_fail) {
  Mat<E> GE = lift_matrix<E>(G);
  DvrLattice<E> Lam(R, lift_matrix<E>(L5.basis()));
  for (int i = 0; i < count; ++i) {
    auto L = random_special_lattice(Lam, GE, modes[i % modes.size()], 3, rng);
    if (!L) {
      ++gen_fail;
      continue;
    }
    auto tr = lattice_tower(*L, GE, k);
    if (!is_special(*L) || tr.type != 2 * tr.r + 1 || !tr.phi_bounded || !tr.dual_ok) ++bad;
    ++by_r[tr.r];
  }
}

}  // namespace

TowerSurvey tower_survey(const Tower& t, int count, unsigned long seed) {
  TowerSurvey sum;
  IsocrystalFrame fr(t);
  RatMat G = rational_y_gram(fr);
  auto L5 = type5_lattice(G, t.p);
  if (!L5) throw std::runtime_error("no type-5 lattice found");
  std::mt19937_64 rng(seed);
  if (UnrField::supported(t.p, 4)) {
    int a = count * 3 / 5;
    tower_batch<QEps>(*L5, G, Dvr<QEps>(t), 2, {0, 1}, a, rng, sum.by_r, sum.bad, sum.gen_fail);
    tower_batch<UnrElem>(*L5, G, Dvr<UnrElem>(UnrField::get(t.p, 4)), 4, {0, 1, 2}, count - a, rng, sum.by_r, sum.bad,
                         sum.gen_fail);
  } else {
    tower_batch<QEps>(*L5, G, Dvr<QEps>(t), 2, {0, 1}, count, rng, sum.by_r, sum.bad, sum.gen_fail);
  }
  for (auto& [r, n] : sum.by_r) sum.total += n;
  return sum;
}

}  // namespace gu22
