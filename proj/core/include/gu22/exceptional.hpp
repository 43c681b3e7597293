#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gu22/arith.hpp"
#include "gu22/invariants.hpp"
#include "gu22/lattices.hpp"
#include "gu22/matrix.hpp"

namespace gu22 {

using Vec4 = std::vector<SymElem>;

// Coefficients on e_i∧e_j in the order 12, 13, 14, 23, 24, 34.
using Wedge2Elem = std::array<SymElem, 6>;

constexpr std::array<std::pair<int, int>, 6> kWedgePairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int wedge_index(int i, int j);  // i < j

Wedge2Elem wedge(const Vec4& x, const Vec4& y);
Wedge2Elem operator+(const Wedge2Elem& a, const Wedge2Elem& b);
Wedge2Elem operator-(const Wedge2Elem& a, const Wedge2Elem& b);
Wedge2Elem operator*(const SymElem& s, const Wedge2Elem& a);
bool is_zero(const Wedge2Elem& a);

// σ^s-semilinear map z ↦ A·conj^s(z); wedge images have s = 1.
struct Endo {
  SMat A;
  int s = 0;

  static Endo identity() { return {SMat::identity(4), 0}; }
  static Endo scalar(const SymElem& c) { return {SMat::diag({c, c, c, c}), 0}; }
  Vec4 operator()(const Vec4& z) const;
  bool operator==(const Endo& o) const { return s % 2 == o.s % 2 && A == o.A; }
  std::optional<SymElem> as_scalar() const;
};
Endo compose(const Endo& f, const Endo& g);  // f ∘ g
Endo operator+(const Endo& f, const Endo& g);
Endo operator*(const SymElem& c, const Endo& f);

class IsocrystalFrame {
 public:
  explicit IsocrystalFrame(const Tower& t);

  const Tower& tower() const { return *t_; }
  const SMat& gram() const { return H_; }
  const SMat& frobenius() const { return Fm_; }  // F(z) = Fm·σ(z)
  SymElem eps() const { return SymElem::eps(*t_); }
  SymElem pi() const { return SymElem::pi(*t_); }
  SymElem eta() const;
  SymElem form(const Vec4& x, const Vec4& y) const;      // xᵀ H conj(y)
  SymElem alt_form(const Vec4& x, const Vec4& y) const;  // ϖ-coefficient of ⟨x, y⟩
  Vec4 F(const Vec4& z) const;
  Vec4 F_inv(const Vec4& z) const;

  Endo wedge_to_endo(const Wedge2Elem& v) const;
  SymElem pair2(const Wedge2Elem& v, const Wedge2Elem& w) const;
  Wedge2Elem hodge_star(const Wedge2Elem& v) const;
  Wedge2Elem phi(const Wedge2Elem& v) const;
  Endo phi(const Endo& f) const;

  // i = 1..6
  Wedge2Elem x(int i) const;
  Wedge2Elem y(int i) const;
  std::vector<Endo> x_endos() const;
  std::vector<Endo> y_endos() const;

  // η_j with Σ η_j y_j = f, η_j ∈ Q(ε); nullopt if f ∉ span_{Q(ε)} y.
  std::optional<std::vector<QEps>> y_coordinates(const Endo& f) const;

  NLattice base_lattice() const;  // M₀
  // {v ∈ span_W(y) : v(N) ⊂ ϖ^k N}, in y-coordinates.
  DvrLattice<QEps> integrality_lattice(const NLattice& N, int k) const;
  NLattice verschiebung(const NLattice& M) const;  // pF⁻¹M
  DvrLattice<QEps> special_lattice_of(const NLattice& M) const;

  // Gram of L_{b,0} on y₁..y₆.
  QMat y_gram() const;
  // The lattices L₀ = span(x₁, x₂, ϖ²x₃, x₄, x₅, x₆) and span(x₁..x₆) in y-coordinates.
  DvrLattice<QEps> L0() const;
  DvrLattice<QEps> L0_dual_expected() const;

  // g ∈ G with Fg = gF acts on L_b by v ↦ g∘v∘g⁻¹; the matrix in y-coordinates.
  QMat action_on_y(const SMat& g) const;

 private:
  const Tower* t_;
  SMat H_, Fm_, Fm_inv_;
  std::vector<Endo> yend_;
};

// Matrix of [,] = ½(vw + wv) on the given list; throws if an entry is not scalar.
SMat clifford_gram(const std::vector<Endo>& basis);

struct PiclReport {
  SymElem scalar;           // value λ with −pε⁴ y₁⋯y₆ = λ·id, if scalar
  bool is_scalar = false;
  bool matches_pi = false;  // λ = ϖ
  int reverse_sign = 0;     // y₆⋯y₁ = sign · y₁⋯y₆
  int predicted_sign = 0;   // from the Gram (pairwise anticommutation)
};
PiclReport verify_picl(const IsocrystalFrame& fr);

struct AdjointReport {
  bool hermitian = false;    // ⟨vx, y⟩ = −conj⟨x, vy⟩
  bool alternating = false;  // (vx, y) = (x, vy)
};
AdjointReport adjoint_identities(const IsocrystalFrame& fr, const Endo& v, const Vec4& x, const Vec4& y);

// Special lattice tower over W(F_{p^k}) in coordinates where Φ = σ entrywise.
template <class E>
struct TowerResult {
  int r = -1;
  std::optional<DvrLattice<E>> top;
  int type = -1;
  bool dual_ok = false;
  bool phi_bounded = false;
};

template <class E>
int special_defect(const DvrLattice<E>& L) {
  return module_length(L + L.sigma(), L);
}

template <class E>
bool is_special(const DvrLattice<E>& L) {
  return special_defect(L) <= 1;
}

// sigma_order: the order of σ on the coefficient field (k).
template <class E>
TowerResult<E> lattice_tower(const DvrLattice<E>& L, const Mat<E>& G, int sigma_order, int max_r = 2) {
  TowerResult<E> res;
  DvrLattice<E> cur = L;
  int r = 0;
  while (cur.sigma() != cur) {
    if (r >= max_r) throw std::runtime_error("lattice_tower: tower not stable by r = " + std::to_string(max_r));
    cur = L + cur.sigma();
    ++r;
  }
  res.r = r;
  res.type = quadratic_vertex_type(cur, G);
  DvrLattice<E> Ld = L.form_dual(G);
  DvrLattice<E> fixed = Ld;
  DvrLattice<E> step = Ld;
  for (int n = 1; n < sigma_order; ++n) {
    step = step.sigma();
    fixed = fixed.intersect(step);
  }
  res.dual_ok = cur.form_dual(G) == fixed;
  res.phi_bounded = Ld.scaled(-1).contains(L.sigma());
  res.top = cur;
  return res;
}

// Random special lattices inside a type-5 vertex lattice Λ (rational basis,
// rational Gram G), over W(F_{p^k}) realised by E with ring R.
// The lattice is the dual of Λ^∨ + W for an isotropic plane W ⊂ Λ/Λ^∨ with W ∩ ΦW ≠ 0.
// mode 0: W Φ-stable (r = 0); mode 1: W through a rational isotropic line
// (r = 1); mode 2: W = span(a, Φa) not Φ-stable (r = 2; needs k ≥ 4, since
// for k ≤ 3 such a W would span a totally isotropic 3-space).
// Reflections in random rational anisotropic vectors are applied afterwards.
template <class E>
std::optional<DvrLattice<E>> random_special_lattice(const DvrLattice<E>& Lam, const Mat<E>& G, int mode, int reflections,
                                                    std::mt19937_64& rng, int max_tries = 20000);

// A type-5 vertex lattice in L_{b,0}, or nullopt if the diagonal search fails.
std::optional<DvrLattice<Rat>> type5_lattice(const RatMat& G, long p);

// Embeds a rational matrix in any coefficient field.
template <class E>
Mat<E> lift_matrix(const RatMat& m) {
  Mat<E> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = E(m(i, j));
  return r;
}

// y-Gram as a rational matrix (throws if some entry involves ε).
RatMat rational_y_gram(const IsocrystalFrame& fr);

// Towers of `count` random special lattices inside a type-5 lattice: over
// W(F_{p²}) exactly through Q(ε), and over W(F_{p⁴}) too when that layer exists
// (then 3/5 of the samples are at k = 2). `bad` counts lattices that are not
// special or whose tower has type ≠ 2r+1, a wrong dual or Φ(L) ⊄ p⁻¹L^∨.
struct TowerSurvey {
  std::map<int, long> by_r;
  long total = 0;
  long bad = 0;
  long gen_fail = 0;
};
TowerSurvey tower_survey(const Tower& t, int count, unsigned long seed);

}  // namespace gu22

#include "gu22/exceptional_impl.hpp"
