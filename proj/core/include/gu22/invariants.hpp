#pragma once

#include <string>
#include <vector>

#include "gu22/arith.hpp"
#include "gu22/lattices.hpp"
#include "gu22/matrix.hpp"

namespace gu22 {

enum class FormKind { Symmetric, Hermitian, Alternating };

struct GramForm {
  SMat G;
  FormKind kind;
  bool well_formed() const;  // symmetry matching kind
  bool nondegenerate() const { return !is_zero(G.det()); }
};

// Square class in Q_p^×/(Q_p^×)² as (odd valuation?, nonsquare unit part?).
struct SquareClass {
  bool odd = false;
  bool nonsquare = false;
  Rat representative(long p) const;  // one of 1, u, p, up
  std::string label() const;         // "1", "u", "p", "up"
  bool operator==(const SquareClass& o) const { return odd == o.odd && nonsquare == o.nonsquare; }
};
SquareClass square_class(const Rat& x, long p);

struct QuadInvariants {
  int dim = 0;
  SquareClass disc;
  int hasse = 1;
};

// Diagonal entries of a congruence diagonalization P G Pᵀ over Q.
std::vector<Rat> diagonalize_congruence(const RatMat& G);
QuadInvariants quad_invariants(const RatMat& G, long p);

// Norm group of F = Q_p(ϖ), ϖ² = c.
bool is_norm(const Rat& x, const Tower& t);
bool hermitian_is_split(const SMat& G, const Tower& t);

SMat antidiagonal_hermitian(int n);

struct GroupElement {
  SMat g;
  SymElem sml;
};
// Computes the similitude scalar from gᵀ H conj(g) = c H; throws if g is not a similitude.
GroupElement make_group_element(const SMat& g, const SMat& H);
SymElem similitude_factor(const SMat& g, const SMat& H);

SMat b0_matrix(const Tower& t);
SMat b1_matrix(const Tower& t);

struct KottwitzClass {
  int w = 0;
  int d = 0;
  bool operator==(const KottwitzClass& o) const { return w == o.w && d == o.d; }
};
KottwitzClass kottwitz(const GroupElement& b);
bool is_mu_neutral(const GroupElement& b);
bool is_basic_slope_half(const GroupElement& b, const Tower& t);

using NLattice = DvrLattice<SymElem>;

// Dvr of the N_b layer: O_F̆ with residue field F_{p²}.
Dvr<SymElem> nb_ring(const Tower& t);
NLattice lambda_bar(const Tower& t);
// F_b⁻¹(M) = σ⁻¹(b⁻¹ M) and V_b = p F_b⁻¹.
NLattice frobenius_inverse(const NLattice& M, const GroupElement& b);
NLattice verschiebung(const NLattice& M, const GroupElement& b);

// Dual for (,) = ½ tr(ϖ⁻¹⟨,⟩), computed through the 2n-dimensional
// K_0-expansion on the basis e_i, ϖe_i.
NLattice alternating_dual(const NLattice& L, const SMat& H);

struct DilReport {
  bool modular = false;
  bool chain = false;
  int length_top = -1;     // length M / F_b⁻¹(pM)
  int length_middle = -1;  // length ϖM + F_b⁻¹(pM) / F_b⁻¹(pM)
  bool all() const { return modular && chain && length_top == 4 && length_middle >= 0 && length_middle <= 2; }
};
DilReport dil_conditions(const NLattice& M, const GroupElement& b, const SMat& H);
bool is_dil_lattice(const NLattice& M, const GroupElement& b, const SMat& H);

struct NeutralityReport {
  bool i = false;
  bool ii_literal = false;  // det/sml ∈ 1 + ϖO
  bool ii_squared = false;  // det/sml² ∈ 1 + ϖO
  bool iii = false;
  bool iv = false;
  int iv_length = -1;
  bool agree = false;  // (i), (ii) in the det/sml² reading, (iii), (iv)
};
NeutralityReport neutrality_report(const GroupElement& b, const NLattice& M, const SMat& H, const SMat& cb_gram);

// Frame constants for C_b: split antidiagonal for b₀, diag(1,1,1,u) for b₁.
SMat cb_gram(int j, const Tower& t);
// Gram of F_{b,0}-fixed vectors v = x + Aσ(x), A = ϖ⁻¹b; valid when η = 1.
SMat derived_cb_gram(const GroupElement& b, const Tower& t, const SMat& H);

}  // namespace gu22
