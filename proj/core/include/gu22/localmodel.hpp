#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gu22/finitegeom.hpp"

namespace gu22 {

// Λ₀ on f₁..f₈ (f₁ = ϖ⁻¹e₁, f₂ = ϖ⁻¹e₂, f₃ = e₃, f₄ = e₄, f₅ = e₁, ..., f₈ = ϖe₄).
// Gram of [,]₀ with the antidiagonal 2×2 blocks ±J₂.
FFRows local_model_gram(int p);
// ϖ on F_p-coordinates: f_i ↦ f_{i+4} (i ≤ 4), f_{i+4} ↦ ϖ²f_i ≡ 0.
FFVec local_model_pi(int p, const FFVec& v);
Subspace standard_point(int p, int r);  // 𝓕₀, 𝓕₁, 𝓕₂

struct NaivePoint {
  Subspace F;
  int rank = 0;     // rank of ϖ on F, i.e. the C_r index
  char sign = '+';  // OGr component, F₂ ∈ OGr⁺
};

struct NaiveEnumeration {
  int p = 0;
  long lagrangians = 0;
  std::vector<NaivePoint> points;
  std::array<long, 3> counts{};  // #C₀, #C₁, #C₂
};

// Isotropic, ϖ-stable and Kottwitz (char. poly T⁴ over F_p).
bool is_naive_point(int p, const Subspace& F);
int pi_rank(int p, const Subspace& F);
NaiveEnumeration enumerate_naive_points(int p, long double ceiling = 1e6, int threads = 1);
// All Lagrangians of J over F_p, and the naive points among a given list of them.
std::vector<Subspace> local_model_lagrangians(int p, long double ceiling = 1e6, int threads = 1);
NaiveEnumeration classify_naive(int p, const std::vector<Subspace>& lagrangians);

// Dimension of the F_p[ξ]/ξ² deformations of F preserving all three conditions.
int tangent_dimension(int p, const Subspace& F);
std::map<std::pair<int, int>, long> tangent_histogram(const NaiveEnumeration& e);  // (r, dim) -> count

struct ChartRingCheck {
  std::string chart;  // U0, U1, U2
  long modulus = 0;   // p or p²
  long actual = 0;    // solutions of isotropy + ϖ-stability + Kottwitz
  long printed = 0;   // points of the printed coordinate ring
  // The printed linear relations against the linear part of the system
  // (isotropy, plus ϖ-stability where it is linear).
  bool relations_match = false;
  std::string relations_note;
  bool matches = false;  // actual == printed
  std::string first_discrepancy;
};
struct ChartReport {
  int p = 0;
  long c = 0;  // ϖ²
  std::vector<ChartRingCheck> checks;
  bool all_match() const;
};
// c is ϖ² as an integer (p or up).
ChartReport verify_chart_equations(int p, long c, int threads = 1);

struct ComponentSplitReport {
  int p = 0;
  std::array<long, 3> plus{};
  std::array<long, 3> minus{};
  bool ok() const { return minus[0] == 0 && minus[2] == 0 && plus[1] == 0; }
};
ComponentSplitReport component_split_audit(const NaiveEnumeration& e);

// Random element of 𝒢(F_p): g = [[P, 0], [Q, P]] with P a symplectic similitude and PᵀKQ alternating.
FFRows random_group_element(int p, unsigned long seed);
Subspace apply_group(int p, const FFRows& g, const Subspace& F);

}  // namespace gu22
