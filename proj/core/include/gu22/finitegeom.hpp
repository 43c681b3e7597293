#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gu22/arith.hpp"
#include "gu22/ffspace.hpp"

namespace gu22 {

enum class QuadKind { SplitEven, NonSplitEven, Odd };
std::string to_string(QuadKind k);

struct CeilingExceeded : std::runtime_error {
  long double predicted;
  CeilingExceeded(long double pred, long double ceiling);
};

// Quadratic space over F_p with Gram matrix G (entries 0..p-1) and Frobenius
// Φ(v)_i = frob(v_{twist[i]}), i.e. a coordinate permutation composed with the
// p-power map on coefficients.
struct FiniteQuadSpace {
  int p = 0;
  int n = 0;
  QuadKind kind = QuadKind::SplitEven;
  FFRows gram;
  std::vector<int> twist;

  // e₁..e_d, f₁..f_d with [e_i, f_j] = δ_ij; Φ swaps e_d and f_d when non-split.
  // Odd n = 2d−1: ω_d^⊥ on the basis e₁..e_{d−1}, e_d+f_d, f_{d−1}..f₁.
  static FiniteQuadSpace standard(int p, int n, QuadKind kind);
  // Arbitrary Gram with Φ the coordinatewise p-power map; kind is computed.
  static FiniteQuadSpace from_gram(int p, const FFRows& gram);

  bool twisted() const;
  int max_isotropic_dim() const { return n / 2; }
  // Classification recomputed from the discriminant.
  QuadKind computed_kind() const;
  int bil(const FField& F, const FFVec& x, const FFVec& y) const;
  FFVec phi(const FField& F, const FFVec& v) const;
  // Field in which F_{p^k}-rational subspaces are enumerated (degree k, or 2k when twisted and k odd).
  int enumeration_degree(int k) const;
};

// Canonical (RREF) subspace over a fixed F_q.
struct Subspace {
  FFRows rows;
  int dim() const { return static_cast<int>(rows.size()); }
  bool operator==(const Subspace& o) const { return rows == o.rows; }
  bool operator<(const Subspace& o) const { return rows < o.rows; }
};

Subspace make_subspace(const FField& F, FFRows rows);
Subspace subspace_sum(const FField& F, const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const FField& F, const Subspace& a, const Subspace& b, int n);
// Basis of {x : r·x = 0 for all rows r}.
FFRows ff_kernel(const FField& F, const FFRows& rows, int n);
Subspace phi(const FiniteQuadSpace& V, const FField& F, const Subspace& L);
bool is_totally_isotropic(const FiniteQuadSpace& V, const FField& F, const Subspace& L);

// Number of totally isotropic d-subspaces of a nondegenerate space of the given kind over F_q.
long double predicted_isotropic_count(int n, int d, long q, QuadKind kind);

// All totally isotropic d-subspaces over F (sorted); throws CeilingExceeded.
std::vector<Subspace> enumerate_isotropic(const FiniteQuadSpace& V, const FField& F, int d, long double ceiling = 1e6,
                                          int threads = 1);
// F_{p^k}-rational maximal isotropic subspaces (Φ^k L = L), over FField(p, enumeration_degree(k)).
std::vector<Subspace> rational_lagrangians(const FiniteQuadSpace& V, int k, long double ceiling = 1e6, int threads = 1);

struct StratumLabel {
  int r = 0;
  char sign = '0';  // '+', '-', or '0' when n is odd
  bool operator<(const StratumLabel& o) const { return r != o.r ? r < o.r : sign < o.sign; }
  bool operator==(const StratumLabel& o) const { return r == o.r && sign == o.sign; }
  std::string str() const;
};

// Reference Lagrangian span(e₁..e_d) of the standard basis.
Subspace reference_lagrangian(const FiniteQuadSpace& V, const FField& F);
char ogr_component(const FField& F, const Subspace& L, const Subspace& ref, int n);
int tower_index(const FiniteQuadSpace& V, const FField& F, const Subspace& L);
StratumLabel dl_stratum_label(const FiniteQuadSpace& V, const FField& F, const Subspace& L);
// rk(L ∩ ΦL) ≥ m with the printed m.
int s_omega_threshold(const FiniteQuadSpace& V);
bool in_s_omega(const FiniteQuadSpace& V, const FField& F, const Subspace& L);

struct StratumCounts {
  int k = 0;
  long total = 0;
  std::map<StratumLabel, long> by_label;
  long s_plus = 0;   // #(S_Ω ∩ OGr⁺)
  long s_minus = 0;  // #(S_Ω ∩ OGr⁻)
  long sum() const;
};
// Counts over an already enumerated list of F_{p^k}-rational Lagrangians.
StratumCounts count_strata(const FiniteQuadSpace& V, int k, const std::vector<Subspace>& lagrangians);
std::vector<StratumCounts> stratum_point_counts(const FiniteQuadSpace& V, int k_max, long double ceiling = 1e6,
                                                int threads = 1);

long fermat_count(int p, int k);

struct FermatComparison {
  int k = 0;
  long s_plus = 0;
  long fermat = 0;
  bool equal() const { return s_plus == fermat; }
};
std::vector<FermatComparison> compare_s_fermat(int p, int k_max, int threads = 1);

struct BijectionReport {
  int d = 0;
  int k = 0;
  long source = 0;  // #OGr⁺(Ω_{2d})(F_{p^k})
  long target = 0;  // #OGr(Ω_{2d−1})(F_{p^k})
  bool injective = false;
  bool surjective = false;
  bool labels_match = false;  // r(L) = r(L ∩ Ω_{2d−1})
  long s_mismatches = 0;      // L ∈ S⁺ but image ∉ S_{Ω_{2d−1}}, or vice versa
  bool bijective() const { return injective && surjective; }
};
std::vector<BijectionReport> so6_so5_bijection(int p, int d, int k_max, int threads = 1);

}  // namespace gu22
