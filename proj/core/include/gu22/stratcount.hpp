#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gu22/exceptional.hpp"
#include "gu22/finitegeom.hpp"
#include "gu22/invariants.hpp"
#include "gu22/lattices.hpp"

namespace gu22 {

enum class AmbientKind { Hermitian, Quadratic };

// Hermitian C_b over O_F (E = SymElem), or the quadratic space L_{b,0} over Z_p (E = Rat).
template <class E>
struct LinkAmbient {
  AmbientKind kind;
  Dvr<E> R;
  Mat<E> G;
  bool neutral = true;
  std::vector<int> menu;  // allowed types
};
using HermAmbient = LinkAmbient<SymElem>;
using QuadAmbient = LinkAmbient<Rat>;

// j = 0: neutral (split antidiagonal Gram), j = 1: diag(1,1,1,u).
HermAmbient hermitian_ambient(int j, const Tower& t);
// L_{b,0} with the y-basis Gram.
QuadAmbient quadratic_ambient(const Tower& t);

template <class E>
struct VertexLattice {
  DvrLattice<E> L;
  int type = -1;
};

template <class E>
std::optional<VertexLattice<E>> certify(const LinkAmbient<E>& amb, const DvrLattice<E>& L);

struct ResidueSpace {
  FiniteQuadSpace space;
  std::string quotient;  // "T/ϖT^∨", "T^∨/ϖT" or "Λ/Λ^∨"
  bool has_expectation = false;
  int expected_dim = 0;
  QuadKind expected_kind = QuadKind::SplitEven;
  bool matches() const;
};

// Throws std::logic_error when strict and the classification differs from the table.
template <class E>
ResidueSpace residue_space(const LinkAmbient<E>& amb, const VertexLattice<E>& T, bool strict = true);

struct LinkOptions {
  long double ceiling = 1e6;
  int threads = 1;
  bool residue_prefilter = true;  // off: every lattice in the window is certified
};

// Proper sub-vertex lattices, sorted by key.
template <class E>
std::vector<VertexLattice<E>> enumerate_subvertex(const LinkAmbient<E>& amb, const VertexLattice<E>& T,
                                                  const LinkOptions& opt = {});
// Proper vertex lattices containing T, found through the dual window.
template <class E>
std::vector<VertexLattice<E>> enumerate_supervertex(const LinkAmbient<E>& amb, const VertexLattice<E>& T,
                                                    const LinkOptions& opt = {});

struct LinkTable {
  std::map<int, long> sub;
  std::map<int, long> super;
};
template <class E>
LinkTable link_counts(const LinkAmbient<E>& amb, const VertexLattice<E>& T, const LinkOptions& opt = {});

// Vertex lattices T'' ≠ T of T's type sharing a sub-vertex lattice of type `via`
// with T, bucketed by the type of T ∩ T'' (−1: not a vertex lattice).
struct IncidenceReport {
  int via = 0;
  long neighbours = 0;
  std::map<int, long> by_meet_type;
};
template <class E>
IncidenceReport incidence(const LinkAmbient<E>& amb, const VertexLattice<E>& T, int via, const LinkOptions& opt = {});

// Orders on hermitian vertex lattices.
enum class Relation { Less, Greater, Incomparable, Equal };
std::string to_string(Relation r);

// The fixed type-4 lattice T̄₀ = span(e₁, e₂, ϖe₃, ϖe₄) of the neutral frame.
DvrLattice<SymElem> t0_bar(const HermAmbient& amb);
// length(T + T̄₀)/T̄₀ even.
bool in_even_class(const HermAmbient& amb, const VertexLattice<SymElem>& T);

struct OrderResult {
  Relation leq;   // ≤
  Relation prec;  // ≼ (only on types 0 and 4; Incomparable otherwise)
};
OrderResult order_check(const HermAmbient& amb, const VertexLattice<SymElem>& a, const VertexLattice<SymElem>& b);

// Vertex lattices of type 0 or 4 within ≼-distance one of T: sub-vertex lattices of T
// and of every vertex lattice S ⊇ T in [T, T^∨].
std::vector<VertexLattice<SymElem>> prec_candidates(const HermAmbient& amb, const VertexLattice<SymElem>& T,
                                                    const LinkOptions& opt = {});

struct AuditRow {
  std::string relation;  // e.g. "type-1 ⊂ Λ(5)"
  std::string dictionary;
  long quadratic = 0;
  long hermitian = 0;
  bool agree() const { return quadratic == hermitian; }
};
struct CorrespondenceReport {
  int p = 0;
  std::vector<AuditRow> rows;
  bool all_agree() const;
};
CorrespondenceReport correspondence_audit(const Tower& t, const LinkOptions& opt = {});

// Representatives used by the reports.
std::optional<VertexLattice<Rat>> quadratic_type5(const QuadAmbient& amb);
VertexLattice<SymElem> hermitian_self_dual(const HermAmbient& amb);  // O⁴ when j = 1

}  // namespace gu22
