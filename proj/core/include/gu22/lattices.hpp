#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gu22/arith.hpp"
#include "gu22/ffspace.hpp"
#include "gu22/matrix.hpp"

namespace gu22 {

// Canonical representative of x modulo p^k Z_p (k may be negative).
Rat reduce_mod_pk(const Rat& x, long p, int k);

// Ring data for a DVR whose fraction field is E. Each provides the valuation,
// the uniformizer powers, canonical residues mod π^k, the form involution
// conj, the Frobenius sigma, and residue-field indices.
template <class E>
struct Dvr;

template <>
struct Dvr<Rat> {
  long p;
  explicit Dvr(long p_) : p(p_) {}
  int val(const Rat& x) const { return ord_p(x, p); }
  Rat pi_pow(int k) const { return pow_p(p, k); }
  Rat reduce(const Rat& x, int k) const { return reduce_mod_pk(x, p, k); }
  Rat conj(const Rat& x) const { return x; }
  Rat sigma(const Rat& x) const { return x; }
  int q() const { return static_cast<int>(p); }
  int residue(const Rat& x) const { return static_cast<int>(residue_mod(x, p)); }
  Rat lift(int idx) const { return Rat(idx); }
};

// Z_p[ε] inside Q_p(ε); the involution is trivial (bilinear forms).
template <>
struct Dvr<QEps> {
  const Tower* t;
  long p;
  explicit Dvr(const Tower& tw) : t(&tw), p(tw.p) {}
  int val(const QEps& x) const { return x.vp(p); }
  QEps pi_pow(int k) const { return QEps(t, pow_p(p, k)); }
  QEps reduce(const QEps& x, int k) const {
    return QEps(t, reduce_mod_pk(x.a(), p, k), reduce_mod_pk(x.b(), p, k));
  }
  QEps conj(const QEps& x) const { return x; }
  QEps sigma(const QEps& x) const { return x.sigma(); }
  int q() const { return static_cast<int>(p * p); }
  int residue(const QEps& x) const {
    return static_cast<int>(residue_mod(x.a(), p) + p * residue_mod(x.b(), p));
  }
  QEps lift(int idx) const { return QEps(t, Rat(idx % p), Rat(idx / p)); }
};

// O_F̆ = Z_p[ε][ϖ] (or O_F when only rational ε-free entries occur).
// unramified_degree selects the residue field F_p or F_{p²}.
template <>
struct Dvr<SymElem> {
  const Tower* t;
  long p;
  int unramified_degree;
  explicit Dvr(const Tower& tw, int deg = 1) : t(&tw), p(tw.p), unramified_degree(deg) {}
  int val(const SymElem& x) const { return x.valuation(p); }
  SymElem pi_pow(int k) const {
    int m = k >= 0 ? k / 2 : -((-k + 1) / 2);
    Rat cm = m >= 0 ? Rat(ipow(t->c, m)) : Rat(Int(1), ipow(t->c, -m));
    if (k - 2 * m == 0) return SymElem(t, QEps(t, cm), QEps(t, 0));
    return SymElem(t, QEps(t, 0), QEps(t, cm));
  }
  SymElem reduce(const SymElem& x, int k) const {
    int lo = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
    int hi = k - lo;                              // ceil(k/2)
    Dvr<QEps> w(*t);
    return SymElem(t, w.reduce(x.a(), hi), w.reduce(x.b(), lo));
  }
  SymElem conj(const SymElem& x) const { return x.conj(); }
  SymElem sigma(const SymElem& x) const { return x.sigma(); }
  int q() const { return unramified_degree == 1 ? static_cast<int>(p) : static_cast<int>(p * p); }
  int residue(const SymElem& x) const {
    if (x.valuation(p) < 0) throw std::domain_error("residue of a non-integral element");
    Dvr<QEps> w(*t);
    int r = w.residue(x.a());
    if (unramified_degree == 1 && r >= p) throw std::domain_error("residue outside F_p");
    return r;
  }
  SymElem lift(int idx) const { return SymElem(Dvr<QEps>(*t).lift(idx)); }
};

// W(F_{p^k}) inside UnrField(p, k); residue indices follow FField(p, k).
template <>
struct Dvr<UnrElem> {
  const UnrField* F;
  long p;
  explicit Dvr(const UnrField& f) : F(&f), p(f.p) {}
  int val(const UnrElem& x) const { return x.vp(p); }
  UnrElem pi_pow(int k) const { return UnrElem(F, {pow_p(p, k)}); }
  UnrElem reduce(const UnrElem& x, int k) const {
    std::vector<Rat> c(F->k);
    for (int i = 0; i < F->k; ++i) c[i] = reduce_mod_pk(x.coeff(i), p, k);
    return UnrElem(F, c);
  }
  UnrElem conj(const UnrElem& x) const { return x; }
  UnrElem sigma(const UnrElem& x) const { return x.sigma(); }
  int q() const { return static_cast<int>(ipow(p, F->k).get_si()); }
  int residue(const UnrElem& x) const {
    long r = 0, m = 1;
    for (int i = 0; i < F->k; ++i, m *= p) r += residue_mod(x.coeff(i), p) * m;
    return static_cast<int>(r);
  }
  UnrElem lift(int idx) const {
    std::vector<Rat> c(F->k);
    for (int i = 0; i < F->k; ++i, idx /= static_cast<int>(p)) c[i] = idx % p;
    return UnrElem(F, c);
  }
};

using ElementaryDivisors = std::vector<int>;

// U·A·V = D with D diagonal, diagonal entries π^{d_i}, d non-decreasing.
template <class E>
struct SmithForm {
  Mat<E> U, D, V;
  ElementaryDivisors divisors;
};

template <class E>
SmithForm<E> smith_normal_form(const Dvr<E>& R, const Mat<E>& A) {
  int n = A.rows(), m = A.cols();
  SmithForm<E> s{Mat<E>::identity(n), A, Mat<E>::identity(m), {}};
  Mat<E>& D = s.D;
  for (int t = 0; t < std::min(n, m); ++t) {
    int bi = -1, bj = -1, bv = kInf;
    for (int i = t; i < n; ++i)
      for (int j = t; j < m; ++j) {
        if (is_zero(D(i, j))) continue;
        int v = R.val(D(i, j));
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    D.swap_rows(t, bi);
    s.U.swap_rows(t, bi);
    D.swap_cols(t, bj);
    s.V.swap_cols(t, bj);
    E unit = R.pi_pow(bv) / D(t, t);
    for (int j = 0; j < m; ++j) D(t, j) *= unit;
    for (int j = 0; j < n; ++j) s.U(t, j) *= unit;
    for (int i = t + 1; i < n; ++i) {
      if (is_zero(D(i, t))) continue;
      E f = D(i, t) / D(t, t);
      for (int j = t; j < m; ++j) D(i, j) -= f * D(t, j);
      for (int j = 0; j < n; ++j) s.U(i, j) -= f * s.U(t, j);
    }
    for (int j = t + 1; j < m; ++j) {
      if (is_zero(D(t, j))) continue;
      E f = D(t, j) / D(t, t);
      for (int i = t; i < n; ++i) D(i, j) -= f * D(i, t);
      for (int i = 0; i < m; ++i) s.V(i, j) -= f * s.V(i, t);
    }
    s.divisors.push_back(bv);
  }
  return s;
}

template <class E>
class DvrLattice {
 public:
  // Row span of gens over the DVR; gens may have more rows than columns.
  DvrLattice(const Dvr<E>& R, const Mat<E>& gens) : R_(R), B_(canonical(R, gens)) {}

  static DvrLattice standard(const Dvr<E>& R, int n) { return DvrLattice(R, Mat<E>::identity(n)); }

  const Dvr<E>& ring() const { return R_; }
  const Mat<E>& basis() const { return B_; }
  int dim() const { return B_.cols(); }
  const std::string& key() const { return key_(); }

  // Sum of pivot exponents, i.e. the valuation of the basis determinant.
  int volume() const {
    int s = 0;
    for (int j = 0; j < dim(); ++j) s += R_.val(B_(j, j));
    return s;
  }

  bool contains(const std::vector<E>& v) const {
    int n = dim();
    std::vector<E> x(n, E(0));
    for (int j = 0; j < n; ++j) {
      E acc = v[j];
      for (int i = 0; i < j; ++i)
        if (!is_zero(x[i]) && !is_zero(B_(i, j))) acc -= x[i] * B_(i, j);
      if (is_zero(acc)) continue;
      x[j] = acc / B_(j, j);
      if (R_.val(x[j]) < 0) return false;
    }
    return true;
  }
  // o ⊆ *this
  bool contains(const DvrLattice& o) const {
    for (int i = 0; i < o.dim(); ++i)
      if (!contains(o.B_.row(i))) return false;
    return true;
  }
  // Index of the first basis row of o not in *this, or -1.
  int first_violation(const DvrLattice& o) const {
    for (int i = 0; i < o.dim(); ++i)
      if (!contains(o.B_.row(i))) return i;
    return -1;
  }

  DvrLattice operator+(const DvrLattice& o) const {
    int n = dim();
    Mat<E> g(2 * n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g(i, j) = B_(i, j);
        g(n + i, j) = o.B_(i, j);
      }
    return DvrLattice(R_, g);
  }
  DvrLattice add_vectors(const std::vector<std::vector<E>>& vs) const {
    int n = dim();
    Mat<E> g(n + static_cast<int>(vs.size()), n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = B_(i, j);
    for (size_t k = 0; k < vs.size(); ++k) g.set_row(n + static_cast<int>(k), vs[k]);
    return DvrLattice(R_, g);
  }
  DvrLattice intersect(const DvrLattice& o) const { return (standard_dual() + o.standard_dual()).standard_dual(); }

  DvrLattice scaled(int k) const { return DvrLattice(R_, R_.pi_pow(k) * B_); }

  // Dual for the standard bilinear pairing x·y.
  DvrLattice standard_dual() const { return DvrLattice(R_, B_.inverse().transpose()); }

  // {x : ⟨x, L⟩ ⊆ O} for ⟨x, y⟩ = xᵀ H conj(y).
  DvrLattice form_dual(const Mat<E>& H) const {
    Mat<E> cb = B_.map([this](const E& x) { return R_.conj(x); }).transpose();
    return DvrLattice(R_, (H * cb).inverse());
  }

  // Image under the linear map with matrix g acting on column vectors.
  DvrLattice transform(const Mat<E>& g) const { return DvrLattice(R_, B_ * g.transpose()); }
  DvrLattice sigma() const { return DvrLattice(R_, B_.map([this](const E& x) { return R_.sigma(x); })); }

  bool operator==(const DvrLattice& o) const { return B_ == o.B_; }
  bool operator!=(const DvrLattice& o) const { return !(B_ == o.B_); }

  std::vector<std::vector<std::string>> to_rows() const {
    std::vector<std::vector<std::string>> out;
    for (int i = 0; i < B_.rows(); ++i) {
      std::vector<std::string> r;
      for (int j = 0; j < B_.cols(); ++j) r.push_back(str(B_(i, j)));
      out.push_back(r);
    }
    return out;
  }

 private:
  static Mat<E> canonical(const Dvr<E>& R, const Mat<E>& g) {
    int m = g.rows(), n = g.cols();
    Mat<E> a(g);
    std::vector<int> piv(n);
    for (int j = 0; j < n; ++j) {
      int bi = -1, bv = kInf;
      for (int i = j; i < m; ++i) {
        if (is_zero(a(i, j))) continue;
        int v = R.val(a(i, j));
        if (v < bv) {
          bv = v;
          bi = i;
        }
      }
      if (bi < 0) throw std::domain_error("DvrLattice: generators are not of full rank");
      a.swap_rows(j, bi);
      E unit = R.pi_pow(bv) / a(j, j);
      for (int k = j; k < n; ++k)
        if (!is_zero(a(j, k))) a(j, k) *= unit;
      a(j, j) = R.pi_pow(bv);
      for (int i = j + 1; i < m; ++i) {
        if (is_zero(a(i, j))) continue;
        E f = a(i, j) / a(j, j);
        for (int k = j; k < n; ++k)
          if (!is_zero(a(j, k))) a(i, k) -= f * a(j, k);
        a(i, j) = E(0);
      }
      piv[j] = bv;
    }
    Mat<E> b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) b(i, j) = a(i, j);
    for (int j = 1; j < n; ++j) {
      for (int i = 0; i < j; ++i) {
        if (is_zero(b(i, j))) continue;
        E r = R.reduce(b(i, j), piv[j]);
        E f = (b(i, j) - r) / b(j, j);
        if (is_zero(f)) continue;
        for (int k = j; k < n; ++k)
          if (!is_zero(b(j, k))) b(i, k) -= f * b(j, k);
        b(i, j) = r;
      }
    }
    return b;
  }
  const std::string& key_() const {
    if (key_cache_.empty()) {
      std::string s;
      for (const auto& x : B_.data()) {
        s += str(x);
        s += ';';
      }
      key_cache_ = std::move(s);
    }
    return key_cache_;
  }

  Dvr<E> R_;
  Mat<E> B_;
  mutable std::string key_cache_;
};

// length(M / M') for M' ⊆ M, from the Smith form of the relative matrix.
template <class E>
int module_length(const DvrLattice<E>& M, const DvrLattice<E>& Mp) {
  int bad = M.first_violation(Mp);
  if (bad >= 0) throw std::domain_error("module_length: M' not contained in M (basis row " + std::to_string(bad) + ")");
  Mat<E> rel = Mp.basis() * M.basis().inverse();
  auto s = smith_normal_form(M.ring(), rel);
  int len = 0;
  for (int d : s.divisors) len += d;
  return len;
}

// Basis C of L (rows) with L' = span(π^{d_i} c_i); requires L' ⊆ L.
template <class E>
std::pair<Mat<E>, std::vector<int>> adapted_basis(const DvrLattice<E>& L, const DvrLattice<E>& Lp) {
  Mat<E> rel = Lp.basis() * L.basis().inverse();
  auto s = smith_normal_form(L.ring(), rel);
  Mat<E> C = s.V.inverse() * L.basis();
  return {C, s.divisors};
}

// Degree of the residue field of R over F_p.
template <class E>
int residue_degree(const Dvr<E>& R) {
  int k = 0;
  for (long m = 1; m < R.q(); m *= R.p) ++k;
  return k;
}

// Calls f(L) for every lattice lo ⊆ L ⊆ hi with length(L/lo) = d; requires
// π·hi ⊆ lo so that hi/lo is a vector space over the residue field.
template <class E, class Fn>
void for_each_lattice_between(const DvrLattice<E>& lo, const DvrLattice<E>& hi, int d, Fn&& f) {
  const Dvr<E>& R = lo.ring();
  auto [C, div] = adapted_basis(hi, lo);
  std::vector<std::vector<E>> basis;
  for (size_t i = 0; i < div.size(); ++i) {
    if (div[i] > 1) throw std::invalid_argument("for_each_lattice_between: hi/lo is not killed by the uniformizer");
    if (div[i] == 1) basis.push_back(C.row(static_cast<int>(i)));
  }
  const FField& F = FField::get(R.p, residue_degree(R));
  const int n = lo.dim();
  for_each_subspace(F, static_cast<int>(basis.size()), d, [&](const FFRows& rows) {
    std::vector<std::vector<E>> gens;
    for (const auto& r : rows) {
      std::vector<E> v(n, E(0));
      for (size_t i = 0; i < r.size(); ++i) {
        if (!r[i]) continue;
        E l = R.lift(r[i]);
        for (int j = 0; j < n; ++j)
          if (!is_zero(basis[i][j])) v[j] += l * basis[i][j];
      }
      gens.push_back(std::move(v));
    }
    return f(lo.add_vectors(gens));
  });
}

// Hermitian type: T ⊂ T^∨ ⊂ π⁻¹T, returns length(T^∨/T) or -1.
template <class E>
int hermitian_vertex_type(const DvrLattice<E>& T, const Mat<E>& H) {
  auto Td = T.form_dual(H);
  if (!Td.contains(T)) return -1;
  if (!T.scaled(-1).contains(Td)) return -1;
  return Td.volume() <= T.volume() ? T.volume() - Td.volume() : -1;
}

// Quadratic type: pΛ ⊂ Λ^∨ ⊂ Λ, returns length(Λ/Λ^∨) or -1.
template <class E>
int quadratic_vertex_type(const DvrLattice<E>& L, const Mat<E>& G) {
  auto Ld = L.form_dual(G);
  if (!L.contains(Ld)) return -1;
  if (!Ld.contains(L.scaled(1))) return -1;
  return Ld.volume() - L.volume();
}

}  // namespace gu22
