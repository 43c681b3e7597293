#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gu22 {

using Int = mpz_class;
using Rat = mpq_class;

// Valuation of zero.
constexpr int kInf = INT_MAX;

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(long n);
void require_odd_prime(long p);

int ord_p(const Int& x, long p);
int ord_p(const Rat& x, long p);
Int ipow(long base, int e);
Rat pow_p(long p, int e);  // p^e for any integer e
std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

int legendre(long a, long p);
int legendre(const Int& a, long p);
// Residue of a p-integral rational in [0, p).
long residue_mod(const Rat& x, long p);
long smallest_nonresidue(long p);

int hilbert_symbol(const Rat& a, const Rat& b, long p);

enum class Uniformizer { P, UP };

// Parameters of Q ⊂ Q(ε) ⊂ Q(ε, ϖ): ε² = u, ϖ² = c.
struct Tower {
  long p;
  long u;
  long c;
  Uniformizer kind;

  // η with η² = c/p, recorded as (coefficient of 1, coefficient of ε).
  int eta_is_eps() const { return kind == Uniformizer::UP ? 1 : 0; }
  std::string describe() const;

  static const Tower& get(long p, Uniformizer kind = Uniformizer::P);
};

// a + bε with a, b rational.
class QEps {
 public:
  QEps() = default;
  QEps(long v) : a_(v) {}  // NOLINT
  QEps(const Rat& a) : a_(a) {}  // NOLINT
  QEps(const Tower* t, const Rat& a, const Rat& b = 0) : t_(t), a_(a), b_(b) {}

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Tower* tower() const { return t_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QEps operator-() const { return QEps(t_, -a_, -b_); }
  QEps& operator+=(const QEps& o);
  QEps& operator-=(const QEps& o);
  QEps& operator*=(const QEps& o);
  QEps& operator/=(const QEps& o);
  friend QEps operator+(QEps x, const QEps& y) { return x += y; }
  friend QEps operator-(QEps x, const QEps& y) { return x -= y; }
  friend QEps operator*(QEps x, const QEps& y) { return x *= y; }
  friend QEps operator/(QEps x, const QEps& y) { return x /= y; }
  friend bool operator==(const QEps& x, const QEps& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QEps& x, const QEps& y) { return !(x == y); }

  QEps sigma() const { return QEps(t_, a_, -b_); }
  Rat norm() const;  // a² − u b²
  QEps inverse() const;
  int vp() const;  // p-adic valuation; p is inert in Q(ε)
  int vp(long p) const;
  std::string str() const;

 private:
  long u() const;
  const Tower* t_ = nullptr;
  Rat a_, b_;
};

// a + bϖ with a, b ∈ Q(ε); the four rational coefficients are
// c00 + c10 ε + c01 ϖ + c11 εϖ.
class SymElem {
 public:
  SymElem() = default;
  SymElem(long v) : a_(v) {}  // NOLINT
  SymElem(const Rat& v) : a_(v) {}  // NOLINT
  SymElem(const QEps& a) : t_(a.tower()), a_(a) {}  // NOLINT
  SymElem(const Tower* t, const QEps& a, const QEps& b) : t_(t), a_(a), b_(b) {}
  SymElem(const Tower* t, const Rat& c00, const Rat& c10, const Rat& c01, const Rat& c11)
      : t_(t), a_(t, c00, c10), b_(t, c01, c11) {}

  static SymElem eps(const Tower& t) { return SymElem(&t, 0, 1, 0, 0); }
  static SymElem pi(const Tower& t) { return SymElem(&t, 0, 0, 1, 0); }

  const QEps& a() const { return a_; }
  const QEps& b() const { return b_; }
  Rat c00() const { return a_.a(); }
  Rat c10() const { return a_.b(); }
  Rat c01() const { return b_.a(); }
  Rat c11() const { return b_.b(); }
  const Tower* tower() const { return t_ ? t_ : (a_.tower() ? a_.tower() : b_.tower()); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero() && a_.is_rational(); }
  Rat to_rat() const;  // throws unless rational

  SymElem operator-() const { return SymElem(tower(), -a_, -b_); }
  SymElem& operator+=(const SymElem& o);
  SymElem& operator-=(const SymElem& o);
  SymElem& operator*=(const SymElem& o);
  SymElem& operator/=(const SymElem& o);
  friend SymElem operator+(SymElem x, const SymElem& y) { return x += y; }
  friend SymElem operator-(SymElem x, const SymElem& y) { return x -= y; }
  friend SymElem operator*(SymElem x, const SymElem& y) { return x *= y; }
  friend SymElem operator/(SymElem x, const SymElem& y) { return x /= y; }
  friend bool operator==(const SymElem& x, const SymElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const SymElem& x, const SymElem& y) { return !(x == y); }

  SymElem sigma() const { return SymElem(tower(), a_.sigma(), b_.sigma()); }
  SymElem conj() const { return SymElem(tower(), a_, -b_); }
  QEps norm() const;  // x · conj(x) ∈ Q(ε)
  SymElem inverse() const;
  int valuation() const;  // ϖ-adic, v(ϖ) = 1, v(p) = 2
  int valuation(long p) const;
  std::string str() const;

 private:
  long c() const;
  const Tower* t_ = nullptr;
  QEps a_, b_;
};

int valuation(const SymElem& x);

// Unramified extension Q(α) of degree k ≤ 4 with a Frobenius automorphism σ:
// k = 2 uses α² = u; k = 3 uses the cubic subfield of Q(ζ₇), α = ζ + ζ⁻¹,
// where p is inert exactly when p mod 7 ∈ {2, 3, 4, 5}; k = 4 uses Q(ζ₅),
// α = ζ, where p is inert exactly when p mod 5 ∈ {2, 3}.
struct UnrField {
  long p;
  int k;
  std::vector<Rat> f;                   // monic minimal polynomial, low degree first
  std::vector<std::vector<Rat>> sigma_pow;  // σ(α)^i in the power basis, i < k

  static bool supported(long p, int k);
  static const UnrField& get(long p, int k);
};

class UnrElem {
 public:
  UnrElem() : c_{Rat(0)} {}
  UnrElem(long v) : c_{Rat(v)} {}  // NOLINT
  UnrElem(const Rat& v) : c_{v} {}  // NOLINT
  UnrElem(const UnrField* F, std::vector<Rat> c);
  static UnrElem alpha(const UnrField& F);

  const UnrField* field() const { return F_; }
  Rat coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
  bool is_zero() const;

  UnrElem operator-() const;
  UnrElem& operator+=(const UnrElem& o);
  UnrElem& operator-=(const UnrElem& o);
  UnrElem& operator*=(const UnrElem& o);
  UnrElem& operator/=(const UnrElem& o) { return *this *= o.inverse(); }
  friend UnrElem operator+(UnrElem x, const UnrElem& y) { return x += y; }
  friend UnrElem operator-(UnrElem x, const UnrElem& y) { return x -= y; }
  friend UnrElem operator*(UnrElem x, const UnrElem& y) { return x *= y; }
  friend UnrElem operator/(UnrElem x, const UnrElem& y) { return x /= y; }
  friend bool operator==(const UnrElem& x, const UnrElem& y);
  friend bool operator!=(const UnrElem& x, const UnrElem& y) { return !(x == y); }

  UnrElem inverse() const;
  UnrElem sigma() const;
  int vp(long p) const;
  std::string str() const;

 private:
  const UnrField* F_ = nullptr;
  std::vector<Rat> c_;
};

// F_{p^k} by lookup tables; elements are indices 0..q-1 with index Σ c_i p^i.
class FField {
 public:
  static const FField& get(long p, int k);

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return mod_; }  // monic, low degree first

  int add(int x, int y) const { return add_[x * q_ + y]; }
  int sub(int x, int y) const { return add_[x * q_ + neg_[y]]; }
  int mul(int x, int y) const { return mul_[x * q_ + y]; }
  int neg(int x) const { return neg_[x]; }
  int inv(int x) const;
  int frob(int x) const { return frob_[x]; }
  int pow(int x, long e) const;
  int from_int(long v) const;
  std::vector<int> coeffs(int x) const;
  int from_coeffs(const std::vector<int>& c) const;
  // Index of the generator x (or of 0..p-1 when k = 1).
  int gen() const { return k_ == 1 ? 1 : p_; }
  bool is_square(int x) const;

 private:
  FField(int p, int k);
  int p_, k_, q_;
  std::vector<int> mod_, add_, mul_, neg_, inv_, frob_;
};

class FFElem {
 public:
  FFElem(const FField& f, int v) : f_(&f), v_(v) {}
  int value() const { return v_; }
  const FField& field() const { return *f_; }
  FFElem operator+(FFElem o) const { return {*f_, f_->add(v_, o.v_)}; }
  FFElem operator-(FFElem o) const { return {*f_, f_->sub(v_, o.v_)}; }
  FFElem operator*(FFElem o) const { return {*f_, f_->mul(v_, o.v_)}; }
  FFElem operator/(FFElem o) const { return {*f_, f_->mul(v_, f_->inv(o.v_))}; }
  FFElem operator-() const { return {*f_, f_->neg(v_)}; }
  FFElem frob() const { return {*f_, f_->frob(v_)}; }
  bool operator==(FFElem o) const { return v_ == o.v_; }
  bool operator!=(FFElem o) const { return v_ != o.v_; }

 private:
  const FField* f_;
  int v_;
};

// (Z/p^m)[x]/(f) with f the integer lift of the F_{p^k} modulus.
class WittRing {
 public:
  WittRing(long p, int k, int m);
  long p() const { return p_; }
  int k() const { return k_; }
  int m() const { return m_; }
  int64_t pm() const { return pm_; }
  const std::vector<int64_t>& modulus() const { return f_; }
  // Image of the generator under the Frobenius lift (Hensel root of f near g^p).
  const std::vector<int64_t>& frobenius_lift() const { return phi_; }

  std::vector<int64_t> mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> add(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> sub(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> reduce(std::vector<int64_t> a) const;
  std::vector<int64_t> unit_inverse(const std::vector<int64_t>& a) const;
  std::vector<int64_t> apply_frobenius(const std::vector<int64_t>& a) const;

 private:
  int64_t md(int64_t x) const;
  long p_;
  int k_, m_;
  int64_t pm_;
  const FField* ff_;
  std::vector<int64_t> f_, phi_;
};

class TruncWitt {
 public:
  TruncWitt(const WittRing& r, std::vector<int64_t> c);
  static TruncWitt constant(const WittRing& r, int64_t v);
  static TruncWitt generator(const WittRing& r);

  const WittRing& ring() const { return *r_; }
  const std::vector<int64_t>& coeffs() const { return c_; }
  int precision() const { return r_->m(); }
  bool is_zero_at_precision() const;
  // p-adic valuation; throws PrecisionExhausted when zero at precision.
  int vp() const;
  FFElem reduce_mod_p() const;
  TruncWitt frobenius() const { return TruncWitt(*r_, r_->apply_frobenius(c_)); }

  TruncWitt operator+(const TruncWitt& o) const { return TruncWitt(*r_, r_->add(c_, o.c_)); }
  TruncWitt operator-(const TruncWitt& o) const { return TruncWitt(*r_, r_->sub(c_, o.c_)); }
  TruncWitt operator*(const TruncWitt& o) const { return TruncWitt(*r_, r_->mul(c_, o.c_)); }
  bool operator==(const TruncWitt& o) const { return c_ == o.c_; }
  bool operator!=(const TruncWitt& o) const { return c_ != o.c_; }

 private:
  const WittRing* r_;
  std::vector<int64_t> c_;
};

// a + bϖ over a truncated Witt ring, ϖ² = c (c = p or u·p).
class RamElem {
 public:
  RamElem(TruncWitt a, TruncWitt b, long c) : a_(std::move(a)), b_(std::move(b)), c_(c) {}
  const TruncWitt& a() const { return a_; }
  const TruncWitt& b() const { return b_; }
  RamElem operator+(const RamElem& o) const { return {a_ + o.a_, b_ + o.b_, c_}; }
  RamElem operator*(const RamElem& o) const;
  RamElem sigma() const { return {a_.frobenius(), b_.frobenius(), c_}; }
  RamElem conj() const;
  // min(2 v_p(a), 1 + 2 v_p(b)); throws PrecisionExhausted if undecidable.
  int valuation() const;

 private:
  TruncWitt a_, b_;
  long c_;
};

int valuation(const RamElem& x);

}  // namespace gu22
