#include "gu22/arith.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace gu22 {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(long p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

int ord_p(const Int& x, long p) {
  if (sgn(x) == 0) return kInf;
  Int t = x;
  Int pp = p;
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

int ord_p(const Rat& x, long p) {
  if (sgn(x) == 0) return kInf;
  return ord_p(Int(x.get_num()), p) - ord_p(Int(x.get_den()), p);
}

Int ipow(long base, int e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

Rat pow_p(long p, int e) {
  if (e >= 0) return Rat(ipow(p, e));
  return Rat(Int(1), ipow(p, -e));
}

std::string to_string(const Rat& x) { return x.get_str(); }

Rat parse_rat(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

static long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<long>((__int128)r * b % m);
    b = static_cast<long>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

int legendre(long a, long p) {
  require_odd_prime(p);
  long r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(const Int& a, long p) {
  require_odd_prime(p);
  return legendre(static_cast<long>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p))), p);
}

long residue_mod(const Rat& x, long p) {
  if (ord_p(x, p) < 0) throw std::domain_error("residue of a non-integral rational");
  Int n = x.get_num(), d = x.get_den();
  long nn = static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), p));
  long dd = static_cast<long>(mpz_fdiv_ui(d.get_mpz_t(), p));
  return static_cast<long>((__int128)nn * powmod(dd, p - 2, p) % p);
}

long smallest_nonresidue(long p) {
  require_odd_prime(p);
  for (long a = 2; a < p; ++a)
    if (legendre(a, p) == -1) return a;
  throw std::logic_error("no nonresidue");
}

int hilbert_symbol(const Rat& a, const Rat& b, long p) {
  require_odd_prime(p);
  if (sgn(a) == 0 || sgn(b) == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  int al = ord_p(a, p), be = ord_p(b, p);
  Rat ua = a / pow_p(p, al), ub = b / pow_p(p, be);
  int s = 1;
  if ((al & 1) && (be & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
  if (be & 1) s *= legendre(static_cast<long>(residue_mod(ua, p)), p);
  if (al & 1) s *= legendre(static_cast<long>(residue_mod(ub, p)), p);
  return s;
}

std::string Tower::describe() const {
  std::ostringstream os;
  os << "p=" << p << " u=" << u << " varpi^2=" << c << " eta=" << (eta_is_eps() ? "eps" : "1");
  return os.str();
}

const Tower& Tower::get(long p, Uniformizer kind) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::unique_ptr<Tower>> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, static_cast<int>(kind));
  auto it = reg.find(key);
  if (it != reg.end()) return *it->second;
  require_odd_prime(p);
  long u = smallest_nonresidue(p);
  auto t = std::make_unique<Tower>(Tower{p, u, kind == Uniformizer::P ? p : u * p, kind});
  const Tower& ref = *t;
  reg.emplace(key, std::move(t));
  return ref;
}

// ---- QEps ----

long QEps::u() const {
  if (!t_) throw std::logic_error("QEps: ε-term without a tower");
  return t_->u;
}

QEps& QEps::operator+=(const QEps& o) {
  if (!t_) t_ = o.t_;
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QEps& QEps::operator-=(const QEps& o) {
  if (!t_) t_ = o.t_;
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QEps& QEps::operator*=(const QEps& o) {
  if (!t_) t_ = o.t_;
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rat na = a_ * o.a_ + Rat(u()) * b_ * o.b_;
  Rat nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  return *this;
}

Rat QEps::norm() const {
  if (sgn(b_) == 0) return a_ * a_;
  return a_ * a_ - Rat(u()) * b_ * b_;
}

QEps QEps::inverse() const {
  if (is_zero()) throw std::domain_error("QEps: division by zero");
  Rat n = norm();
  return QEps(t_, a_ / n, -b_ / n);
}

QEps& QEps::operator/=(const QEps& o) { return *this *= o.inverse(); }

int QEps::vp() const {
  if (!t_ && !is_zero()) throw std::logic_error("QEps::vp: no tower, pass p explicitly");
  return vp(t_ ? t_->p : 3);
}

int QEps::vp(long p) const {
  if (is_zero()) return kInf;
  return std::min(sgn(a_) ? ord_p(a_, p) : kInf, sgn(b_) ? ord_p(b_, p) : kInf);
}

std::string QEps::str() const {
  std::ostringstream os;
  os << a_.get_str();
  if (sgn(b_) != 0) os << (sgn(b_) > 0 ? "+" : "") << b_.get_str() << "e";
  return os.str();
}

// ---- SymElem ----

long SymElem::c() const {
  const Tower* t = tower();
  if (!t) throw std::logic_error("SymElem: ϖ-term without a tower");
  return t->c;
}

Rat SymElem::to_rat() const {
  if (!is_rational()) throw std::domain_error("SymElem is not rational: " + str());
  return a_.a();
}

SymElem& SymElem::operator+=(const SymElem& o) {
  if (!t_) t_ = o.tower();
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

SymElem& SymElem::operator-=(const SymElem& o) {
  if (!t_) t_ = o.tower();
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

SymElem& SymElem::operator*=(const SymElem& o) {
  if (!t_) t_ = o.tower();
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  QEps na = a_ * o.a_ + QEps(Rat(c())) * b_ * o.b_;
  QEps nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  return *this;
}

QEps SymElem::norm() const {
  if (b_.is_zero()) return a_ * a_;
  return a_ * a_ - QEps(Rat(c())) * b_ * b_;
}

SymElem SymElem::inverse() const {
  if (is_zero()) throw std::domain_error("SymElem: division by zero");
  QEps n = norm().inverse();
  return SymElem(tower(), a_ * n, -(b_ * n));
}

SymElem& SymElem::operator/=(const SymElem& o) { return *this *= o.inverse(); }

int SymElem::valuation() const {
  if (is_zero()) return kInf;
  if (!tower()) throw std::logic_error("SymElem::valuation: no tower");
  return valuation(tower()->p);
}

int SymElem::valuation(long p) const {
  if (is_zero()) return kInf;
  int va = a_.vp(p), vb = b_.vp(p);
  long best = kInf;
  if (va != kInf) best = std::min<long>(best, 2L * va);
  if (vb != kInf) best = std::min<long>(best, 1L + 2L * vb);
  return static_cast<int>(best);
}

int valuation(const SymElem& x) { return x.valuation(); }

std::string SymElem::str() const {
  std::ostringstream os;
  os << "[" << c00().get_str() << "," << c10().get_str() << "," << c01().get_str() << "," << c11().get_str() << "]";
  return os.str();
}

// ---- FField ----

static std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
  int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(dm);
  return a;
}

static bool irreducible(const std::vector<int>& f, int p) {
  int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      std::vector<int> g(d + 1);
      long t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p) == std::vector<int>(d, 0)) return false;
    }
  }
  return true;
}

FField::FField(int p, int k) : p_(p), k_(k), q_(1) {
  for (int i = 0; i < k; ++i) q_ *= p;
  if (q_ > 4096) throw std::invalid_argument("FField: q too large for tables");
  if (k == 1) {
    mod_ = {0, 1};
  } else if (k == 2) {
    mod_ = {static_cast<int>((p - smallest_nonresidue(p)) % p), 0, 1};
  } else if (UnrField::supported(p, k)) {
    const auto& uf = UnrField::get(p, k);
    mod_.resize(k + 1);
    for (int i = 0; i <= k; ++i) mod_[i] = static_cast<int>(residue_mod(uf.f[i], p));
  } else {
    for (long idx = 0;; ++idx) {
      std::vector<int> f(k + 1);
      long t = idx;
      for (int i = 0; i < k; ++i) {
        f[i] = static_cast<int>(t % p);
        t /= p;
      }
      f[k] = 1;
      if (f[0] != 0 && irreducible(f, p)) {
        mod_ = f;
        break;
      }
    }
  }
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (int x = 0; x < q_; ++x) {
    auto cx = coeffs(x);
    std::vector<int> cn(k);
    for (int i = 0; i < k; ++i) cn[i] = (p - cx[i]) % p;
    neg_[x] = from_coeffs(cn);
    for (int y = 0; y < q_; ++y) {
      auto cy = coeffs(y);
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (cx[i] + cy[i]) % p;
      add_[x * q_ + y] = from_coeffs(s);
      std::vector<int> pr(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) pr[i + j] = (pr[i + j] + cx[i] * cy[j]) % p;
      if (k == 1) {
        mul_[x * q_ + y] = pr[0];
      } else {
        mul_[x * q_ + y] = from_coeffs(poly_mod(pr, mod_, p));
      }
    }
  }
  inv_.assign(q_, 0);
  for (int x = 1; x < q_; ++x)
    for (int y = 1; y < q_; ++y)
      if (mul(x, y) == 1) {
        inv_[x] = y;
        break;
      }
  frob_.resize(q_);
  for (int x = 0; x < q_; ++x) frob_[x] = pow(x, p);
}

const FField& FField::get(long p, int k) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::unique_ptr<FField>> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = reg.find(key);
  if (it != reg.end()) return *it->second;
  require_odd_prime(p);
  if (k < 1) throw std::invalid_argument("FField: k >= 1 required");
  std::unique_ptr<FField> f(new FField(static_cast<int>(p), k));
  const FField& ref = *f;
  reg.emplace(key, std::move(f));
  return ref;
}

int FField::inv(int x) const {
  if (x == 0) throw std::domain_error("FField: inverse of zero");
  return inv_[x];
}

int FField::pow(int x, long e) const {
  int r = 1;
  int b = x;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int FField::from_int(long v) const {
  long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<int>(r);
}

std::vector<int> FField::coeffs(int x) const {
  std::vector<int> c(k_);
  for (int i = 0; i < k_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

int FField::from_coeffs(const std::vector<int>& c) const {
  int v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p_ + ((c[i] % p_) + p_) % p_;
  return v;
}

bool FField::is_square(int x) const {
  if (x == 0) return true;
  return pow(x, (q_ - 1) / 2) == 1;
}

// ---- WittRing / TruncWitt ----

WittRing::WittRing(long p, int k, int m) : p_(p), k_(k), m_(m), pm_(1), ff_(&FField::get(p, k)) {
  if (m < 1) throw std::invalid_argument("WittRing: precision m >= 1 required");
  for (int i = 0; i < m; ++i) {
    if (pm_ > (int64_t{1} << 31) / p) throw std::invalid_argument("WittRing: p^m too large");
    pm_ *= p;
  }
  const auto& fm = ff_->modulus();
  f_.assign(fm.begin(), fm.end());
  if (k == 2) f_[0] = -static_cast<int64_t>(smallest_nonresidue(p));
  for (auto& c : f_) c = md(c);
  if (k == 1) {
    phi_.assign(1, 0);
    return;
  }
  // Start from g^p reduced mod p, then Newton-iterate on f.
  std::vector<int64_t> g(k, 0);
  g[1] = 1;
  std::vector<int64_t> r(k, 0);
  r[0] = 1;
  for (long i = 0; i < p; ++i) r = mul(r, g);
  for (auto& c : r) c = ((c % p) + p) % p;
  std::vector<int64_t> df(k, 0);
  for (int i = 1; i <= k; ++i)
    if (i - 1 < k) df[i - 1] = md(f_[i] * i);
  for (int it = 0; it < 2 * m + 2; ++it) {
    // f(r) and f'(r) by Horner in the quotient ring.
    std::vector<int64_t> fr(k, 0), dfr(k, 0);
    for (int i = k; i >= 0; --i) {
      fr = mul(fr, r);
      fr[0] = md(fr[0] + f_[i]);
    }
    for (int i = k - 1; i >= 0; --i) {
      dfr = mul(dfr, r);
      dfr[0] = md(dfr[0] + df[i]);
    }
    bool zero = std::all_of(fr.begin(), fr.end(), [](int64_t c) { return c == 0; });
    if (zero) break;
    r = sub(r, mul(fr, unit_inverse(dfr)));
  }
  phi_ = r;
}

int64_t WittRing::md(int64_t x) const {
  x %= pm_;
  return x < 0 ? x + pm_ : x;
}

std::vector<int64_t> WittRing::reduce(std::vector<int64_t> a) const {
  // a has arbitrary length; reduce modulo the monic f.
  for (int i = static_cast<int>(a.size()) - 1; i >= k_; --i) {
    int64_t c = md(a[i]);
    if (c == 0) continue;
    for (int j = 0; j <= k_; ++j) a[i - k_ + j] = md(a[i - k_ + j] - static_cast<int64_t>((__int128)c * f_[j] % pm_));
  }
  a.resize(k_);
  for (auto& c : a) c = md(c);
  return a;
}

std::vector<int64_t> WittRing::mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
  if (k_ == 1) return {static_cast<int64_t>((__int128)a[0] * b[0] % pm_)};
  std::vector<int64_t> pr(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) pr[i + j] = md(pr[i + j] + static_cast<int64_t>((__int128)a[i] * b[j] % pm_));
  return reduce(pr);
}

std::vector<int64_t> WittRing::add(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
  std::vector<int64_t> r(k_);
  for (int i = 0; i < k_; ++i) r[i] = md(a[i] + b[i]);
  return r;
}

std::vector<int64_t> WittRing::sub(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
  std::vector<int64_t> r(k_);
  for (int i = 0; i < k_; ++i) r[i] = md(a[i] - b[i]);
  return r;
}

std::vector<int64_t> WittRing::unit_inverse(const std::vector<int64_t>& a) const {
  std::vector<int> ca(k_);
  for (int i = 0; i < k_; ++i) ca[i] = static_cast<int>(a[i] % p_);
  int x = ff_->from_coeffs(ca);
  if (x == 0) throw std::domain_error("WittRing: element is not a unit");
  auto ci = ff_->coeffs(ff_->inv(x));
  std::vector<int64_t> y(ci.begin(), ci.end());
  std::vector<int64_t> two(k_, 0);
  two[0] = 2;
  for (int it = 0; it < m_ + 1; ++it) y = mul(y, sub(two, mul(a, y)));
  return y;
}

std::vector<int64_t> WittRing::apply_frobenius(const std::vector<int64_t>& a) const {
  if (k_ == 1) return a;
  std::vector<int64_t> r(k_, 0);
  for (int i = k_ - 1; i >= 0; --i) {
    r = mul(r, phi_);
    r[0] = md(r[0] + a[i]);
  }
  return r;
}

TruncWitt::TruncWitt(const WittRing& r, std::vector<int64_t> c) : r_(&r), c_(r.reduce(std::move(c))) {}

TruncWitt TruncWitt::constant(const WittRing& r, int64_t v) {
  std::vector<int64_t> c(r.k(), 0);
  c[0] = v;
  return TruncWitt(r, c);
}

TruncWitt TruncWitt::generator(const WittRing& r) {
  std::vector<int64_t> c(r.k(), 0);
  if (r.k() > 1) c[1] = 1;
  return TruncWitt(r, c);
}

bool TruncWitt::is_zero_at_precision() const {
  return std::all_of(c_.begin(), c_.end(), [](int64_t x) { return x == 0; });
}

int TruncWitt::vp() const {
  if (is_zero_at_precision()) throw PrecisionExhausted("TruncWitt: zero at precision " + std::to_string(r_->m()));
  int best = kInf;
  for (auto x : c_) {
    if (x == 0) continue;
    int v = 0;
    while (x % r_->p() == 0) {
      x /= r_->p();
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

FFElem TruncWitt::reduce_mod_p() const {
  const FField& f = FField::get(r_->p(), r_->k());
  std::vector<int> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = static_cast<int>(c_[i] % r_->p());
  return FFElem(f, f.from_coeffs(c));
}

RamElem RamElem::operator*(const RamElem& o) const {
  TruncWitt cc = TruncWitt::constant(a_.ring(), c_);
  return {a_ * o.a_ + cc * b_ * o.b_, a_ * o.b_ + b_ * o.a_, c_};
}

RamElem RamElem::conj() const {
  TruncWitt z = TruncWitt::constant(b_.ring(), 0);
  return {a_, z - b_, c_};
}

int RamElem::valuation() const {
  int m = a_.precision();
  bool za = a_.is_zero_at_precision(), zb = b_.is_zero_at_precision();
  long va = za ? 2L * m : 2L * a_.vp();
  long vb = zb ? 1L + 2L * m : 1L + 2L * b_.vp();
  long best = std::min(va, vb);
  bool certified = (best == va && !za) || (best == vb && !zb);
  if (!certified) throw PrecisionExhausted("RamElem: valuation exceeds working precision");
  return static_cast<int>(best);
}

int valuation(const RamElem& x) { return x.valuation(); }

// ---- UnrField / UnrElem ----

bool UnrField::supported(long p, int k) {
  if (k == 1 || k == 2) return true;
  if (k == 3) {
    long r = p % 7;
    return r == 2 || r == 3 || r == 4 || r == 5;
  }
  if (k == 4) {
    long r = p % 5;
    return r == 2 || r == 3;
  }
  return false;
}

static std::vector<Rat> poly_mulmod(const std::vector<Rat>& a, const std::vector<Rat>& b, const std::vector<Rat>& f) {
  int k = static_cast<int>(f.size()) - 1;
  std::vector<Rat> pr(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (sgn(b[j]) != 0) pr[i + j] += a[i] * b[j];
  }
  for (int i = static_cast<int>(pr.size()) - 1; i >= k; --i) {
    if (sgn(pr[i]) == 0) continue;
    Rat c = pr[i];
    for (int j = 0; j <= k; ++j) pr[i - k + j] -= c * f[j];
  }
  pr.resize(k, Rat(0));
  return pr;
}

const UnrField& UnrField::get(long p, int k) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::unique_ptr<UnrField>> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = reg.find(key);
  if (it != reg.end()) return *it->second;
  require_odd_prime(p);
  if (!supported(p, k)) throw std::invalid_argument("UnrField: unsupported (p, k)");
  auto F = std::make_unique<UnrField>();
  F->p = p;
  F->k = k;
  std::vector<Rat> sx;
  if (k == 1) {
    F->f = {Rat(0), Rat(1)};
    sx = {Rat(0)};
  } else if (k == 2) {
    F->f = {Rat(-smallest_nonresidue(p)), Rat(0), Rat(1)};
    sx = {Rat(0), Rat(-1)};
  } else if (k == 4) {
    // Q(ζ₅): σ(ζ) = ζ^p.
    F->f = {Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)};
    sx.assign(5, Rat(0));
    sx[p % 5] = 1;
    if (p % 5 == 4) sx = {Rat(-1), Rat(-1), Rat(-1), Rat(-1), Rat(0)};
    sx.resize(4);
  } else {
    F->f = {Rat(-1), Rat(-2), Rat(1), Rat(1)};
    // ζ^m + ζ^{-m} = T_m(α) with T_0 = 2, T_1 = α, T_{j+1} = α T_j − T_{j−1}.
    std::vector<Rat> t0 = {Rat(2), Rat(0), Rat(0)}, t1 = {Rat(0), Rat(1), Rat(0)};
    std::vector<Rat> a = {Rat(0), Rat(1), Rat(0)};
    long m = p % 7;
    for (long j = 1; j < m; ++j) {
      auto t2 = poly_mulmod(a, t1, F->f);
      for (int i = 0; i < 3; ++i) t2[i] -= t0[i];
      t0 = t1;
      t1 = t2;
    }
    sx = t1;
  }
  F->sigma_pow.push_back(std::vector<Rat>(k, Rat(0)));
  F->sigma_pow[0][0] = 1;
  for (int i = 1; i < k; ++i) F->sigma_pow.push_back(poly_mulmod(F->sigma_pow[i - 1], sx, F->f));
  const UnrField& ref = *F;
  reg.emplace(key, std::move(F));
  return ref;
}

UnrElem::UnrElem(const UnrField* F, std::vector<Rat> c) : F_(F), c_(std::move(c)) {
  if (F_) c_.resize(F_->k, Rat(0));
}

UnrElem UnrElem::alpha(const UnrField& F) {
  std::vector<Rat> c(F.k, Rat(0));
  if (F.k > 1) c[1] = 1;
  return UnrElem(&F, c);
}

bool UnrElem::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

UnrElem UnrElem::operator-() const {
  UnrElem r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

UnrElem& UnrElem::operator+=(const UnrElem& o) {
  if (!F_ && o.F_) {
    F_ = o.F_;
    c_.resize(F_->k, Rat(0));
  }
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

UnrElem& UnrElem::operator-=(const UnrElem& o) { return *this += -o; }

UnrElem& UnrElem::operator*=(const UnrElem& o) {
  if (o.c_.size() == 1 || (o.F_ == nullptr)) {
    Rat s = o.c_[0];
    for (auto& x : c_) x *= s;
    return *this;
  }
  if (c_.size() == 1 || F_ == nullptr) {
    Rat s = c_[0];
    F_ = o.F_;
    c_ = o.c_;
    for (auto& x : c_) x *= s;
    return *this;
  }
  c_ = poly_mulmod(c_, o.c_, F_->f);
  return *this;
}

bool operator==(const UnrElem& x, const UnrElem& y) {
  size_t n = std::max(x.c_.size(), y.c_.size());
  for (size_t i = 0; i < n; ++i)
    if (x.coeff(static_cast<int>(i)) != y.coeff(static_cast<int>(i))) return false;
  return true;
}

UnrElem UnrElem::inverse() const {
  if (is_zero()) throw std::domain_error("UnrElem: division by zero");
  bool rational = true;
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) rational = false;
  if (rational || !F_) return UnrElem(F_, {Rat(1) / c_[0]});
  int k = F_->k;
  // Columns of the multiplication-by-this matrix are this·α^j.
  std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k + 1, Rat(0)));
  std::vector<Rat> aj(k, Rat(0));
  aj[0] = 1;
  std::vector<Rat> al(k, Rat(0));
  al[1] = 1;
  for (int j = 0; j < k; ++j) {
    auto col = poly_mulmod(c_, aj, F_->f);
    for (int i = 0; i < k; ++i) m[i][j] = col[i];
    aj = poly_mulmod(aj, al, F_->f);
  }
  m[0][k] = 1;
  for (int j = 0; j < k; ++j) {
    int piv = j;
    while (sgn(m[piv][j]) == 0) ++piv;
    std::swap(m[piv], m[j]);
    Rat inv = Rat(1) / m[j][j];
    for (auto& x : m[j]) x *= inv;
    for (int i = 0; i < k; ++i) {
      if (i == j || sgn(m[i][j]) == 0) continue;
      Rat f = m[i][j];
      for (int c = 0; c <= k; ++c) m[i][c] -= f * m[j][c];
    }
  }
  std::vector<Rat> r(k);
  for (int i = 0; i < k; ++i) r[i] = m[i][k];
  return UnrElem(F_, r);
}

UnrElem UnrElem::sigma() const {
  if (!F_) return *this;
  std::vector<Rat> r(F_->k, Rat(0));
  for (int i = 0; i < F_->k; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (int j = 0; j < F_->k; ++j) r[j] += c_[i] * F_->sigma_pow[i][j];
  }
  return UnrElem(F_, r);
}

int UnrElem::vp(long p) const {
  int v = kInf;
  for (const auto& x : c_)
    if (sgn(x) != 0) v = std::min(v, ord_p(x, p));
  return v;
}

std::string UnrElem::str() const {
  bool rational = true;
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) rational = false;
  if (rational) return c_[0].get_str();
  std::string s = "(";
  for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].get_str();
  return s + ")";
}

}  // namespace gu22
