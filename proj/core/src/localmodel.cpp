#include "gu22/localmodel.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "gu22/parallel.hpp"

namespace gu22 {

namespace {

constexpr int kN = 8;
constexpr int kD = 4;

// J on f₁..f₈ as integers: blocks (1,2)|(3,4)|(5,6)|(7,8) with
// [[0,0,0,J₂],[0,0,−J₂,0],[0,−J₂,0,0],[J₂,0,0,0]].
int j_entry(int r, int s) {
  int br = r / 2, bs = s / 2;
  bool anti = (r % 2) + (s % 2) == 1;
  if (!anti) return 0;
  if (br + bs != 3) return 0;
  return (br == 0 || br == 3) ? 1 : -1;
}

long md(long x, long m) {
  x %= m;
  return x < 0 ? x + m : x;
}

FFRows pi_rows(int p, const Subspace& F) {
  FFRows out;
  for (const auto& v : F.rows) out.push_back(local_model_pi(p, v));
  return out;
}

// Coefficients of ϖ a_i in the basis a_j, valid when ϖF ⊆ F.
FFRows restriction_matrix(const FField& K, const Subspace& F, const std::vector<int>& piv) {
  FFRows R;
  for (const auto& v : F.rows) {
    FFVec w = local_model_pi(K.p(), v);
    FFVec row(F.dim());
    for (int j = 0; j < F.dim(); ++j) row[j] = w[piv[j]];
    R.push_back(row);
  }
  return R;
}

std::vector<int> pivots(const Subspace& F) {
  std::vector<int> piv;
  for (const auto& r : F.rows)
    for (int c = 0; c < static_cast<int>(r.size()); ++c)
      if (r[c]) {
        piv.push_back(c);
        break;
      }
  return piv;
}

// Principal-minor expansion; works in any commutative ring given by ops.
template <class T, class Ops>
T det_small(const std::vector<std::vector<T>>& M, const Ops& ops) {
  const size_t n = M.size();
  if (n == 0) return ops.one();
  if (n == 1) return M[0][0];
  T acc = ops.zero();
  for (size_t c = 0; c < n; ++c) {
    std::vector<std::vector<T>> sub;
    for (size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(M[r][k]);
      sub.push_back(row);
    }
    T term = ops.mul(M[0][c], det_small(sub, ops));
    acc = c % 2 ? ops.sub(acc, term) : ops.add(acc, term);
  }
  return acc;
}

// e_k = sum of principal k-minors; char. poly T⁴ − e₁T³ + e₂T² − e₃T + e₄.
template <class T, class Ops>
std::vector<T> elementary_invariants(const std::vector<std::vector<T>>& M, const Ops& ops) {
  const int n = static_cast<int>(M.size());
  std::vector<T> e(n + 1, ops.zero());
  e[0] = ops.one();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    std::vector<std::vector<T>> sub;
    for (int r : idx) {
      std::vector<T> row;
      for (int c : idx) row.push_back(M[r][c]);
      sub.push_back(row);
    }
    e[idx.size()] = ops.add(e[idx.size()], det_small(sub, ops));
  }
  return e;
}

struct ModOps {
  long m;
  long zero() const { return 0; }
  long one() const { return 1 % m; }
  long add(long a, long b) const { return (a + b) % m; }
  long sub(long a, long b) const { return md(a - b, m); }
  long mul(long a, long b) const { return a * b % m; }
};

// a + bξ over F_p, ξ² = 0.
struct Dual {
  long a = 0, b = 0;
};
struct DualOps {
  long p;
  Dual zero() const { return {}; }
  Dual one() const { return {1, 0}; }
  Dual add(Dual x, Dual y) const { return {(x.a + y.a) % p, (x.b + y.b) % p}; }
  Dual sub(Dual x, Dual y) const { return {md(x.a - y.a, p), md(x.b - y.b, p)}; }
  Dual mul(Dual x, Dual y) const { return {x.a * y.a % p, (x.a * y.b + x.b * y.a) % p}; }
};

bool kottwitz_mod(const std::vector<std::vector<long>>& R, long m, long c) {
  auto e = elementary_invariants(R, ModOps{m});
  // (T² − c)² = T⁴ − 2cT² + c²
  return e[1] == 0 && e[2] == md(-2 * c, m) && e[3] == 0 && e[4] == md(c * c, m);
}

// ---- charts ---------------------------------------------------------------

// Entry of the 8×4 chart matrix: a constant or a variable.
struct Entry {
  int var = -1;
  long value = 0;
};

struct Chart {
  std::string name;
  std::vector<std::string> vars;
  Entry A[kN][kD];
  std::vector<int> identity_rows;  // rows of A forming E₄
  // Printed linear relations: free variables and the rest of the assignment.
  std::vector<int> printed_free;
  std::function<void(std::vector<long>&, long m, long c)> printed_fill;
  // Printed coordinate ring: free variables, assignment, remaining equations.
  std::vector<int> ring_free;
  std::function<void(std::vector<long>&, long m, long c)> ring_fill;
  std::function<bool(const std::vector<long>&, long m, long c, long p)> ring_filter;
};

Chart chart_u0() {
  Chart ch;
  ch.name = "U0";
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) ch.vars.push_back("y" + std::to_string(i) + std::to_string(j));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ch.A[i][j] = {4 * i + j, 0};
      ch.A[4 + i][j] = {-1, i == j ? 1 : 0};
    }
  ch.identity_rows = {4, 5, 6, 7};
  auto y = [](int i, int j) { return 4 * (i - 1) + (j - 1); };
  ch.printed_free = {y(1, 1), y(1, 2), y(1, 3), y(2, 1), y(3, 1)};
  ch.printed_fill = [y](std::vector<long>& v, long m, long) {
    v[y(2, 2)] = md(-v[y(1, 1)], m);
    v[y(3, 3)] = md(-v[y(1, 1)], m);
    v[y(4, 4)] = v[y(1, 1)];
    v[y(3, 4)] = v[y(1, 2)];
    v[y(2, 4)] = md(-v[y(1, 3)], m);
    v[y(1, 4)] = v[y(2, 3)] = v[y(3, 2)] = v[y(4, 1)] = 0;
    v[y(4, 3)] = v[y(2, 1)];
    v[y(4, 2)] = md(-v[y(3, 1)], m);
  };
  ch.ring_filter = [y](const std::vector<long>& v, long m, long c, long) {
    long q = v[y(1, 1)] * v[y(1, 1)] + v[y(1, 2)] * v[y(2, 1)] + v[y(1, 3)] * v[y(3, 1)];
    return md(q - c, m) == 0;
  };
  ch.ring_free = ch.printed_free;
  ch.ring_fill = ch.printed_fill;
  return ch;
}

Chart chart_u1() {
  Chart ch;
  ch.name = "U1";
  // x1 x2 x3 | z11..z33 | y1..y4
  ch.vars = {"x1", "x2", "x3"};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) ch.vars.push_back("z" + std::to_string(i) + std::to_string(j));
  for (int i = 1; i <= 4; ++i) ch.vars.push_back("y" + std::to_string(i));
  auto x = [](int i) { return i - 1; };
  auto z = [](int i, int j) { return 3 + 3 * (i - 1) + (j - 1); };
  auto y = [](int i) { return 12 + i - 1; };
  for (int r = 0; r < kN; ++r)
    for (int c = 0; c < kD; ++c) ch.A[r][c] = {-1, 0};
  ch.A[0][0] = {-1, 1};
  for (int r = 1; r <= 3; ++r) {
    ch.A[r][0] = {x(r), 0};
    for (int c = 1; c <= 3; ++c) ch.A[r][c] = {z(r, c), 0};
  }
  ch.A[4][1] = {-1, 1};
  ch.A[5][2] = {-1, 1};
  ch.A[6][3] = {-1, 1};
  for (int c = 0; c < 4; ++c) ch.A[7][c] = {y(c + 1), 0};
  ch.identity_rows = {0, 4, 5, 6};
  ch.printed_free = {x(1), x(2), x(3), z(1, 1), z(1, 2), z(2, 1)};
  ch.printed_fill = [x, y, z](std::vector<long>& v, long m, long) {
    v[y(1)] = 0;
    v[y(2)] = v[x(3)];
    v[y(3)] = v[x(2)];
    v[y(4)] = md(-v[x(1)], m);
    v[z(1, 3)] = v[z(2, 2)] = v[z(3, 1)] = 0;
    v[z(2, 3)] = v[z(1, 2)];
    v[z(3, 2)] = md(-v[z(2, 1)], m);
    v[z(3, 3)] = v[z(1, 1)];
  };
  ch.ring_filter = [z](const std::vector<long>& v, long m, long, long p) {
    return v[z(1, 2)] == 0 && p % m == 0 && v[z(1, 1)] == 0 && v[z(2, 1)] == 0;
  };
  ch.ring_free = ch.printed_free;
  ch.ring_fill = ch.printed_fill;
  return ch;
}

Chart chart_u2() {
  Chart ch;
  ch.name = "U2";
  // X1 (x1_11, x1_12, x1_21, x1_22), X2, Y1, Y2
  const char* blocks[4] = {"x1_", "x2_", "y1_", "y2_"};
  for (auto b : blocks)
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) ch.vars.push_back(std::string(b) + std::to_string(i) + std::to_string(j));
  auto var = [](int block, int i, int j) { return 4 * block + 2 * (i - 1) + (j - 1); };
  for (int r = 0; r < kN; ++r)
    for (int c = 0; c < kD; ++c) ch.A[r][c] = {-1, 0};
  ch.A[0][0] = ch.A[1][1] = {-1, 1};
  ch.A[4][2] = ch.A[5][3] = {-1, 1};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      ch.A[1 + i][j - 1] = {var(0, i, j), 0};
      ch.A[1 + i][1 + j] = {var(1, i, j), 0};
      ch.A[5 + i][j - 1] = {var(2, i, j), 0};
      ch.A[5 + i][1 + j] = {var(3, i, j), 0};
    }
  ch.identity_rows = {0, 1, 4, 5};
  ch.printed_free = {var(2, 1, 1), var(2, 1, 2), var(3, 1, 1), var(3, 1, 2)};
  ch.printed_fill = [var](std::vector<long>& v, long m, long c) {
    v[var(2, 2, 2)] = md(-v[var(2, 1, 1)], m);
    v[var(2, 2, 1)] = 0;
    v[var(3, 2, 2)] = v[var(3, 1, 1)];
    v[var(3, 2, 1)] = v[var(3, 1, 2)];
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        v[var(0, i, j)] = v[var(3, i, j)];
        v[var(1, i, j)] = md(c * v[var(2, i, j)], m);
      }
  };
  // The ring is A⁴ on y11⁽¹⁾, y11⁽²⁾, y12⁽²⁾, y21⁽²⁾; the printed y12⁽²⁾ = y21⁽²⁾ would leave A³.
  ch.ring_free = {var(2, 1, 1), var(3, 1, 1), var(3, 1, 2), var(3, 2, 1)};
  ch.ring_fill = [var](std::vector<long>& v, long m, long c) {
    v[var(2, 2, 2)] = md(-v[var(2, 1, 1)], m);
    v[var(2, 1, 2)] = v[var(2, 2, 1)] = 0;
    v[var(3, 2, 2)] = v[var(3, 1, 1)];
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        v[var(0, i, j)] = v[var(3, i, j)];
        v[var(1, i, j)] = md(c * v[var(2, i, j)], m);
      }
  };
  ch.ring_filter = [](const std::vector<long>&, long, long, long) { return true; };
  return ch;
}

// Affine form over Z in the chart variables.
struct Aff {
  std::vector<long> a;
  long c = 0;
  bool constant() const {
    return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
  }
};

Aff entry_aff(const Chart& ch, const Entry& e) {
  Aff f{std::vector<long>(ch.vars.size(), 0), 0};
  if (e.var >= 0)
    f.a[e.var] = 1;
  else
    f.c = e.value;
  return f;
}

// Product of affine forms, or nullopt when both factors are non-constant.
std::optional<Aff> aff_mul(const Aff& x, const Aff& y) {
  if (!x.constant() && !y.constant()) return std::nullopt;
  const Aff& v = x.constant() ? y : x;
  long s = x.constant() ? x.c : y.c;
  Aff out{std::vector<long>(v.a.size()), v.c * s};
  for (size_t i = 0; i < v.a.size(); ++i) out.a[i] = v.a[i] * s;
  return out;
}

void aff_add(Aff& x, const Aff& y, long s) {
  for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += s * y.a[i];
  x.c += s * y.c;
}

// ϖ on column coordinates: (X; Y) ↦ (cY; X).
Aff pi_entry(const Chart& ch, int row, int col, long c) {
  if (row < 4) {
    Aff f = entry_aff(ch, ch.A[row + 4][col]);
    for (auto& t : f.a) t *= c;
    f.c *= c;
    return f;
  }
  return entry_aff(ch, ch.A[row - 4][col]);
}

// Isotropy equations, and the ϖ-stability equations that are linear in the chart variables.
std::vector<Aff> linear_stage(const Chart& ch, long c) {
  std::vector<Aff> eqs;
  const size_t nv = ch.vars.size();
  for (int i = 0; i < kD; ++i)
    for (int j = i; j < kD; ++j) {
      Aff acc{std::vector<long>(nv, 0), 0};
      for (int r = 0; r < kN; ++r)
        for (int s = 0; s < kN; ++s) {
          int g = j_entry(r, s);
          if (!g) continue;
          auto prod = aff_mul(entry_aff(ch, ch.A[r][i]), entry_aff(ch, ch.A[s][j]));
          if (!prod) throw std::logic_error("chart isotropy equation is not linear");
          aff_add(acc, *prod, g);
        }
      eqs.push_back(acc);
    }
  // ϖA = A R with R the identity-row block of ϖA.
  for (int r = 0; r < kN; ++r)
    for (int j = 0; j < kD; ++j) {
      Aff acc = pi_entry(ch, r, j, c);
      bool linear = true;
      for (int k = 0; k < kD && linear; ++k) {
        auto prod = aff_mul(entry_aff(ch, ch.A[r][k]), pi_entry(ch, ch.identity_rows[k], j, c));
        if (!prod)
          linear = false;
        else
          aff_add(acc, *prod, -1);
      }
      if (linear) eqs.push_back(acc);
    }
  return eqs;
}

bool unit_mod(long x, long p) { return x % p != 0; }

long inv_mod(long a, long m) {
  long t = 0, nt = 1, r = m, nr = md(a, m);
  while (nr) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::logic_error("not a unit");
  return md(t, m);
}

// Solution set of affine equations over Z/m as v₀ + Σ t_i g_i; nullopt when empty.
struct Param {
  std::vector<int> free;
  std::vector<long> base;
  std::vector<std::vector<long>> gens;  // one per free variable
};

std::optional<Param> solve_affine(std::vector<Aff> eqs, size_t nv, long m, long p) {
  std::vector<std::vector<long>> M;
  for (auto& e : eqs) {
    std::vector<long> row(nv + 1);
    for (size_t i = 0; i < nv; ++i) row[i] = md(e.a[i], m);
    row[nv] = md(-e.c, m);
    M.push_back(row);
  }
  std::vector<int> pivcol;
  size_t r = 0;
  for (size_t col = 0; col < nv && r < M.size(); ++col) {
    size_t piv = M.size();
    for (size_t i = r; i < M.size(); ++i)
      if (unit_mod(M[i][col], p)) {
        piv = i;
        break;
      }
    if (piv == M.size()) continue;
    std::swap(M[piv], M[r]);
    long inv = inv_mod(M[r][col], m);
    for (auto& x : M[r]) x = x * inv % m;
    for (size_t i = 0; i < M.size(); ++i) {
      if (i == r || !M[i][col]) continue;
      long f = M[i][col];
      for (size_t k = 0; k <= nv; ++k) M[i][k] = md(M[i][k] - f * M[r][k], m);
    }
    pivcol.push_back(static_cast<int>(col));
    ++r;
  }
  for (size_t i = r; i < M.size(); ++i) {
    for (size_t k = 0; k < nv; ++k)
      if (M[i][k]) throw std::logic_error("linear stage is not free over Z/m");
    if (M[i][nv]) return std::nullopt;
  }
  Param P;
  std::vector<bool> is_piv(nv, false);
  for (int c : pivcol) is_piv[c] = true;
  for (size_t k = 0; k < nv; ++k)
    if (!is_piv[k]) P.free.push_back(static_cast<int>(k));
  P.base.assign(nv, 0);
  for (size_t i = 0; i < pivcol.size(); ++i) P.base[pivcol[i]] = M[i][nv];
  for (int f : P.free) {
    std::vector<long> g(nv, 0);
    g[f] = 1;
    for (size_t i = 0; i < pivcol.size(); ++i) g[pivcol[i]] = md(-M[i][f], m);
    P.gens.push_back(g);
  }
  return P;
}

long eval_aff(const Aff& e, const std::vector<long>& v, long m) {
  long s = e.c;
  for (size_t i = 0; i < v.size(); ++i) s += e.a[i] * v[i];
  return md(s, m);
}

// ϖ-stability and the Kottwitz condition at an assignment (reduced mod m); isotropy too when asked.
bool chart_point(const Chart& ch, const std::vector<long>& v, long m, long c, bool check_isotropy) {
  long A[kN][kD];
  for (int r = 0; r < kN; ++r)
    for (int j = 0; j < kD; ++j) A[r][j] = ch.A[r][j].var >= 0 ? v[ch.A[r][j].var] : ch.A[r][j].value;
  if (check_isotropy)
    for (int i = 0; i < kD; ++i)
      for (int j = i; j < kD; ++j) {
        long s = 0;
        for (int r = 0; r < kN; ++r)
          for (int t = 0; t < kN; ++t)
            if (int g = j_entry(r, t)) s += g * A[r][i] * A[t][j];
        if (md(s, m)) return false;
      }
  auto pa = [&](int r, int j) { return r < 4 ? c * A[r + 4][j] : A[r - 4][j]; };
  long R[kD][kD];
  for (int k = 0; k < kD; ++k)
    for (int j = 0; j < kD; ++j) R[k][j] = pa(ch.identity_rows[k], j) % m;
  for (int r = 0; r < kN; ++r)
    for (int j = 0; j < kD; ++j) {
      long s = -pa(r, j);
      for (int k = 0; k < kD; ++k) s += A[r][k] * R[k][j];
      if (s % m) return false;
    }
  std::vector<std::vector<long>> Rv(kD, std::vector<long>(kD));
  for (int k = 0; k < kD; ++k)
    for (int j = 0; j < kD; ++j) Rv[k][j] = R[k][j];
  return kottwitz_mod(Rv, m, c);
}

std::string describe(const Chart& ch, const std::vector<long>& v) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    os << (first ? "" : ",") << ch.vars[i] << "=" << v[i];
    first = false;
  }
  if (first) os << "all zero";
  return os.str();
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<long> printed_point(const Chart& ch, const std::vector<long>& free_vals, long m, long c) {
  std::vector<long> v(ch.vars.size(), 0);
  for (size_t i = 0; i < ch.printed_free.size(); ++i) v[ch.printed_free[i]] = free_vals[i];
  ch.printed_fill(v, m, c);
  return v;
}

std::vector<long> ring_point(const Chart& ch, const std::vector<long>& free_vals, long m, long c) {
  std::vector<long> v(ch.vars.size(), 0);
  for (size_t i = 0; i < ch.ring_free.size(); ++i) v[ch.ring_free[i]] = free_vals[i];
  ch.ring_fill(v, m, c);
  return v;
}

bool in_printed_linear(const Chart& ch, const std::vector<long>& v, long m, long c) {
  std::vector<long> fv;
  for (int f : ch.printed_free) fv.push_back(v[f]);
  return printed_point(ch, fv, m, c) == v;
}

ChartRingCheck check_chart(const Chart& ch, int p, long m, long c, int threads) {
  ChartRingCheck out;
  out.chart = ch.name;
  out.modulus = m;
  const size_t nv = ch.vars.size();
  auto eqs = linear_stage(ch, c);
  auto par = solve_affine(eqs, nv, m, p);

  // Linear stage against the printed linear relations, on affine generators.
  {
    std::ostringstream note;
    bool ok = true;
    if (par) {
      std::vector<std::vector<long>> pts{par->base};
      for (auto& g : par->gens) {
        std::vector<long> w(nv);
        for (size_t i = 0; i < nv; ++i) w[i] = (par->base[i] + g[i]) % m;
        pts.push_back(w);
      }
      for (auto& w : pts)
        if (!in_printed_linear(ch, w, m, c)) {
          if (ok) note << "solution outside the printed relations: " << describe(ch, w) << "; ";
          ok = false;
        }
    }
    std::vector<std::vector<long>> gens;
    std::vector<long> zero(ch.printed_free.size(), 0);
    gens.push_back(printed_point(ch, zero, m, c));
    for (size_t j = 0; j < ch.printed_free.size(); ++j) {
      auto e = zero;
      e[j] = 1;
      gens.push_back(printed_point(ch, e, m, c));
    }
    for (auto& w : gens)
      for (auto& e : eqs)
        if (eval_aff(e, w, m)) {
          if (ok || note.str().find("printed point") == std::string::npos)
            note << "printed point violating the equations: " << describe(ch, w) << "; ";
          ok = false;
          break;
        }
    out.relations_match = ok;
    out.relations_note = note.str();
    if (par) out.relations_note += std::to_string(par->free.size()) + " free parameters";
  }

  std::vector<std::vector<long>> actual;
  if (par) {
    const int f = static_cast<int>(par->free.size());
    const long total = ipow(m, f);
    const int chunks = static_cast<int>(std::min<long>(total, 4096));
    const long per = (total + chunks - 1) / chunks;
    std::vector<std::vector<std::vector<long>>> parts(chunks);
    parallel_for(chunks, threads, [&](int ci) {
      const long lo = ci * per, hi = std::min(total, (ci + 1) * per);
      if (lo >= hi) return;
      // Odometer over the free parameters, keeping v = base + Σ t_i g_i reduced mod m.
      std::vector<long> t(f), v(nv);
      long x = lo;
      for (int i = 0; i < f; ++i) {
        t[i] = x % m;
        x /= m;
      }
      for (size_t k = 0; k < nv; ++k) {
        long s = par->base[k];
        for (int i = 0; i < f; ++i) s += t[i] * par->gens[i][k];
        v[k] = s % m;
      }
      for (long idx = lo; idx < hi; ++idx) {
        if (chart_point(ch, v, m, c, false)) parts[ci].push_back(v);
        for (int i = 0; i < f; ++i) {
          const auto& g = par->gens[i];
          if (++t[i] < m) {
            for (size_t k = 0; k < nv; ++k)
              if (g[k]) v[k] = (v[k] + g[k]) % m;
            break;
          }
          t[i] = 0;
          // t_i wrapped from m−1 to 0: m·g_i ≡ 0, so subtract (m−1)·g_i, i.e. add g_i.
          for (size_t k = 0; k < nv; ++k)
            if (g[k]) v[k] = (v[k] + g[k]) % m;
        }
      }
    });
    for (auto& part : parts) actual.insert(actual.end(), part.begin(), part.end());
  }
  std::sort(actual.begin(), actual.end());

  std::vector<std::vector<long>> printed;
  {
    const int f = static_cast<int>(ch.ring_free.size());
    std::vector<long> t(f);
    for (long idx = 0; idx < ipow(m, f); ++idx) {
      long x = idx;
      for (int i = 0; i < f; ++i) {
        t[i] = x % m;
        x /= m;
      }
      auto v = ring_point(ch, t, m, c);
      if (ch.ring_filter(v, m, c, p)) printed.push_back(v);
    }
  }
  std::sort(printed.begin(), printed.end());
  printed.erase(std::unique(printed.begin(), printed.end()), printed.end());

  out.actual = static_cast<long>(actual.size());
  out.printed = static_cast<long>(printed.size());
  out.matches = actual == printed;
  if (!out.matches) {
    std::vector<std::vector<long>> only_a, only_p;
    std::set_difference(actual.begin(), actual.end(), printed.begin(), printed.end(), std::back_inserter(only_a));
    std::set_difference(printed.begin(), printed.end(), actual.begin(), actual.end(), std::back_inserter(only_p));
    std::ostringstream os;
    if (!only_a.empty()) os << only_a.size() << " solutions not printed, e.g. " << describe(ch, only_a.front());
    if (!only_p.empty())
      os << (only_a.empty() ? "" : "; ") << only_p.size() << " printed points not solutions, e.g. "
         << describe(ch, only_p.front());
    out.first_discrepancy = os.str();
  }
  return out;
}

}  // namespace

FFRows local_model_gram(int p) {
  FFRows G(kN, FFVec(kN, 0));
  for (int r = 0; r < kN; ++r)
    for (int s = 0; s < kN; ++s) G[r][s] = static_cast<int>(md(j_entry(r, s), p));
  return G;
}

FFVec local_model_pi(int p, const FFVec& v) {
  (void)p;
  FFVec w(kN, 0);
  for (int i = 0; i < 4; ++i) w[4 + i] = v[i];
  return w;
}

Subspace standard_point(int p, int r) {
  static const std::vector<int> idx[3] = {{4, 5, 6, 7}, {0, 4, 5, 6}, {0, 1, 4, 5}};
  if (r < 0 || r > 2) throw std::invalid_argument("standard_point: r must be 0, 1 or 2");
  FFRows rows;
  for (int i : idx[r]) {
    FFVec v(kN, 0);
    v[i] = 1;
    rows.push_back(v);
  }
  return make_subspace(FField::get(p, 1), rows);
}

int pi_rank(int p, const Subspace& F) { return ff_rank(FField::get(p, 1), pi_rows(p, F)); }

bool is_naive_point(int p, const Subspace& F) {
  const FField& K = FField::get(p, 1);
  if (F.dim() != kD) return false;
  FiniteQuadSpace V = FiniteQuadSpace::from_gram(p, local_model_gram(p));
  if (!is_totally_isotropic(V, K, F)) return false;
  FFRows both = F.rows;
  for (auto& w : pi_rows(p, F)) both.push_back(w);
  if (ff_rank(K, both) != kD) return false;
  auto R = restriction_matrix(K, F, pivots(F));
  std::vector<std::vector<long>> Rl(kD, std::vector<long>(kD));
  for (int i = 0; i < kD; ++i)
    for (int j = 0; j < kD; ++j) Rl[i][j] = R[i][j];
  return kottwitz_mod(Rl, p, 0);
}

std::vector<Subspace> local_model_lagrangians(int p, long double ceiling, int threads) {
  FiniteQuadSpace V = FiniteQuadSpace::from_gram(p, local_model_gram(p));
  return enumerate_isotropic(V, FField::get(p, 1), kD, ceiling, threads);
}

NaiveEnumeration enumerate_naive_points(int p, long double ceiling, int threads) {
  return classify_naive(p, local_model_lagrangians(p, ceiling, threads));
}

NaiveEnumeration classify_naive(int p, const std::vector<Subspace>& lag) {
  const FField& K = FField::get(p, 1);
  NaiveEnumeration out;
  out.p = p;
  out.lagrangians = static_cast<long>(lag.size());
  Subspace ref = standard_point(p, 2);
  for (auto& L : lag) {
    if (!is_naive_point(p, L)) continue;
    NaivePoint pt{L, pi_rank(p, L), ogr_component(K, L, ref, kN)};
    if (pt.rank > 2) throw std::logic_error("rank of ϖ exceeds 2 on a naive point");
    ++out.counts[pt.rank];
    out.points.push_back(std::move(pt));
  }
  return out;
}

int tangent_dimension(int p, const Subspace& F) {
  const FField& K = FField::get(p, 1);
  auto piv = pivots(F);
  std::vector<int> comp;
  for (int c = 0; c < kN; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) comp.push_back(c);
  auto R = restriction_matrix(K, F, piv);
  FFRows G = local_model_gram(p);
  auto bil = [&](const FFVec& x, const FFVec& y) {
    long s = 0;
    for (int r = 0; r < kN; ++r)
      for (int t = 0; t < kN; ++t) s += static_cast<long>(x[r]) * G[r][t] * y[t];
    return md(s, p);
  };
  // Constraint vector of the deformation a_i + ξ Σ_k B_ik w_k.
  auto constraints = [&](const std::vector<std::vector<long>>& B) {
    std::vector<FFVec> b(kD, FFVec(kN, 0));
    for (int i = 0; i < kD; ++i)
      for (int k = 0; k < kD; ++k) b[i][comp[k]] = static_cast<int>(B[i][k]);
    FFVec out;
    for (int i = 0; i < kD; ++i)
      for (int j = i; j < kD; ++j) out.push_back(static_cast<int>(md(bil(F.rows[i], b[j]) + bil(b[i], F.rows[j]), p)));
    std::vector<std::vector<Dual>> RS(kD, std::vector<Dual>(kD));
    for (int i = 0; i < kD; ++i) {
      FFVec w = local_model_pi(p, b[i]);
      std::vector<long> u(kN);
      for (int t = 0; t < kN; ++t) u[t] = w[t];
      for (int j = 0; j < kD; ++j)
        for (int t = 0; t < kN; ++t) u[t] -= static_cast<long>(R[i][j]) * b[j][t];
      std::vector<long> S(kD);
      for (int j = 0; j < kD; ++j) S[j] = md(u[piv[j]], p);
      for (int t = 0; t < kN; ++t) {
        long beta = u[t];
        for (int j = 0; j < kD; ++j) beta -= S[j] * F.rows[j][t];
        beta = md(beta, p);
        if (std::find(comp.begin(), comp.end(), t) != comp.end()) out.push_back(static_cast<int>(beta));
      }
      for (int j = 0; j < kD; ++j) RS[i][j] = {R[i][j], S[j]};
    }
    auto e = elementary_invariants(RS, DualOps{p});
    for (int k = 1; k <= kD; ++k) out.push_back(static_cast<int>(e[k].b));
    return out;
  };
  FFRows cols;
  for (int i = 0; i < kD; ++i)
    for (int k = 0; k < kD; ++k) {
      std::vector<std::vector<long>> B(kD, std::vector<long>(kD, 0));
      B[i][k] = 1;
      cols.push_back(constraints(B));
    }
  return kD * kD - ff_rank(K, cols);
}

std::map<std::pair<int, int>, long> tangent_histogram(const NaiveEnumeration& e) {
  std::map<std::pair<int, int>, long> h;
  for (auto& pt : e.points) ++h[{pt.rank, tangent_dimension(e.p, pt.F)}];
  return h;
}

bool ChartReport::all_match() const {
  return std::all_of(checks.begin(), checks.end(), [](const ChartRingCheck& c) { return c.matches; });
}

ChartReport verify_chart_equations(int p, long c, int threads) {
  ChartReport rep;
  rep.p = p;
  rep.c = c;
  for (const Chart& ch : {chart_u0(), chart_u1(), chart_u2()})
    for (long m : {static_cast<long>(p), static_cast<long>(p) * p}) rep.checks.push_back(check_chart(ch, p, m, md(c, m), threads));
  return rep;
}

ComponentSplitReport component_split_audit(const NaiveEnumeration& e) {
  ComponentSplitReport r;
  r.p = e.p;
  for (auto& pt : e.points) ++(pt.sign == '+' ? r.plus : r.minus)[pt.rank];
  return r;
}

FFRows random_group_element(int p, unsigned long seed) {
  const FField& K = FField::get(p, 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> unif(0, p - 1);
  // Alternating form K₄ = [[0, J₂], [−J₂, 0]] on f₁..f₄.
  FFRows Kf(4, FFVec(4, 0));
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) Kf[r][s] = static_cast<int>(md(j_entry(r, s + 4), p));
  auto matmul = [&](const FFRows& a, const FFRows& b) {
    FFRows out(a.size(), FFVec(b[0].size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t k = 0; k < b.size(); ++k)
        if (a[i][k])
          for (size_t j = 0; j < b[0].size(); ++j) out[i][j] = K.add(out[i][j], K.mul(a[i][k], b[k][j]));
    return out;
  };
  FFRows P(4, FFVec(4, 0));
  for (int i = 0; i < 4; ++i) P[i][i] = 1;
  for (int step = 0; step < 12; ++step) {
    FFVec v(4);
    for (auto& x : v) x = unif(rng);
    int a = unif(rng);
    // x ↦ x + a·(vᵀK₄x)·v
    FFVec vK(4, 0);
    for (int s = 0; s < 4; ++s)
      for (int r = 0; r < 4; ++r) vK[s] = K.add(vK[s], K.mul(v[r], Kf[r][s]));
    FFRows T(4, FFVec(4, 0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) T[i][j] = K.add(i == j ? 1 : 0, K.mul(a, K.mul(v[i], vK[j])));
    P = matmul(T, P);
  }
  int lambda = 1 + unif(rng) % (p - 1);
  FFRows D(4, FFVec(4, 0));
  D[0][0] = D[1][1] = lambda;
  D[2][2] = D[3][3] = 1;
  P = matmul(D, P);
  // Q = (PᵀK₄)⁻¹ N with N alternating.
  FFRows N(4, FFVec(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      N[i][j] = unif(rng);
      N[j][i] = K.neg(N[i][j]);
    }
  FFRows Pt(4, FFVec(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Pt[i][j] = P[j][i];
  FFRows M = matmul(Pt, Kf);
  // Invert M by row reduction of [M | I].
  FFRows aug(4, FFVec(8, 0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) aug[i][j] = M[i][j];
    aug[i][4 + i] = 1;
  }
  ff_rref(K, aug);
  FFRows Minv(4, FFVec(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Minv[i][j] = aug[i][4 + j];
  FFRows Q = matmul(Minv, N);
  FFRows g(kN, FFVec(kN, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g[i][j] = g[4 + i][4 + j] = P[i][j];
      g[4 + i][j] = Q[i][j];
    }
  return g;
}

Subspace apply_group(int p, const FFRows& g, const Subspace& F) {
  const FField& K = FField::get(p, 1);
  FFRows rows;
  for (auto& v : F.rows) {
    FFVec w(kN, 0);
    for (int i = 0; i < kN; ++i)
      for (int j = 0; j < kN; ++j) w[i] = K.add(w[i], K.mul(g[i][j], v[j]));
    rows.push_back(w);
  }
  return make_subspace(K, rows);
}

}  // namespace gu22
