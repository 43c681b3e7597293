#include "gu22/finitegeom.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gu22/parallel.hpp"

namespace gu22 {

std::string to_string(QuadKind k) {
  switch (k) {
    case QuadKind::SplitEven: return "split";
    case QuadKind::NonSplitEven: return "non-split";
    case QuadKind::Odd: return "odd";
  }
  return "?";
}

CeilingExceeded::CeilingExceeded(long double pred, long double ceiling)
    : std::runtime_error("enumeration ceiling exceeded: predicted " + std::to_string(static_cast<double>(pred)) +
                         " > " + std::to_string(static_cast<double>(ceiling))),
      predicted(pred) {}

namespace {

int ff_det(const FField& F, FFRows m) {
  const int n = static_cast<int>(m.size());
  int det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = F.neg(det);
    }
    det = F.mul(det, m[c][c]);
    int inv = F.inv(m[c][c]);
    for (int r = c + 1; r < n; ++r) {
      if (!m[r][c]) continue;
      int f = F.mul(m[r][c], inv);
      for (int j = c; j < n; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[c][j]));
    }
  }
  return det;
}

// Kind of the Gram matrix itself over F_q, ignoring the twist.
QuadKind gram_kind(const FField& F, const FFRows& G) {
  const int n = static_cast<int>(G.size());
  if (n % 2) return QuadKind::Odd;
  int det = ff_det(F, G);
  if (!det) throw std::invalid_argument("degenerate quadratic space");
  int disc = (n / 2) % 2 ? F.neg(det) : det;
  return F.is_square(disc) ? QuadKind::SplitEven : QuadKind::NonSplitEven;
}

struct SparseGram {
  std::vector<std::tuple<int, int, int>> entries;
  SparseGram(const FFRows& G) {
    for (size_t i = 0; i < G.size(); ++i)
      for (size_t j = 0; j < G.size(); ++j)
        if (G[i][j]) entries.emplace_back(static_cast<int>(i), static_cast<int>(j), G[i][j]);
  }
  int bil(const FField& F, const FFVec& x, const FFVec& y) const {
    int s = 0;
    for (auto [i, j, g] : entries)
      if (x[i] && y[j]) s = F.add(s, F.mul(F.mul(x[i], y[j]), g));
    return s;
  }
  FFVec apply(const FField& F, const FFVec& y, int n) const {
    FFVec r(n, 0);
    for (auto [i, j, g] : entries)
      if (y[j]) r[i] = F.add(r[i], F.mul(g, y[j]));
    return r;
  }
};

}  // namespace

FiniteQuadSpace FiniteQuadSpace::standard(int p, int n, QuadKind kind) {
  if (p % 2 == 0) throw std::invalid_argument("p must be odd");
  FiniteQuadSpace V;
  V.p = p;
  V.n = n;
  V.kind = kind;
  V.gram.assign(n, FFVec(n, 0));
  V.twist.resize(n);
  for (int i = 0; i < n; ++i) V.twist[i] = i;
  if (kind == QuadKind::Odd) {
    if (n % 2 == 0 || n < 1) throw std::invalid_argument("odd kind needs odd n");
    const int d = (n + 1) / 2;
    for (int i = 0; i + 1 < d; ++i) V.gram[i][n - 1 - i] = V.gram[n - 1 - i][i] = 1;
    V.gram[d - 1][d - 1] = 2 % p;
    return V;
  }
  if (n % 2 || n < 2) throw std::invalid_argument("even kind needs even n");
  const int d = n / 2;
  for (int i = 0; i < d; ++i) V.gram[i][d + i] = V.gram[d + i][i] = 1;
  if (kind == QuadKind::NonSplitEven) std::swap(V.twist[d - 1], V.twist[2 * d - 1]);
  return V;
}

FiniteQuadSpace FiniteQuadSpace::from_gram(int p, const FFRows& gram) {
  FiniteQuadSpace V;
  V.p = p;
  V.n = static_cast<int>(gram.size());
  V.gram = gram;
  V.twist.resize(V.n);
  for (int i = 0; i < V.n; ++i) V.twist[i] = i;
  V.kind = gram_kind(FField::get(p, 1), gram);
  return V;
}

bool FiniteQuadSpace::twisted() const {
  for (int i = 0; i < n; ++i)
    if (twist[i] != i) return true;
  return false;
}

QuadKind FiniteQuadSpace::computed_kind() const {
  if (!twisted()) return gram_kind(FField::get(p, 1), gram);
  // Gram on an F_p-basis of Φ-fixed vectors, computed inside F_{p²}; the twist swaps pairs.
  const FField& F = FField::get(p, 2);
  int u = 2;
  while (FField::get(p, 1).is_square(u % p)) ++u;
  int theta = -1;
  for (int x = 0; x < F.q(); ++x)
    if (F.mul(x, x) == u % p) theta = x;
  std::vector<FFVec> basis;
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    int j = twist[i];
    done[i] = done[j] = true;
    FFVec a(n, 0);
    if (j == i) {
      a[i] = 1;
      basis.push_back(a);
      continue;
    }
    a[i] = a[j] = 1;
    basis.push_back(a);
    FFVec b(n, 0);
    b[i] = theta;
    b[j] = F.frob(theta);
    basis.push_back(b);
  }
  SparseGram sg(gram);
  FFRows g(n, FFVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = sg.bil(F, basis[i], basis[j]);
      if (v >= p) throw std::logic_error("computed_kind: twisted Gram not rational");
      g[i][j] = v;
    }
  return gram_kind(FField::get(p, 1), g);
}

int FiniteQuadSpace::bil(const FField& F, const FFVec& x, const FFVec& y) const {
  return SparseGram(gram).bil(F, x, y);
}

FFVec FiniteQuadSpace::phi(const FField& F, const FFVec& v) const {
  FFVec r(n);
  for (int i = 0; i < n; ++i) r[i] = F.frob(v[twist[i]]);
  return r;
}

int FiniteQuadSpace::enumeration_degree(int k) const { return twisted() && k % 2 ? 2 * k : k; }

Subspace make_subspace(const FField& F, FFRows rows) {
  ff_rref(F, rows);
  return {std::move(rows)};
}

Subspace subspace_sum(const FField& F, const Subspace& a, const Subspace& b) {
  FFRows r = a.rows;
  r.insert(r.end(), b.rows.begin(), b.rows.end());
  return make_subspace(F, std::move(r));
}

FFRows ff_kernel(const FField& F, const FFRows& rows, int n) {
  FFRows r = rows;
  std::vector<int> piv = ff_rref(F, r);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  FFRows out;
  for (int fc = 0; fc < n; ++fc) {
    if (is_piv[fc]) continue;
    FFVec x(n, 0);
    x[fc] = 1;
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = F.neg(r[i][fc]);
    out.push_back(std::move(x));
  }
  return out;
}

Subspace subspace_intersection(const FField& F, const Subspace& a, const Subspace& b, int n) {
  FFRows ann = ff_kernel(F, a.rows, n);
  FFRows annb = ff_kernel(F, b.rows, n);
  ann.insert(ann.end(), annb.begin(), annb.end());
  return make_subspace(F, ff_kernel(F, ann, n));
}

Subspace phi(const FiniteQuadSpace& V, const FField& F, const Subspace& L) {
  FFRows r;
  r.reserve(L.rows.size());
  for (const auto& v : L.rows) r.push_back(V.phi(F, v));
  return make_subspace(F, std::move(r));
}

bool is_totally_isotropic(const FiniteQuadSpace& V, const FField& F, const Subspace& L) {
  SparseGram sg(V.gram);
  for (const auto& x : L.rows)
    for (const auto& y : L.rows)
      if (sg.bil(F, x, y)) return false;
  return true;
}

long double predicted_isotropic_count(int n, int d, long q, QuadKind kind) {
  if (d < 0) return 0;
  const long double Q = static_cast<long double>(q);
  long double c = 1;
  const int m = n / 2;
  for (int i = 0; i < d; ++i) {
    long double num;
    if (kind == QuadKind::Odd) num = std::pow(Q, 2 * (m - i)) - 1;
    else if (kind == QuadKind::SplitEven) num = (std::pow(Q, m - i) - 1) * (std::pow(Q, m - i - 1) + 1);
    else num = (std::pow(Q, m - i) + 1) * (std::pow(Q, m - i - 1) - 1);
    c *= num / (std::pow(Q, i + 1) - 1);
  }
  return std::max<long double>(0, std::round(c));
}

std::vector<Subspace> enumerate_isotropic(const FiniteQuadSpace& V, const FField& F, int d, long double ceiling,
                                          int threads) {
  const int n = V.n;
  const int q = F.q();
  if (d < 0 || 2 * d > n) return {};
  long double pred = predicted_isotropic_count(n, d, q, gram_kind(F, V.gram));
  if (pred > ceiling) throw CeilingExceeded(pred, ceiling);
  if (d == 0) return {Subspace{}};

  std::vector<std::vector<int>> pivsets;
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    pivsets.push_back(piv);
    int i = d - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }

  const SparseGram sg(V.gram);
  std::vector<std::vector<Subspace>> parts(pivsets.size());
  parallel_for(static_cast<int>(pivsets.size()), threads, [&](int idx) {
    const auto& pv = pivsets[idx];
    std::vector<bool> is_piv(n, false);
    for (int c : pv) is_piv[c] = true;
    std::vector<std::vector<int>> freecols(d);
    for (int i = 0; i < d; ++i)
      for (int c = pv[i] + 1; c < n; ++c)
        if (!is_piv[c]) freecols[i].push_back(c);
    FFRows rows(d, FFVec(n, 0));
    FFRows grows(d);
    auto& out = parts[idx];
    auto dfs = [&](auto&& self, int i) -> void {
      if (i == d) {
        out.push_back({rows});
        return;
      }
      FFVec& row = rows[i];
      std::fill(row.begin(), row.end(), 0);
      row[pv[i]] = 1;
      const auto& fc = freecols[i];
      std::vector<int> digit(fc.size(), 0);
      while (true) {
        for (size_t t = 0; t < fc.size(); ++t) row[fc[t]] = digit[t];
        bool ok = sg.bil(F, row, row) == 0;
        for (int j = 0; ok && j < i; ++j) ok = ff_dot(F, row, grows[j]) == 0;
        if (ok) {
          grows[i] = sg.apply(F, row, n);
          self(self, i + 1);
        }
        size_t t = 0;
        while (t < digit.size() && ++digit[t] == q) digit[t++] = 0;
        if (t == digit.size()) break;
      }
    };
    dfs(dfs, 0);
  });
  std::vector<Subspace> all;
  for (auto& part : parts) all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Subspace> rational_lagrangians(const FiniteQuadSpace& V, int k, long double ceiling, int threads) {
  const FField& F = FField::get(V.p, V.enumeration_degree(k));
  auto all = enumerate_isotropic(V, F, V.max_isotropic_dim(), ceiling, threads);
  if (!V.twisted()) return all;
  std::vector<Subspace> out;
  for (auto& L : all) {
    Subspace M = L;
    for (int i = 0; i < k; ++i) M = phi(V, F, M);
    if (M == L) out.push_back(std::move(L));
  }
  return out;
}

std::string StratumLabel::str() const {
  std::ostringstream os;
  os << "r=" << r;
  if (sign != '0') os << sign;
  return os.str();
}

Subspace reference_lagrangian(const FiniteQuadSpace& V, const FField& F) {
  const int d = V.n / 2;
  FFRows r;
  for (int i = 0; i < d; ++i) {
    FFVec v(V.n, 0);
    v[i] = 1;
    r.push_back(v);
  }
  return make_subspace(F, r);
}

char ogr_component(const FField& F, const Subspace& L, const Subspace& ref, int n) {
  (void)n;
  int inter = L.dim() + ref.dim() - subspace_sum(F, L, ref).dim();
  return (L.dim() - inter) % 2 == 0 ? '+' : '-';
}

int tower_index(const FiniteQuadSpace& V, const FField& F, const Subspace& L) {
  Subspace cur = L;
  int r = 0;
  while (true) {
    Subspace next = subspace_sum(F, cur, phi(V, F, cur));
    if (next == cur) return r;
    cur = std::move(next);
    if (++r > V.n) throw std::logic_error("tower_index: no stabilisation");
  }
}

StratumLabel dl_stratum_label(const FiniteQuadSpace& V, const FField& F, const Subspace& L) {
  StratumLabel s;
  s.r = tower_index(V, F, L);
  s.sign = V.n % 2 ? '0' : ogr_component(F, L, reference_lagrangian(V, F), V.n);
  return s;
}

int s_omega_threshold(const FiniteQuadSpace& V) {
  switch (V.kind) {
    case QuadKind::SplitEven: return V.n / 2 - 2;
    case QuadKind::NonSplitEven: return V.n / 2 - 1;
    case QuadKind::Odd: return (V.n - 1) / 2;
  }
  return 0;
}

bool in_s_omega(const FiniteQuadSpace& V, const FField& F, const Subspace& L) {
  Subspace P = phi(V, F, L);
  int inter = L.dim() + P.dim() - subspace_sum(F, L, P).dim();
  return inter >= s_omega_threshold(V);
}

long StratumCounts::sum() const {
  long s = 0;
  for (auto& [_, c] : by_label) s += c;
  return s;
}

StratumCounts count_strata(const FiniteQuadSpace& V, int k, const std::vector<Subspace>& lagrangians) {
  const FField& F = FField::get(V.p, V.enumeration_degree(k));
  StratumCounts c;
  c.k = k;
  c.total = static_cast<long>(lagrangians.size());
  for (const auto& L : lagrangians) {
    StratumLabel lab = dl_stratum_label(V, F, L);
    ++c.by_label[lab];
    if (in_s_omega(V, F, L)) (lab.sign == '-' ? c.s_minus : c.s_plus)++;
  }
  return c;
}

std::vector<StratumCounts> stratum_point_counts(const FiniteQuadSpace& V, int k_max, long double ceiling, int threads) {
  std::vector<StratumCounts> out;
  for (int k = 1; k <= k_max; ++k) out.push_back(count_strata(V, k, rational_lagrangians(V, k, ceiling, threads)));
  return out;
}

long fermat_count(int p, int k) {
  const FField& F = FField::get(p, k);
  const int q = F.q();
  std::vector<long> one(q, 0);
  for (int x = 0; x < q; ++x) ++one[F.pow(x, p + 1)];
  std::vector<long> two(q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) two[F.add(a, b)] += one[a] * one[b];
  long affine = 0;
  for (int s = 0; s < q; ++s) affine += two[s] * two[F.neg(s)];
  return (affine - 1) / (q - 1);
}

std::vector<FermatComparison> compare_s_fermat(int p, int k_max, int threads) {
  auto V = FiniteQuadSpace::standard(p, 6, QuadKind::SplitEven);
  std::vector<FermatComparison> out;
  for (const auto& c : stratum_point_counts(V, k_max, 1e7, threads)) out.push_back({c.k, c.s_plus, fermat_count(p, c.k)});
  return out;
}

std::vector<BijectionReport> so6_so5_bijection(int p, int d, int k_max, int threads) {
  const int n = 2 * d;
  auto V = FiniteQuadSpace::standard(p, n, QuadKind::SplitEven);
  auto W = FiniteQuadSpace::standard(p, n - 1, QuadKind::Odd);
  std::vector<BijectionReport> out;
  for (int k = 1; k <= k_max; ++k) {
    const FField& F = FField::get(p, k);
    BijectionReport rep;
    rep.d = d;
    rep.k = k;
    // ω^⊥ for ω = e_d − f_d: v_{e_d} = v_{f_d}.
    FFVec fn(n, 0);
    fn[d - 1] = 1;
    fn[n - 1] = F.neg(1);
    Subspace H = make_subspace(F, ff_kernel(F, {fn}, n));
    Subspace ref = reference_lagrangian(V, F);
    auto tgt = rational_lagrangians(W, k, 1e7, threads);
    std::set<Subspace> images;
    rep.labels_match = true;
    for (const auto& L : rational_lagrangians(V, k, 1e7, threads)) {
      if (ogr_component(F, L, ref, n) != '+') continue;
      ++rep.source;
      Subspace I = subspace_intersection(F, L, H, n);
      FFRows rows;
      for (const auto& v : I.rows) {
        FFVec w(n - 1);
        for (int i = 0; i + 1 < d; ++i) {
          w[i] = v[i];
          w[n - 2 - i] = v[d + i];
        }
        w[d - 1] = v[d - 1];
        rows.push_back(w);
      }
      Subspace img = make_subspace(F, rows);
      if (tower_index(V, F, L) != tower_index(W, F, img)) rep.labels_match = false;
      if (in_s_omega(V, F, L) != in_s_omega(W, F, img)) ++rep.s_mismatches;
      images.insert(std::move(img));
    }
    rep.target = static_cast<long>(tgt.size());
    rep.injective = static_cast<long>(images.size()) == rep.source;
    rep.surjective = std::set<Subspace>(tgt.begin(), tgt.end()) == images;
    out.push_back(rep);
  }
  return out;
}

}  // namespace gu22
