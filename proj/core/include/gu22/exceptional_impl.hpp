#pragma once

// Template bodies for exceptional.hpp.

namespace gu22 {

template <class E>
std::optional<DvrLattice<E>> random_special_lattice(const DvrLattice<E>& Lam, const Mat<E>& G, int mode, int reflections,
                                                    std::mt19937_64& rng, int max_tries) {
  const Dvr<E>& R = Lam.ring();
  const long p = R.p;
  const int q = R.q();
  const int k = residue_degree(R);
  const FField& F = FField::get(p, k);
  const int n = Lam.dim();

  DvrLattice<E> Ld = Lam.form_dual(G);
  auto [C, div] = adapted_basis(Lam, Ld);
  std::vector<std::vector<E>> cq;
  for (int i = 0; i < n; ++i)
    if (div[i] == 1) cq.push_back(C.row(i));
    else if (div[i] != 0) return std::nullopt;  // not a vertex lattice
  const int m = static_cast<int>(cq.size());
  if (m != 5) return std::nullopt;

  auto bil = [&](const std::vector<E>& a, const std::vector<E>& b) {
    E s(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!is_zero(G(i, j)) && !is_zero(a[i]) && !is_zero(b[j])) s += a[i] * G(i, j) * b[j];
    return s;
  };
  // Residue form p[,] on Λ/Λ^∨.
  std::vector<std::vector<int>> g(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g[i][j] = R.residue(E(Rat(p)) * bil(cq[i], cq[j]));

  auto B = [&](const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (g[i][j]) s = F.add(s, F.mul(F.mul(a[i], b[j]), g[i][j]));
    return s;
  };
  auto frob = [&](std::vector<int> a) {
    for (auto& x : a) x = F.frob(x);
    return a;
  };
  auto rnd = [&](bool rational) {
    std::vector<int> a(m);
    std::uniform_int_distribution<int> d(0, rational ? static_cast<int>(p) - 1 : q - 1);
    for (auto& x : a) x = d(rng);
    return a;
  };
  auto nonzero = [](const std::vector<int>& a) {
    for (int x : a)
      if (x) return true;
    return false;
  };

  std::vector<int> a, b;
  bool found = false;
  const int outer = mode == 2 ? 40 * max_tries : max_tries;
  for (int t = 0; t < outer && !found; ++t) {
    a = rnd(mode != 2);
    if (!nonzero(a) || B(a, a) != 0) continue;
    if (mode == 2) {
      if (B(a, frob(a)) != 0) continue;
      if (ff_rank(F, {a, frob(a), frob(frob(a))}) < 3) continue;
      b = frob(a);
      found = true;
      break;
    }
    for (int s = 0; s < max_tries; ++s) {
      b = rnd(mode == 0);
      if (B(b, b) != 0 || B(a, b) != 0) continue;
      if (ff_rank(F, {a, b}) < 2) continue;
      if (mode == 1 && ff_rank(F, {a, b, frob(b)}) < 3) continue;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  auto lift = [&](const std::vector<int>& c) {
    std::vector<E> v(n, E(0));
    for (int i = 0; i < m; ++i) {
      if (!c[i]) continue;
      E l = R.lift(c[i]);
      for (int j = 0; j < n; ++j) v[j] += l * cq[i][j];
    }
    return v;
  };
  DvrLattice<E> Lcheck = Ld.add_vectors({lift(a), lift(b)});
  DvrLattice<E> L = Lcheck.form_dual(G);

  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < reflections; ++t) {
    std::vector<E> v(n);
    for (auto& x : v) x = E(coef(rng));
    E vv = bil(v, v);
    if (is_zero(vv)) continue;
    // s_v = I − 2 v vᵀ G / [v, v]
    Mat<E> s = Mat<E>::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        E gv(0);
        for (int l = 0; l < n; ++l)
          if (!is_zero(v[l]) && !is_zero(G(l, j))) gv += v[l] * G(l, j);
        if (!is_zero(v[i]) && !is_zero(gv)) s(i, j) -= E(2) * v[i] * gv / vv;
      }
    L = L.transform(s);
  }
  return L;
}

}  // namespace gu22
