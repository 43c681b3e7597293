#pragma once

#include <cstdint>
#include <vector>

#include "gu22/arith.hpp"

namespace gu22 {

using FFVec = std::vector<int>;
using FFRows = std::vector<FFVec>;

// In-place reduced row echelon form; drops zero rows and returns pivot columns.
std::vector<int> ff_rref(const FField& F, FFRows& rows);
int ff_rank(const FField& F, FFRows rows);
int ff_dot(const FField& F, const FFVec& a, const FFVec& b);
FFVec ff_frob(const FField& F, FFVec v);
// Number of d-dimensional subspaces of F_q^n.
long double gaussian_binomial(long q, int n, int d);

// Calls f(rows) once per d-dimensional subspace of F_q^n, rows in RREF.
// Stops early when f returns false.
template <class Fn>
void for_each_subspace(const FField& F, int n, int d, Fn&& f) {
  const int q = F.q();
  if (d < 0 || d > n) return;
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    // Free positions: (row i, column c) with c > piv[i] and c not a pivot.
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < d; ++i)
      for (int c = piv[i] + 1; c < n; ++c)
        if (!is_piv[c]) free.push_back({i, c});
    FFRows rows(d, FFVec(n, 0));
    for (int i = 0; i < d; ++i) rows[i][piv[i]] = 1;
    std::vector<int> digit(free.size(), 0);
    while (true) {
      for (size_t t = 0; t < free.size(); ++t) rows[free[t].first][free[t].second] = digit[t];
      if (!f(static_cast<const FFRows&>(rows))) return;
      size_t t = 0;
      while (t < digit.size() && ++digit[t] == q) digit[t++] = 0;
      if (t == digit.size()) break;
    }
    int i = d - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// Calls f(v) for every vector of F_q^n (little-endian counter order).
template <class Fn>
void for_each_vector(const FField& F, int n, Fn&& f) {
  FFVec v(n, 0);
  while (true) {
    if (!f(static_cast<const FFVec&>(v))) return;
    int t = 0;
    while (t < n && ++v[t] == F.q()) v[t++] = 0;
    if (t == n) return;
  }
}

}  // namespace gu22
