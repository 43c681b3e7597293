#include "gu22/ffspace.hpp"

#include <algorithm>

namespace gu22 {

std::vector<int> ff_rref(const FField& F, FFRows& rows) {
  std::vector<int> pivots;
  int r = 0;
  int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  int m = static_cast<int>(rows.size());
  for (int j = 0; j < n && r < m; ++j) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][j]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    int inv = F.inv(rows[r][j]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (int i = 0; i < m; ++i) {
      if (i == r || !rows[i][j]) continue;
      int f = rows[i][j];
      for (int c = 0; c < n; ++c)
        if (rows[r][c]) rows[i][c] = F.sub(rows[i][c], F.mul(f, rows[r][c]));
    }
    pivots.push_back(j);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

int ff_rank(const FField& F, FFRows rows) { return static_cast<int>(ff_rref(F, rows).size()); }

int ff_dot(const FField& F, const FFVec& a, const FFVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

FFVec ff_frob(const FField& F, FFVec v) {
  for (auto& x : v) x = F.frob(x);
  return v;
}

long double gaussian_binomial(long q, int n, int d) {
  if (d < 0 || d > n) return 0;
  long double num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    long double a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

}  // namespace gu22
