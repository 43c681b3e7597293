#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gu22/arith.hpp"

namespace gu22 {

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const QEps& x) { return x.is_zero(); }
inline bool is_zero(const SymElem& x) { return x.is_zero(); }
inline bool is_zero(const UnrElem& x) { return x.is_zero(); }
inline std::string str(const Rat& x) { return x.get_str(); }
inline std::string str(const QEps& x) { return x.str(); }
inline std::string str(const SymElem& x) { return x.str(); }
inline std::string str(const UnrElem& x) { return x.str(); }

// Dense row-major matrix over an exact field.
template <class E>
class Mat {
 public:
  Mat() = default;
  Mat(int r, int c) : r_(r), c_(c), d_(static_cast<size_t>(r) * c, E(0)) {}
  Mat(int r, int c, std::vector<E> d) : r_(r), c_(c), d_(std::move(d)) {
    if (d_.size() != static_cast<size_t>(r) * c) throw std::invalid_argument("Mat: size mismatch");
  }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = E(1);
    return m;
  }
  static Mat diag(const std::vector<E>& v) {
    Mat m(static_cast<int>(v.size()), static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = v[i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  E& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
  const E& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

  std::vector<E> row(int i) const { return {d_.begin() + static_cast<long>(i) * c_, d_.begin() + static_cast<long>(i + 1) * c_}; }
  void set_row(int i, const std::vector<E>& v) {
    for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
  }
  std::vector<E> col(int j) const {
    std::vector<E> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < r_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Mat map(const std::function<E(const E&)>& f) const {
    Mat m(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = f(d_[i]);
    return m;
  }

  Mat operator+(const Mat& o) const {
    check_same(o);
    Mat m(*this);
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] += o.d_[i];
    return m;
  }
  Mat operator-(const Mat& o) const {
    check_same(o);
    Mat m(*this);
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] -= o.d_[i];
    return m;
  }
  Mat operator-() const {
    Mat m(*this);
    for (auto& x : m.d_) x = -x;
    return m;
  }
  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Mat: product dimension mismatch");
    Mat m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const E& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (int j = 0; j < o.c_; ++j)
          if (!is_zero(o(k, j))) m(i, j) += a * o(k, j);
      }
    return m;
  }
  friend Mat operator*(const E& s, const Mat& a) {
    Mat m(a);
    for (auto& x : m.d_) x = s * x;
    return m;
  }
  std::vector<E> apply(const std::vector<E>& v) const {
    std::vector<E> w(r_, E(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) w[i] += (*this)(i, j) * v[j];
    return w;
  }
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero_matrix() const {
    for (const auto& x : d_)
      if (!is_zero(x)) return false;
    return true;
  }

  E det() const {
    if (r_ != c_) throw std::invalid_argument("Mat::det: not square");
    Mat a(*this);
    E d(1);
    for (int j = 0; j < r_; ++j) {
      int piv = -1;
      for (int i = j; i < r_; ++i)
        if (!is_zero(a(i, j))) {
          piv = i;
          break;
        }
      if (piv < 0) return E(0);
      if (piv != j) {
        a.swap_rows(piv, j);
        d = -d;
      }
      d *= a(j, j);
      E inv = E(1) / a(j, j);
      for (int i = j + 1; i < r_; ++i) {
        if (is_zero(a(i, j))) continue;
        E f = a(i, j) * inv;
        for (int k = j; k < r_; ++k) a(i, k) -= f * a(j, k);
      }
    }
    return d;
  }

  // Row echelon with pivot columns; returns rank.
  int rank() const {
    Mat a(*this);
    int r = 0;
    for (int j = 0; j < c_ && r < r_; ++j) {
      int piv = -1;
      for (int i = r; i < r_; ++i)
        if (!is_zero(a(i, j))) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      a.swap_rows(piv, r);
      E inv = E(1) / a(r, j);
      for (int i = r + 1; i < r_; ++i) {
        if (is_zero(a(i, j))) continue;
        E f = a(i, j) * inv;
        for (int k = j; k < c_; ++k) a(i, k) -= f * a(r, k);
      }
      ++r;
    }
    return r;
  }

  Mat inverse() const {
    if (r_ != c_) throw std::invalid_argument("Mat::inverse: not square");
    int n = r_;
    Mat a(*this), b = identity(n);
    for (int j = 0; j < n; ++j) {
      int piv = -1;
      for (int i = j; i < n; ++i)
        if (!is_zero(a(i, j))) {
          piv = i;
          break;
        }
      if (piv < 0) throw std::domain_error("Mat::inverse: singular matrix");
      a.swap_rows(piv, j);
      b.swap_rows(piv, j);
      E inv = E(1) / a(j, j);
      for (int k = 0; k < n; ++k) {
        a(j, k) *= inv;
        b(j, k) *= inv;
      }
      for (int i = 0; i < n; ++i) {
        if (i == j || is_zero(a(i, j))) continue;
        E f = a(i, j);
        for (int k = 0; k < n; ++k) {
          if (!is_zero(a(j, k))) a(i, k) -= f * a(j, k);
          if (!is_zero(b(j, k))) b(i, k) -= f * b(j, k);
        }
      }
    }
    return b;
  }

  // Basis of the right kernel {x : A x = 0}, one vector per free column.
  std::vector<std::vector<E>> kernel() const {
    Mat a(*this);
    std::vector<int> pivcol;
    int r = 0;
    for (int j = 0; j < c_ && r < r_; ++j) {
      int piv = -1;
      for (int i = r; i < r_; ++i)
        if (!is_zero(a(i, j))) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      a.swap_rows(piv, r);
      E inv = E(1) / a(r, j);
      for (int k = 0; k < c_; ++k) a(r, k) *= inv;
      for (int i = 0; i < r_; ++i) {
        if (i == r || is_zero(a(i, j))) continue;
        E f = a(i, j);
        for (int k = 0; k < c_; ++k) a(i, k) -= f * a(r, k);
      }
      pivcol.push_back(j);
      ++r;
    }
    std::vector<bool> is_piv(c_, false);
    for (int j : pivcol) is_piv[j] = true;
    std::vector<std::vector<E>> out;
    for (int f = 0; f < c_; ++f) {
      if (is_piv[f]) continue;
      std::vector<E> v(c_, E(0));
      v[f] = E(1);
      for (size_t t = 0; t < pivcol.size(); ++t) v[pivcol[t]] = -a(static_cast<int>(t), f);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
      os << (i ? ",[" : "[");
      for (int j = 0; j < c_; ++j) os << (j ? "," : "") << gu22::str((*this)(i, j));
      os << "]";
    }
    os << "]";
    return os.str();
  }

  const std::vector<E>& data() const { return d_; }

 private:
  void check_same(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<E> d_;
};

using RatMat = Mat<Rat>;
using QMat = Mat<QEps>;
using SMat = Mat<SymElem>;
using UMat = Mat<UnrElem>;

}  // namespace gu22
