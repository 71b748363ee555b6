#pragma once

// Dense exact linear algebra over any field type T providing + - * /, ==,
// a zero default constructor and an overload `is_zero(const T&)`.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polarium/rational.hpp"

namespace polarium {

inline bool is_zero(const Rational& r) { return r == 0; }

namespace linalg {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
Mat<T> zeros(std::size_t rows, std::size_t cols) {
  return Mat<T>(rows, Vec<T>(cols, T{}));
}

template <class T>
Mat<T> identity(std::size_t n) {
  auto m = zeros<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T{1};
  return m;
}

template <class T>
bool is_zero_vec(const Vec<T>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <class T>
Mat<T> mul(const Mat<T>& a, const Mat<T>& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  auto c = zeros<T>(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero(b[l][j])) c[i][j] = c[i][j] + a[i][l] * b[l][j];
    }
  return c;
}

template <class T>
Vec<T> apply(const Mat<T>& a, const Vec<T>& v) {
  Vec<T> out(a.size(), T{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(a[i][j]) && !is_zero(v[j])) out[i] = out[i] + a[i][j] * v[j];
  return out;
}

template <class T>
Mat<T> transpose(const Mat<T>& a) {
  if (a.empty()) return {};
  auto t = zeros<T>(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) s = s + a[i] * b[i];
  return s;
}

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row, in order.
template <class T>
std::vector<std::size_t> rref(Mat<T>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    T inv = T{1} / m[r][c];
    for (std::size_t j = c; j < cols; ++j)
      if (!is_zero(m[r][j])) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      T f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(m[r][j])) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

template <class T>
std::size_t rank(Mat<T> m) {
  return rref(m).size();
}

/// Basis of {v : m v = 0}, one vector per free column.
template <class T>
std::vector<Vec<T>> nullspace(Mat<T> m, std::size_t cols) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(cols, T{});
    v[f] = T{1};
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = T{} - m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Echelon basis of the span of `vectors` (all of length `dim`).
template <class T>
std::vector<Vec<T>> span_basis(const std::vector<Vec<T>>& vectors) {
  if (vectors.empty()) return {};
  Mat<T> m = vectors;
  rref(m);
  return m;
}

/// Incremental span membership, used by closure computations.
template <class T>
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return rows_.size(); }

  /// Reduces v against the current echelon rows; returns the residual.
  Vec<T> reduce(Vec<T> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& c = pivots_[r];
      if (is_zero(v[c])) continue;
      T f = v[c];
      for (std::size_t j = 0; j < dim_; ++j)
        if (!is_zero(rows_[r][j])) v[j] = v[j] - f * rows_[r][j];
    }
    return v;
  }

  bool contains(const Vec<T>& v) const { return is_zero_vec(reduce(v)); }

  /// Adds v to the span; returns false when it was already contained.
  bool insert(const Vec<T>& v) {
    auto res = reduce(v);
    std::size_t c = 0;
    while (c < dim_ && is_zero(res[c])) ++c;
    if (c == dim_) return false;
    T inv = T{1} / res[c];
    for (auto& x : res)
      if (!is_zero(x)) x = x * inv;
    for (auto& row : rows_) {
      if (is_zero(row[c])) continue;
      T f = row[c];
      for (std::size_t j = 0; j < dim_; ++j)
        if (!is_zero(res[j])) row[j] = row[j] - f * res[j];
    }
    rows_.push_back(std::move(res));
    pivots_.push_back(c);
    return true;
  }

  const std::vector<Vec<T>>& rows() const { return rows_; }

 private:
  std::size_t dim_;
  std::vector<Vec<T>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solves m x = b; nullopt if inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Mat<T>& m, const Vec<T>& b) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  Mat<T> aug = m;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug);
  Vec<T> x(cols, T{});
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    x[pivots[r]] = aug[r][cols];
  }
  return x;
}

template <class T>
T determinant(Mat<T> m) {
  std::size_t n = m.size();
  T det{1};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return T{};
    if (p != c) {
      std::swap(m[p], m[c]);
      det = T{} - det;
    }
    det = det * m[c][c];
    T inv = T{1} / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      T f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  return det;
}

}  // namespace linalg
}  // namespace polarium
