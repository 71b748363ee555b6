#pragma once

// Laurent tails in t^{-q} dt/t normalization: finitely many covector (or
// scalar) coefficients indexed by rational exponents q >= 0.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polarium/cyclotomic.hpp"
#include "polarium/rootdata.hpp"

namespace polarium {

using Covector = std::vector<CycloNumber>;

inline bool is_zero_covector(const Covector& c) {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

inline Covector to_covector(const IntVec& v) {
  Covector c;
  c.reserve(v.size());
  for (auto x : v) c.emplace_back(Rational(x));
  return c;
}

inline CycloNumber pair(const IntVec& h, const Covector& c) {
  CycloNumber s;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0 && !c[i].is_zero()) s = s + CycloNumber(Rational(h[i])) * c[i];
  return s;
}

inline Covector act(const IntMatrix& m, const Covector& c) {
  Covector out(c.size());
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (m(i, j) != 0 && !c[j].is_zero()) out[i] = out[i] + CycloNumber(Rational(m(i, j))) * c[j];
  return out;
}

namespace detail {

inline void check_exponent(const Rational& q, std::int64_t m, const char* module) {
  require(q >= 0, ErrorCode::InvalidArgument, module, "tail exponent must be >= 0, got " + to_string(q));
  require(m % static_cast<std::int64_t>(den(q)) == 0, ErrorCode::InvalidArgument, module,
          "exponent " + to_string(q) + " has denominator not dividing m=" + std::to_string(m));
}

}  // namespace detail

/// A tail sum_q c_q t^{-q} dt/t with scalar coefficients.
class ScalarTail {
 public:
  explicit ScalarTail(std::int64_t m = 1) : m_(m) {}

  std::int64_t m() const { return m_; }
  const std::map<Rational, CycloNumber>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const Rational& q, const CycloNumber& c) {
    detail::check_exponent(q, m_, "tails");
    auto v = terms_[q] + c;
    if (v.is_zero())
      terms_.erase(q);
    else
      terms_[q] = v;
  }

  std::optional<Rational> depth() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  friend bool operator==(const ScalarTail& a, const ScalarTail& b) { return a.terms_ == b.terms_; }

 private:
  std::int64_t m_;
  std::map<Rational, CycloNumber> terms_;
};

inline std::optional<Rational> depth(const ScalarTail& s) { return s.depth(); }

/// A tail with covector coefficients in t0* (fundamental-weight coordinates).
class Tail {
 public:
  Tail() = default;
  Tail(int dim, std::int64_t m) : dim_(dim), m_(m) {
    require(m >= 1, ErrorCode::InvalidArgument, "tails", "conductor m must be >= 1");
  }

  static Tail single(const Rational& q, const Covector& c, std::int64_t m) {
    Tail t(static_cast<int>(c.size()), m);
    t.add(q, c);
    return t;
  }

  int dim() const { return dim_; }
  std::int64_t m() const { return m_; }
  const std::map<Rational, Covector>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Rational& q, const Covector& c) {
    require(static_cast<int>(c.size()) == dim_, ErrorCode::InvalidArgument, "tails",
            "covector length " + std::to_string(c.size()) + " does not match rank " + std::to_string(dim_));
    detail::check_exponent(q, m_, "tails");
    auto it = terms_.find(q);
    Covector v = c;
    if (it != terms_.end())
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = it->second[i] + v[i];
    if (is_zero_covector(v)) {
      if (it != terms_.end()) terms_.erase(it);
    } else {
      terms_[q] = std::move(v);
    }
  }

  Tail lifted(std::int64_t m2) const {
    require(m2 % m_ == 0, ErrorCode::InvalidArgument, "tails",
            "cannot lift tail conductor " + std::to_string(m_) + " to " + std::to_string(m2));
    Tail t = *this;
    t.m_ = m2;
    return t;
  }

  std::optional<Rational> depth() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  /// Terms with exponent in (lo, hi]; unset bounds are open-ended.
  Tail band(const std::optional<Rational>& lo, const std::optional<Rational>& hi, bool include_lo = false) const {
    Tail t(dim_, m_);
    for (const auto& [q, c] : terms_) {
      if (lo && (include_lo ? q < *lo : q <= *lo)) continue;
      if (hi && q > *hi) continue;
      t.terms_[q] = c;
    }
    return t;
  }

  Tail scaled(const CycloNumber& s) const {
    Tail t(dim_, m_);
    if (s.is_zero()) return t;
    for (const auto& [q, c] : terms_) {
      Covector v = c;
      for (auto& x : v) x = x * s;
      t.terms_[q] = std::move(v);
    }
    return t;
  }

  friend Tail operator+(const Tail& a, const Tail& b) {
    require(a.dim_ == b.dim_, ErrorCode::InvalidArgument, "tails", "adding tails of different rank");
    Tail t = a.lifted(std::lcm(a.m_, b.m_));
    for (const auto& [q, c] : b.terms_) t.add(q, c);
    return t;
  }
  Tail operator-() const { return scaled(CycloNumber(-1)); }
  friend Tail operator-(const Tail& a, const Tail& b) { return a + (-b); }

  /// Equality of the represented elements; the conductor tag is ignored.
  friend bool operator==(const Tail& a, const Tail& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

 private:
  int dim_ = 0;
  std::int64_t m_ = 1;
  std::map<Rational, Covector> terms_;
};

inline ScalarTail pair_coroot(const RootDatum& rd, const Tail& lambda, int root) {
  const auto& h = rd.coroot_vector(root);
  ScalarTail s(lambda.m());
  for (const auto& [q, c] : lambda.terms()) s.add(q, pair(h, c));
  return s;
}

inline Tail weyl_act(const WeylElement& w, const Tail& lambda) {
  Tail t(lambda.dim(), lambda.m());
  for (const auto& [q, c] : lambda.terms()) t.add(q, act(w.matrix, c));
  return t;
}

/// Fixed-point condition for a torus presented by (w, m): w c_q = zeta_m^{qm} c_q.
inline bool is_equivariant(const Tail& lambda, const WeylElement& w, std::int64_t m) {
  for (const auto& [q, c] : lambda.terms()) {
    if (!is_integral(q * m)) return false;
    auto k = to_int64(q * m);
    auto z = zeta(m, k);
    auto wc = act(w.matrix, c);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!(wc[i] == z * c[i])) return false;
  }
  return true;
}

/// Sorted multiset of coroot depths (none encoded as absent) used as a
/// conjugation invariant.
inline std::vector<std::optional<Rational>> depth_multiset(const RootDatum& rd, const Tail& lambda) {
  std::vector<std::optional<Rational>> out;
  for (int a = 0; a < rd.num_roots(); ++a) out.push_back(pair_coroot(rd, lambda, a).depth());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polarium
