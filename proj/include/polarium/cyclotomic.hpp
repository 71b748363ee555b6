#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_L). Elements are stored in
// the power basis 1, z, ..., z^(phi(L)-1) reduced modulo the L-th cyclotomic
// polynomial; mixed-conductor operations lift both sides to the lcm.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "polarium/error.hpp"
#include "polarium/linalg.hpp"
#include "polarium/rational.hpp"

namespace polarium {

namespace detail {

using Poly = std::vector<Rational>;  // low degree first

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_divexact(Poly a, const Poly& b) {
  // b monic
  trim(a);
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    Rational c = a[i];
    q[i - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
  }
  return q;
}

inline Poly compute_cyclotomic(std::int64_t n);

inline std::shared_ptr<const Poly> cyclotomic_poly(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const Poly>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto p = std::make_shared<const Poly>(compute_cyclotomic(n));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

inline Poly compute_cyclotomic(std::int64_t n) {
  Poly p(static_cast<std::size_t>(n) + 1, Rational(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divexact(p, *cyclotomic_poly(d));
  trim(p);
  return p;
}

/// Reduces p modulo the monic polynomial m, in place; result has deg < deg m.
inline void reduce_mod(Poly& p, const Poly& m) {
  std::size_t deg = m.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    Rational c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * m[j];
  }
  p.resize(deg, Rational(0));
}

}  // namespace detail

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

class CycloNumber {
 public:
  /// Zero in Q.
  CycloNumber() : conductor_(1), coeffs_(1, Rational(0)) {}
  CycloNumber(int v) : conductor_(1), coeffs_(1, Rational(v)) {}  // NOLINT
  CycloNumber(const Rational& v) : conductor_(1), coeffs_(1, v) {}  // NOLINT

  /// zeta_L^exponent.
  static CycloNumber root_of_unity(std::int64_t conductor, std::int64_t exponent) {
    require(conductor >= 1, ErrorCode::InvalidArgument, "exactfield",
            "conductor must be >= 1, got " + std::to_string(conductor));
    std::int64_t e = ((exponent % conductor) + conductor) % conductor;
    detail::Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[static_cast<std::size_t>(e)] = 1;
    return from_poly(conductor, std::move(p));
  }

  /// Element with the given power-basis coefficients (reduced if too long).
  static CycloNumber from_coeffs(std::int64_t conductor, std::vector<Rational> coeffs) {
    require(conductor >= 1, ErrorCode::InvalidArgument, "exactfield",
            "conductor must be >= 1, got " + std::to_string(conductor));
    return from_poly(conductor, std::move(coeffs));
  }

  std::int64_t conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  /// Only meaningful when is_rational().
  const Rational& rational_part() const { return coeffs_[0]; }

  CycloNumber lift(std::int64_t target) const {
    require(target >= 1 && target % conductor_ == 0, ErrorCode::InvalidArgument, "exactfield",
            "cannot lift conductor " + std::to_string(conductor_) + " to " + std::to_string(target));
    if (target == conductor_) return *this;
    std::int64_t step = target / conductor_;
    detail::Poly p(coeffs_.size() * static_cast<std::size_t>(step), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return from_poly(target, std::move(p));
  }

  /// Inverse of lift: the same element expressed in Q(zeta_target) if it lies there.
  std::optional<CycloNumber> retract(std::int64_t target) const {
    require(target >= 1 && conductor_ % target == 0, ErrorCode::InvalidArgument, "exactfield",
            "retract target " + std::to_string(target) + " must divide " + std::to_string(conductor_));
    std::size_t small = static_cast<std::size_t>(euler_phi(target));
    std::size_t big = coeffs_.size();
    auto m = linalg::zeros<Rational>(big, small);
    for (std::size_t k = 0; k < small; ++k) {
      auto img = root_of_unity(target, static_cast<std::int64_t>(k)).lift(conductor_);
      for (std::size_t i = 0; i < big; ++i) m[i][k] = img.coeffs_[i];
    }
    auto sol = linalg::solve(m, coeffs_);
    if (!sol) return std::nullopt;
    return from_poly(target, std::move(*sol));
  }

  CycloNumber inverse() const {
    if (is_zero()) fail(ErrorCode::ArithmeticError, "exactfield", "division by zero");
    if (is_rational()) return from_poly(conductor_, {Rational(1) / coeffs_[0]});
    // Multiplication-by-this matrix in the power basis; solve M y = e_0.
    std::size_t n = coeffs_.size();
    auto m = linalg::zeros<Rational>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      detail::Poly p(n + k, Rational(0));
      for (std::size_t i = 0; i < n; ++i) p[i + k] = coeffs_[i];
      detail::reduce_mod(p, *detail::cyclotomic_poly(conductor_));
      for (std::size_t i = 0; i < n; ++i) m[i][k] = p[i];
    }
    std::vector<Rational> e0(n, Rational(0));
    e0[0] = 1;
    auto sol = linalg::solve(m, e0);
    if (!sol) fail(ErrorCode::InternalInvariantViolation, "exactfield", "singular multiplication matrix");
    return from_poly(conductor_, std::move(*sol));
  }

  CycloNumber pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNumber result = one_like();
    CycloNumber base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// If this equals r * zeta_L^k for rational r, returns (r, k) with the
  /// smallest such k.
  std::optional<std::pair<Rational, std::int64_t>> as_scaled_root_of_unity() const {
    if (is_zero()) return std::make_pair(Rational(0), std::int64_t{0});
    for (std::int64_t k = 0; k < conductor_; ++k) {
      auto t = *this * root_of_unity(conductor_, -k);
      if (t.is_rational()) return std::make_pair(t.coeffs_[0], k);
    }
    return std::nullopt;
  }

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ != b.conductor_) {
      auto L = lcm64(a.conductor_, b.conductor_);
      return a.lift(L) + b.lift(L);
    }
    CycloNumber r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }

  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ != b.conductor_) {
      auto L = lcm64(a.conductor_, b.conductor_);
      return a.lift(L) - b.lift(L);
    }
    CycloNumber r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }

  CycloNumber operator-() const {
    CycloNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ != b.conductor_) {
      if (a.is_rational()) return b.scaled(a.coeffs_[0]);
      if (b.is_rational()) return a.scaled(b.coeffs_[0]);
      auto L = lcm64(a.conductor_, b.conductor_);
      return a.lift(L) * b.lift(L);
    }
    if (a.is_rational()) return b.scaled(a.coeffs_[0]);
    if (b.is_rational()) return a.scaled(b.coeffs_[0]);
    std::size_t n = a.coeffs_.size();
    detail::Poly p(2 * n - 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b.coeffs_[j] != 0) p[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return from_poly(a.conductor_, std::move(p));
  }

  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
    if (b.is_zero()) fail(ErrorCode::ArithmeticError, "exactfield", "division by zero");
    if (b.is_rational()) return a.scaled(Rational(1) / b.coeffs_[0]);
    return a * b.inverse();
  }

  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    if (a.is_rational() && b.is_rational()) return a.coeffs_[0] == b.coeffs_[0];
    auto L = lcm64(a.conductor_, b.conductor_);
    return a.lift(L).coeffs_ == b.lift(L).coeffs_;
  }
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  /// Lexicographic order on the coefficient vector at a common conductor.
  friend bool lex_less(const CycloNumber& a, const CycloNumber& b) {
    auto L = lcm64(a.conductor_, b.conductor_);
    auto x = a.lift(L), y = b.lift(L);
    return x.coeffs_ < y.coeffs_;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      std::string c = to_string(coeffs_[i]);
      if (!out.empty() && c[0] != '-') out += "+";
      if (i == 0)
        out += c;
      else {
        if (coeffs_[i] == 1)
          ;
        else if (coeffs_[i] == -1)
          out += "-";
        else
          out += c + "*";
        out += "z" + std::to_string(conductor_);
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycloNumber& c) { return os << c.str(); }

 private:
  static CycloNumber from_poly(std::int64_t conductor, detail::Poly p) {
    CycloNumber r;
    r.conductor_ = conductor;
    if (conductor <= 2) {
      // Phi_1 = x - 1, Phi_2 = x + 1
      Rational v(0), z(conductor == 1 ? 1 : -1), pw(1);
      for (const auto& c : p) {
        if (c != 0) v += c * pw;
        pw *= z;
      }
      r.coeffs_.assign(1, v);
      return r;
    }
    detail::reduce_mod(p, *detail::cyclotomic_poly(conductor));
    r.coeffs_ = std::move(p);
    return r;
  }

  CycloNumber one_like() const { return from_poly(conductor_, {Rational(1)}); }

  CycloNumber scaled(const Rational& s) const {
    CycloNumber r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  std::int64_t conductor_;
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const CycloNumber& c) { return c.is_zero(); }

/// zeta_conductor^exponent.
inline CycloNumber zeta(std::int64_t conductor, std::int64_t exponent = 1) {
  return CycloNumber::root_of_unity(conductor, exponent);
}

/// sqrt(q) for rational q, placed in Q(zeta_{4|d|}) with d the squarefree
/// part of q. Uses Gauss sums for odd primes and zeta_8 + zeta_8^-1 for 2.
inline CycloNumber sqrt_rational(const Rational& q) {
  if (q == 0) return CycloNumber();
  Integer n = num(q) * den(q);
  Rational scale = Rational(1) / Rational(den(q));
  bool negative = n < 0;
  if (negative) n = -n;
  Integer squarefree = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      scale *= Rational(p);
    }
    if (n % p == 0) {
      n /= p;
      squarefree *= p;
    }
  }
  squarefree *= n;
  CycloNumber root(scale);
  Integer rest = squarefree;
  for (Integer p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    rest /= p;
    if (p == 2) {
      root = root * (zeta(8, 1) - zeta(8, 3));
      continue;
    }
    std::int64_t pp = p.convert_to<std::int64_t>();
    CycloNumber gauss;
    for (std::int64_t a = 1; a < pp; ++a) {
      // Legendre symbol by Euler's criterion
      std::int64_t e = (pp - 1) / 2, b = a % pp, acc = 1;
      while (e > 0) {
        if (e & 1) acc = acc * b % pp;
        b = b * b % pp;
        e >>= 1;
      }
      gauss = gauss + (acc == 1 ? zeta(pp, a) : -zeta(pp, a));
    }
    // gauss^2 = (-1)^((p-1)/2) p
    if (pp % 4 == 1)
      root = root * gauss;
    else
      root = root * gauss * (-zeta(4, 1));
  }
  if (negative) root = root * zeta(4, 1);
  return root;
}

}  // namespace polarium
