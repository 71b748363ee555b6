#pragma once

// Truncated Laurent series, the type A Chevalley map on diagonal entries,
// series square roots and the SL2 stratum table with its cross-check
// through the general classification.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polarium/polar.hpp"

namespace polarium {

/// Series known on exponents in [lo, hi); exponents below lo are zero.
/// Exponents are rationals on the lattice (1/den) Z.
class LaurentWindow {
 public:
  LaurentWindow() : lo_(0), hi_(1) {}
  LaurentWindow(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    require(lo_ < hi_, ErrorCode::InvalidArgument, "chevmap", "window needs lo < hi");
  }

  static LaurentWindow monomial(const CycloNumber& c, const Rational& e, const Rational& lo, const Rational& hi) {
    LaurentWindow w(lo, hi);
    w.set(e, c);
    return w;
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::map<Rational, CycloNumber>& terms() const { return terms_; }

  /// Sets a coefficient; exponents at or beyond hi are dropped as unknown.
  void set(const Rational& e, const CycloNumber& c) {
    require(e >= lo_, ErrorCode::InvalidArgument, "chevmap", "exponent " + to_string(e) + " below window");
    if (e >= hi_) return;
    if (c.is_zero())
      terms_.erase(e);
    else
      terms_[e] = c;
  }

  CycloNumber coeff(const Rational& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CycloNumber() : it->second;
  }

  /// First nonzero exponent, if any is visible in the window.
  std::optional<Rational> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  /// Lower bound for the true valuation.
  Rational valuation_bound() const { return terms_.empty() ? hi_ : terms_.begin()->first; }

  bool known_zero() const { return terms_.empty(); }

  Integer denominator() const {
    Integer d = boost::multiprecision::lcm(den(lo_), den(hi_));
    for (const auto& [e, c] : terms_) d = boost::multiprecision::lcm(d, den(e));
    return d;
  }

  LaurentWindow truncated(const Rational& hi) const {
    require(hi <= hi_, ErrorCode::PrecisionError, "chevmap",
            "requested precision " + to_string(hi) + " exceeds known precision " + to_string(hi_));
    LaurentWindow w(lo_, hi);
    for (const auto& [e, c] : terms_) w.set(e, c);
    return w;
  }

  LaurentWindow shifted(const Rational& by) const {
    LaurentWindow w(lo_ + by, hi_ + by);
    for (const auto& [e, c] : terms_) w.terms_[e + by] = c;
    return w;
  }

  LaurentWindow scaled(const CycloNumber& s) const {
    LaurentWindow w(lo_, hi_);
    for (const auto& [e, c] : terms_) w.set(e, c * s);
    return w;
  }

  LaurentWindow operator-() const { return scaled(CycloNumber(-1)); }

  friend LaurentWindow operator+(const LaurentWindow& a, const LaurentWindow& b) {
    LaurentWindow w(std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
    for (const auto& [e, c] : a.terms_) w.add_to(e, c);
    for (const auto& [e, c] : b.terms_) w.add_to(e, c);
    return w;
  }

  friend LaurentWindow operator-(const LaurentWindow& a, const LaurentWindow& b) { return a + (-b); }

  /// Product with precision min(hi_a + v_b, hi_b + v_a), v the valuation bounds.
  friend LaurentWindow operator*(const LaurentWindow& a, const LaurentWindow& b) {
    Rational hi = std::min(a.hi_ + b.valuation_bound(), b.hi_ + a.valuation_bound());
    Rational lo = a.lo_ + b.lo_;
    if (hi <= lo)
      fail(ErrorCode::PrecisionError, "chevmap", "product has no guaranteed coefficients");
    LaurentWindow w(lo, hi);
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) w.add_to(e1 + e2, c1 * c2);
    return w;
  }

  /// Equality of the known coefficients on the common window.
  friend bool agree(const LaurentWindow& a, const LaurentWindow& b) {
    Rational hi = std::min(a.hi_, b.hi_);
    for (const auto& [e, c] : a.terms_)
      if (e < hi && !(b.coeff(e) == c)) return false;
    for (const auto& [e, c] : b.terms_)
      if (e < hi && !(a.coeff(e) == c)) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")t^" + to_string(e);
    }
    return (out.empty() ? "0" : out) + " + O(t^" + to_string(hi_) + ")";
  }

 private:
  void add_to(const Rational& e, const CycloNumber& c) {
    if (e >= hi_) return;
    auto v = coeff(e) + c;
    if (e < lo_) lo_ = e;
    set(e, v);
  }

  Rational lo_, hi_;
  std::map<Rational, CycloNumber> terms_;
};

/// Elementary symmetric functions e_2..e_n of trace-free diagonal entries.
/// With a window, the output is truncated to it and must be fully known.
inline std::vector<LaurentWindow> charpoly_map(const std::vector<LaurentWindow>& diag,
                                               std::optional<std::pair<Rational, Rational>> window = std::nullopt) {
  require(diag.size() >= 2, ErrorCode::InvalidArgument, "chevmap", "need at least two diagonal entries");
  LaurentWindow trace = diag[0];
  for (std::size_t i = 1; i < diag.size(); ++i) trace = trace + diag[i];
  require(trace.known_zero(), ErrorCode::InvalidArgument, "chevmap", "diagonal entries do not sum to zero");
  // e[k] after processing a prefix; e[0] = 1 is handled implicitly.
  std::vector<std::optional<LaurentWindow>> e(diag.size() + 1);
  for (const auto& x : diag)
    for (std::size_t k = diag.size(); k >= 1; --k) {
      std::optional<LaurentWindow> term;
      if (k == 1)
        term = x;
      else if (e[k - 1])
        term = *e[k - 1] * x;
      if (term) e[k] = e[k] ? *e[k] + *term : *term;
    }
  std::vector<LaurentWindow> out;
  for (std::size_t k = 2; k <= diag.size(); ++k) {
    auto v = *e[k];
    if (window) {
      LaurentWindow t = v.truncated(window->second);
      for (const auto& [ex, c] : t.terms())
        if (ex < window->first)
          fail(ErrorCode::PrecisionError, "chevmap", "output has terms below the requested window");
      out.push_back(t);
    } else {
      out.push_back(v);
    }
  }
  return out;
}

/// Working cyclotomic conductor for square roots of leading coefficients.
inline constexpr std::int64_t kSqrtConductor = 8;

namespace detail {

inline bool first_nonzero_positive(const CycloNumber& c) {
  for (const auto& x : c.coeffs())
    if (x != 0) return x > 0;
  return false;
}

/// Square root of a leading coefficient inside Q(zeta_L), L = lcm(8, conductor).
inline CycloNumber leading_sqrt(const CycloNumber& c) {
  const std::int64_t L = lcm64(kSqrtConductor, c.conductor());
  std::optional<CycloNumber> root;
  if (auto sr = c.as_scaled_root_of_unity()) {
    auto [r, k] = *sr;
    CycloNumber cand = sqrt_rational(r) * zeta(2 * c.conductor(), k);
    auto big = lcm64(cand.conductor(), L);
    auto lifted = cand.lift(big);
    root = lifted.retract(L);
  }
  if (!root || !(*root * *root == c))
    fail(ErrorCode::FieldExtensionRequired, "chevmap",
         "leading coefficient " + c.str() + " has no square root in Q(zeta_" + std::to_string(L) + ")");
  return first_nonzero_positive(*root) ? *root : -*root;
}

}  // namespace detail

/// s with s^2 = a on the guaranteed window [v/2, hi - v/2).
inline LaurentWindow sqrt_series(const LaurentWindow& a) {
  auto v = a.valuation();
  if (!v)
    fail(ErrorCode::PrecisionError, "chevmap", "series is zero to the known precision");
  if (!is_integral(*v / 2) && is_integral(*v))
    fail(ErrorCode::NoSqrtInF, "chevmap", "valuation " + to_string(*v) + " is odd");
  const Rational half = *v / 2;
  const Rational step = Rational(1) / Rational(a.denominator());
  const Rational hi = a.hi() - half;
  LaurentWindow s(half, hi);
  std::vector<CycloNumber> g;
  const std::int64_t count = to_int64(floor((a.hi() - *v) / step));
  for (std::int64_t k = 0; k < count; ++k) {
    CycloNumber u = a.coeff(*v + step * k);
    if (k == 0) {
      g.push_back(detail::leading_sqrt(u));
    } else {
      for (std::int64_t j = 1; j < k; ++j) u = u - g[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
      g.push_back(u / (CycloNumber(2) * g[0]));
    }
    s.set(half + step * k, g.back());
  }
  return s;
}

struct Sl2Stratum {
  enum class Kind { GZero, SplitToral, NonsplitToral };
  Kind kind = Kind::GZero;
  std::int64_t n = 0;  // depth parameter, 0 for G-zero

  friend bool operator==(const Sl2Stratum&, const Sl2Stratum&) = default;
};

inline std::string to_string(Sl2Stratum::Kind k) {
  switch (k) {
    case Sl2Stratum::Kind::GZero: return "G-zero";
    case Sl2Stratum::Kind::SplitToral: return "split-toral";
    case Sl2Stratum::Kind::NonsplitToral: return "nonsplit-toral";
  }
  return "unknown";
}

inline Sl2Stratum sl2_stratum(const LaurentWindow& a) {
  for (const auto& [e, c] : a.terms())
    require(is_integral(e), ErrorCode::InvalidArgument, "chevmap", "sl2 invariant must have integral exponents");
  auto v = a.valuation();
  if (!v) {
    require(a.hi() >= -1, ErrorCode::PrecisionError, "chevmap",
            "window ends at " + to_string(a.hi()) + ", valuation undetermined");
    return {};
  }
  if (*v >= -1) return {};
  auto val = to_int64(*v);
  if (val % 2 == 0) return {Sl2Stratum::Kind::SplitToral, -val / 2};
  return {Sl2Stratum::Kind::NonsplitToral, (-val - 1) / 2};
}

/// Lift of a to a tail: with s^2 = -a, the diagonal diag(s, -s) dt pairs
/// with the coroot as 2 s t dt/t, so the coefficient of t^e in s lands in
/// exponent q = -(e + 1). Odd valuations use s = sqrt(-t a) t^{-1/2} on the
/// nonsplit torus.
struct Sl2Lift {
  TorusClass torus;
  Tail lambda;
};

inline Sl2Lift sl2_lift(const WeylGroup& W, const LaurentWindow& a) {
  require(W.root_datum().type().str() == "A1", ErrorCode::InvalidArgument, "chevmap", "sl2 lift needs type A1");
  auto v = a.valuation();
  if (!v || *v >= -1) {
    require(v || a.hi() >= -1, ErrorCode::PrecisionError, "chevmap", "valuation undetermined");
    return {split_torus(W), Tail(1, 1)};
  }
  bool odd = !is_integral(*v / 2);
  LaurentWindow s = odd ? sqrt_series(-a.shifted(Rational(1))).shifted(Rational(-1, 2)) : sqrt_series(-a);
  require(s.hi() > -1, ErrorCode::PrecisionError, "chevmap", "square root not known through exponent -1");
  const std::int64_t m = odd ? 2 : 1;
  Tail lam(1, m);
  for (const auto& [e, c] : s.terms()) {
    Rational q = -(e + 1);
    if (q >= 0) lam.add(q, Covector{c * CycloNumber(2)});
  }
  auto tc = odd ? *regular_class_of_order(W, 2) : split_torus(W);
  return {tc, lam};
}

/// Stratum read off the general classification of the lift.
inline Sl2Stratum stratum_via_classify(const WeylGroup& W, const Sl2Lift& lift) {
  auto d = classify(W, lift.torus, lift.lambda);
  if (d.lambda.is_zero() || d.levi.size() == static_cast<std::size_t>(W.root_datum().num_roots())) return {};
  require(d.levi.empty(), ErrorCode::InternalInvariantViolation, "chevmap", "sl2 toral lift with nontrivial Levi");
  Rational top = *d.lambda.depth();
  if (d.torus.is_split()) return {Sl2Stratum::Kind::SplitToral, to_int64(top + 1)};
  return {Sl2Stratum::Kind::NonsplitToral, to_int64(top + Rational(1, 2))};
}

inline bool sl2_crosscheck(const WeylGroup& W, const LaurentWindow& a) {
  return stratum_via_classify(W, sl2_lift(W, a)) == sl2_stratum(a);
}

struct Sl2GridPoint {
  LaurentWindow a;
  std::string label;
};

/// Valuations -8..2, leading coefficients +-1, +-2, multiplied by one of
/// 1, 1 + t, 1 + 2t - t^2, 1 + t^3; plus the zero series. Windows [-10, 4).
inline std::vector<Sl2GridPoint> sl2_default_grid() {
  const std::vector<std::vector<int>> patterns{{1}, {1, 1}, {1, 2, -1}, {1, 0, 0, 1}};
  const std::vector<std::string> names{"1", "1+t", "1+2t-t^2", "1+t^3"};
  std::vector<Sl2GridPoint> out;
  for (int v = -8; v <= 2; ++v)
    for (int lead : {1, -1, 2, -2})
      for (std::size_t p = 0; p < patterns.size(); ++p) {
        LaurentWindow a(Rational(-10), Rational(4));
        for (std::size_t k = 0; k < patterns[p].size(); ++k)
          a.set(Rational(v + static_cast<int>(k)), CycloNumber(lead * patterns[p][k]));
        out.push_back({a, std::to_string(lead) + "*t^" + std::to_string(v) + "*(" + names[p] + ")"});
      }
  out.push_back({LaurentWindow(Rational(-10), Rational(4)), "0"});
  return out;
}

struct Sl2GridReport {
  std::size_t points = 0;
  std::size_t split = 0, nonsplit = 0, g_zero = 0;
  std::vector<std::string> violations;
};

inline Sl2GridReport verify_sl2_grid(const WeylGroup& W, const std::vector<Sl2GridPoint>& grid) {
  Sl2GridReport r;
  for (const auto& p : grid) {
    ++r.points;
    try {
      auto s = sl2_stratum(p.a);
      switch (s.kind) {
        case Sl2Stratum::Kind::GZero: ++r.g_zero; break;
        case Sl2Stratum::Kind::SplitToral: ++r.split; break;
        case Sl2Stratum::Kind::NonsplitToral: ++r.nonsplit; break;
      }
      auto via = stratum_via_classify(W, sl2_lift(W, p.a));
      if (!(via == s))
        r.violations.push_back(p.label + ": table gives " + to_string(s.kind) + " " + std::to_string(s.n) +
                               ", classification gives " + to_string(via.kind) + " " + std::to_string(via.n));
    } catch (const Error& e) {
      r.violations.push_back(p.label + ": " + e.what());
    }
  }
  return r;
}

}  // namespace polarium
