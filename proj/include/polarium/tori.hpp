#pragma once

// Tame maximal tori presented by finite-order Weyl elements, their
// eigenspace decompositions of t0*, and Springer regularity.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polarium/linalg.hpp"
#include "polarium/tails.hpp"

namespace polarium {

struct TorusClass {
  std::int64_t m = 1;
  int w = 0;  // index into the Weyl group
  WeylElement element;
  /// eigenspaces[i] is a basis of the zeta_m^i eigenspace of w on t0*.
  std::vector<std::vector<Covector>> eigenspaces;

  const std::vector<Covector>& eigenspace(std::int64_t i) const {
    return eigenspaces[static_cast<std::size_t>(((i % m) + m) % m)];
  }
  bool is_split() const { return element.is_identity(); }
  bool is_elliptic() const { return eigenspace(0).empty(); }
};

inline TorusClass make_torus_class(const WeylGroup& W, int w, std::int64_t m) {
  require(m >= 1, ErrorCode::InvalidArgument, "tori", "period m must be >= 1");
  require(w >= 0 && static_cast<std::size_t>(w) < W.size(), ErrorCode::InvalidArgument, "tori",
          "Weyl element index out of range");
  const auto& e = W[static_cast<std::size_t>(w)];
  IntMatrix p = IntMatrix::identity(e.matrix.n);
  for (std::int64_t k = 0; k < m; ++k) p = p * e.matrix;
  require(p == IntMatrix::identity(e.matrix.n), ErrorCode::InvalidArgument, "tori",
          "w^m is not the identity for m=" + std::to_string(m));
  TorusClass tc{m, w, e, {}};
  const std::size_t n = e.matrix.n;
  for (std::int64_t i = 0; i < m; ++i) {
    auto z = zeta(m, i);
    auto a = linalg::zeros<CycloNumber>(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] = CycloNumber(Rational(e.matrix(r, c)));
        if (r == c) a[r][c] = a[r][c] - z;
      }
    tc.eigenspaces.push_back(linalg::nullspace(a, n));
  }
  return tc;
}

inline TorusClass split_torus(const WeylGroup& W) { return make_torus_class(W, 0, 1); }

inline bool is_regular_vector(const RootDatum& rd, const Covector& v) {
  for (int a = 0; a < rd.num_positive(); ++a)
    if (pair(rd.coroot_vector(a), v).is_zero()) return false;
  return true;
}

/// Deterministic regular vector in span(basis): sum_k c^k b_k for c = 0, 1, 2, ...
/// Each coroot restricts to a polynomial in c of degree < dim, so the search
/// is bounded.
inline std::optional<Covector> find_regular_vector(const RootDatum& rd, const std::vector<Covector>& basis) {
  if (basis.empty()) {
    if (rd.num_roots() == 0) return Covector(static_cast<std::size_t>(rd.rank()));
    return std::nullopt;
  }
  const std::int64_t tries = static_cast<std::int64_t>(rd.num_positive()) * static_cast<std::int64_t>(basis.size()) + 2;
  for (std::int64_t c = 0; c < tries; ++c) {
    Covector v(basis[0].size());
    CycloNumber power(1);
    for (const auto& b : basis) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] + power * b[i];
      power = power * CycloNumber(Rational(c));
    }
    if (is_regular_vector(rd, v)) return v;
  }
  return std::nullopt;
}

inline bool is_springer_regular(const RootDatum& rd, const TorusClass& tc) {
  const auto& e1 = tc.eigenspace(1);
  for (int a = 0; a < rd.num_positive(); ++a) {
    bool hit = false;
    for (const auto& v : e1)
      if (!pair(rd.coroot_vector(a), v).is_zero()) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

/// One representative (the smallest element index) per conjugacy class,
/// with m equal to its order.
inline std::vector<TorusClass> list_torus_classes(const WeylGroup& W) {
  std::vector<TorusClass> out;
  for (const auto& cls : W.conjugacy_classes()) {
    int rep = cls.front();
    out.push_back(make_torus_class(W, rep, W.order_of(rep)));
  }
  return out;
}

struct RegularNumbers {
  std::set<std::int64_t> regular;
  std::set<std::int64_t> elliptic;
};

inline RegularNumbers regular_numbers(const WeylGroup& W) {
  RegularNumbers out;
  for (const auto& tc : list_torus_classes(W)) {
    if (!is_springer_regular(W.root_datum(), tc)) continue;
    out.regular.insert(tc.m);
    if (tc.is_elliptic()) out.elliptic.insert(tc.m);
  }
  return out;
}

/// First class (in enumeration order) of order m that is Springer regular.
inline std::optional<TorusClass> regular_class_of_order(const WeylGroup& W, std::int64_t m) {
  for (auto& tc : list_torus_classes(W))
    if (tc.m == m && is_springer_regular(W.root_datum(), tc)) return tc;
  return std::nullopt;
}

/// Order of a Coxeter element (lcm over simple factors).
inline std::int64_t coxeter_number(const RootDatum& rd) {
  std::int64_t h = 0;
  for (const auto& c : rd.type().components) {
    std::int64_t hc = 0;
    switch (c.letter) {
      case 'A': hc = c.rank + 1; break;
      case 'B':
      case 'C': hc = 2 * c.rank; break;
      case 'D': hc = 2 * c.rank - 2; break;
      case 'G': hc = 6; break;
      default: break;
    }
    if (hc > 0) h = h == 0 ? hc : std::lcm(h, hc);
  }
  return h;
}

}  // namespace polarium
