#pragma once

// Independent brute-force checks shared by the unit and acceptance suites.

#include <cstdint>
#include <random>
#include <vector>

#include "polarium/polarium.hpp"

namespace oracle {

using namespace polarium;

/// Springer regularity by sampling: 20 random integer combinations of an
/// eigenspace basis; regular iff some sample avoids every coroot hyperplane.
inline bool random_vector_regular(const RootDatum& rd, const TorusClass& tc, std::uint64_t seed = 17) {
  const auto& basis = tc.eigenspace(1);
  if (basis.empty()) return rd.num_roots() == 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-1000, 1000);
  for (int s = 0; s < 20; ++s) {
    Covector v(static_cast<std::size_t>(rd.rank()));
    for (const auto& b : basis) {
      CycloNumber c(Rational(coef(rng)));
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] + c * b[i];
    }
    bool ok = true;
    for (int a = 0; a < rd.num_roots() && ok; ++a) ok = !pair(rd.coroot_vector(a), v).is_zero();
    if (ok) return true;
  }
  return false;
}

/// Number of conjugacy classes by full conjugation (every u, not generators).
inline std::size_t conjugacy_class_count(const WeylGroup& W) {
  std::vector<int> label(W.size(), -1);
  int next = 0;
  for (std::size_t x = 0; x < W.size(); ++x) {
    if (label[x] >= 0) continue;
    for (std::size_t u = 0; u < W.size(); ++u) {
      int ui = static_cast<int>(u);
      label[static_cast<std::size_t>(W.compose(W.compose(ui, static_cast<int>(x)), W.inverse(ui)))] = next;
    }
    ++next;
  }
  return static_cast<std::size_t>(next);
}

/// Exhaustive check that a subgroup equals the group generated by the
/// reflections it contains.
inline bool generated_by_reflections(const WeylGroup& W, const Stabilizer& s) {
  return W.generated_subgroup(s.reflections) == s.elements;
}

}  // namespace oracle
