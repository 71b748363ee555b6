#pragma once

// Depth breaks, the twisted Levi ladder and the decomposition of lambda
// into depth bands.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polarium/polar.hpp"

namespace polarium {

struct YuLadder {
  std::vector<Rational> breaks;        // r_0 < ... < r_{d-1}
  std::vector<RootSet> levels;         // Psi^(0) ⊂ ... ⊂ Psi^(d) = Phi
  std::vector<Tail> components;        // lambda^(0..d)
  std::vector<Rational> half_depths;   // s_j = r_j / 2

  std::size_t d() const { return breaks.size(); }
};

/// Depth of the pairing with each root; none when it vanishes.
inline std::vector<std::optional<Rational>> root_depths(const RootDatum& rd, const Tail& lambda) {
  std::vector<std::optional<Rational>> out;
  for (int a = 0; a < rd.num_roots(); ++a) out.push_back(pair_coroot(rd, lambda, a).depth());
  return out;
}

inline std::vector<Rational> breaks(const RootDatum& rd, const PolarDatum& d) {
  std::set<Rational> s;
  std::vector<char> in(static_cast<std::size_t>(rd.num_roots()), 0);
  for (int a : d.levi) in[static_cast<std::size_t>(a)] = 1;
  auto depths = root_depths(rd, d.lambda);
  for (int a = 0; a < rd.num_roots(); ++a)
    if (!in[static_cast<std::size_t>(a)] && depths[static_cast<std::size_t>(a)])
      s.insert(*depths[static_cast<std::size_t>(a)]);
  return {s.begin(), s.end()};
}

/// Psi^(0) = Psi, Psi^(j) = Psi ∪ {depth <= r_{j-1}}, Psi^(d) = Phi. Roots
/// outside Psi whose pairing vanishes (possible only for unchecked data)
/// are placed in every level above 0.
inline std::vector<RootSet> levi_ladder(const WeylGroup& W, const PolarDatum& d, const std::vector<Rational>& br) {
  const auto& rd = W.root_datum();
  auto depths = root_depths(rd, d.lambda);
  std::vector<RootSet> levels{d.levi};
  for (std::size_t j = 1; j <= br.size(); ++j) {
    RootSet s = d.levi;
    for (int a = 0; a < rd.num_roots(); ++a) {
      const auto& r = depths[static_cast<std::size_t>(a)];
      if (j == br.size() || !r || *r <= br[j - 1]) s.push_back(a);
    }
    s = rd.normalized(s);
    levels.push_back(s);
  }
  for (const auto& s : levels) {
    if (!rd.is_q_closed(s)) fail(ErrorCode::InternalInvariantViolation, "yuseq", "ladder level is not Q-closed");
    if (!W.stabilizes(d.torus.w, s)) fail(ErrorCode::InternalInvariantViolation, "yuseq", "ladder level is not w-stable");
  }
  return levels;
}

/// lambda^(0) on [0, r_0], lambda^(j) on (r_{j-1}, r_j], lambda^(d) on (r_{d-1}, inf).
inline std::vector<Tail> decompose_lambda(const PolarDatum& d, const std::vector<Rational>& br) {
  std::vector<Tail> out;
  const std::size_t n = br.size();
  if (n == 0) return {d.lambda};
  for (std::size_t j = 0; j <= n; ++j) {
    std::optional<Rational> lo, hi;
    if (j > 0) lo = br[j - 1];
    if (j < n) hi = br[j];
    out.push_back(d.lambda.band(lo, hi));
  }
  return out;
}

inline std::optional<std::string> ladder_violation(const WeylGroup& W, const PolarDatum& d, const YuLadder& y) {
  const auto& rd = W.root_datum();
  if (y.levels.size() != y.breaks.size() + 1 || y.components.size() != y.breaks.size() + 1)
    return "ladder has wrong number of levels";
  for (std::size_t j = 1; j < y.breaks.size(); ++j)
    if (!(y.breaks[j - 1] < y.breaks[j])) return "breaks not strictly increasing";
  if (y.levels.front() != d.levi) return "level 0 differs from the Levi subset";
  if (y.levels.back() != rd.all_roots()) return "top level is not the full root system";
  for (std::size_t j = 1; j < y.levels.size(); ++j)
    if (y.levels[j].size() <= y.levels[j - 1].size() ||
        !std::includes(y.levels[j].begin(), y.levels[j].end(), y.levels[j - 1].begin(), y.levels[j - 1].end()))
      return "levels are not strictly nested at " + std::to_string(j);
  Tail sum(d.lambda.dim(), d.lambda.m());
  for (const auto& c : y.components) sum = sum + c;
  if (!(sum == d.lambda)) return "components do not reassemble lambda";
  for (std::size_t j = 0; j < y.levels.size(); ++j) {
    RootSet cent;
    for (int a = 0; a < rd.num_roots(); ++a) {
      bool all = true;
      for (std::size_t k = j; k < y.components.size() && all; ++k)
        all = pair_coroot(rd, y.components[k], a).empty();
      if (all) cent.push_back(a);
    }
    if (cent != y.levels[j]) return "centralizer identity fails at level " + std::to_string(j);
  }
  return std::nullopt;
}

inline YuLadder yu_ladder(const WeylGroup& W, const PolarDatum& d) {
  const auto& rd = W.root_datum();
  YuLadder y;
  y.breaks = breaks(rd, d);
  y.levels = levi_ladder(W, d, y.breaks);
  y.components = decompose_lambda(d, y.breaks);
  for (const auto& r : y.breaks) y.half_depths.push_back(r / 2);
  if (auto why = ladder_violation(W, d, y)) fail(ErrorCode::InternalInvariantViolation, "yuseq", *why);
  return y;
}

}  // namespace polarium
