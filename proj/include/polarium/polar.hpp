#pragma once

// Polar data (w, Psi, lambda): classification of tails into strata,
// stabilizers, conjugacy, and the epipelagic/homogeneous constructors.

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polarium/parallel.hpp"
#include "polarium/tori.hpp"

namespace polarium {

struct PolarDatum {
  TorusClass torus;
  RootSet levi;
  Tail lambda;
};

inline RootSet vanishing_roots(const RootDatum& rd, const Tail& lambda) {
  RootSet out;
  for (int a = 0; a < rd.num_roots(); ++a)
    if (pair_coroot(rd, lambda, a).empty()) out.push_back(a);
  return out;
}

inline bool is_g_regular(const RootDatum& rd, const Tail& lambda, const RootSet& psi) {
  std::vector<char> in(static_cast<std::size_t>(rd.num_roots()), 0);
  for (int a : psi) in[static_cast<std::size_t>(a)] = 1;
  for (int a = 0; a < rd.num_roots(); ++a)
    if (!in[static_cast<std::size_t>(a)] && pair_coroot(rd, lambda, a).empty()) return false;
  return true;
}

/// Returns a description of the first violated invariant, if any.
inline std::optional<std::string> datum_violation(const WeylGroup& W, const PolarDatum& d) {
  const auto& rd = W.root_datum();
  if (!rd.is_q_closed(d.levi)) return "levi subset is not Q-closed";
  if (!W.stabilizes(d.torus.w, d.levi)) return "levi subset is not w-stable";
  if (!is_equivariant(d.lambda, d.torus.element, d.torus.m)) return "lambda is not w-equivariant";
  std::vector<char> in(static_cast<std::size_t>(rd.num_roots()), 0);
  for (int a : d.levi) in[static_cast<std::size_t>(a)] = 1;
  for (int a = 0; a < rd.num_roots(); ++a) {
    bool empty = pair_coroot(rd, d.lambda, a).empty();
    if (in[static_cast<std::size_t>(a)] && !empty)
      return "lambda is not central in M: root " + std::to_string(a) + " pairs nontrivially";
    if (!in[static_cast<std::size_t>(a)] && empty) return "lambda is not G-regular at root " + std::to_string(a);
  }
  return std::nullopt;
}

inline PolarDatum classify(const WeylGroup& W, const TorusClass& tc, const Tail& lambda) {
  const auto& rd = W.root_datum();
  require(lambda.dim() == rd.rank(), ErrorCode::InvalidArgument, "polar", "tail rank does not match root datum");
  require(is_equivariant(lambda, tc.element, tc.m), ErrorCode::InvalidArgument, "polar",
          "tail is not equivariant for the given torus class");
  PolarDatum d{tc, vanishing_roots(rd, lambda), lambda.lifted(std::lcm(lambda.m(), tc.m))};
  if (!rd.is_q_closed(d.levi))
    fail(ErrorCode::InternalInvariantViolation, "polar", "vanishing root set is not Q-closed");
  if (!W.stabilizes(tc.w, d.levi))
    fail(ErrorCode::InternalInvariantViolation, "polar", "vanishing root set is not w-stable");
  return d;
}

struct Stabilizer {
  std::vector<int> elements;
  std::vector<int> reflections;  // element indices of reflections in the stabilizer
};

inline Stabilizer stabilizer(const WeylGroup& W, const Tail& lambda) {
  Stabilizer s;
  for (std::size_t u = 0; u < W.size(); ++u)
    if (weyl_act(W[u], lambda) == lambda) s.elements.push_back(static_cast<int>(u));
  const auto& rd = W.root_datum();
  for (int a = 0; a < rd.num_positive(); ++a) {
    int r = W.reflection(a);
    if (std::binary_search(s.elements.begin(), s.elements.end(), r)) s.reflections.push_back(r);
  }
  std::sort(s.reflections.begin(), s.reflections.end());
  s.reflections.erase(std::unique(s.reflections.begin(), s.reflections.end()), s.reflections.end());
  return s;
}

/// Subgroup generated by the reflections in the roots of psi.
inline std::vector<int> reflection_subgroup(const WeylGroup& W, const RootSet& psi) {
  std::vector<int> gens;
  for (int a : psi) gens.push_back(W.reflection(a));
  return W.generated_subgroup(gens);
}

/// Searches u in W with u(Psi1) = Psi2, u lambda1 = lambda2 and
/// u w1 u^{-1} in W_{Psi2} w2. For toral data W_{Psi2} is trivial and the
/// last condition is u w1 u^{-1} = w2.
inline bool conjugate_oracle(const WeylGroup& W, const PolarDatum& d1, const PolarDatum& d2) {
  if (d1.levi.size() != d2.levi.size()) return false;
  auto wpsi = reflection_subgroup(W, d2.levi);
  int w2inv = W.inverse(d2.torus.w);
  for (std::size_t u = 0; u < W.size(); ++u) {
    int ui = static_cast<int>(u);
    if (W.image(ui, d1.levi) != d2.levi) continue;
    int x = W.compose(W.compose(ui, d1.torus.w), W.inverse(ui));
    if (!std::binary_search(wpsi.begin(), wpsi.end(), W.compose(x, w2inv))) continue;
    if (weyl_act(W[u], d1.lambda) == d2.lambda) return true;
  }
  return false;
}

inline PolarDatum epipelagic_datum(const WeylGroup& W, std::int64_t m) {
  auto tc = regular_class_of_order(W, m);
  require(tc.has_value(), ErrorCode::InvalidArgument, "polar",
          std::to_string(m) + " is not a regular number for " + W.root_datum().type().str());
  auto v = find_regular_vector(W.root_datum(), tc->eigenspace(1));
  if (!v) fail(ErrorCode::InternalInvariantViolation, "polar", "regular class without regular vector");
  return classify(W, *tc, Tail::single(Rational(1, m), *v, m));
}

inline PolarDatum homogeneous_datum(const WeylGroup& W, std::int64_t m, std::int64_t i) {
  require(m >= 1 && i >= 1 && std::gcd(i, m) == 1, ErrorCode::InvalidArgument, "polar",
          "homogeneous datum needs i >= 1 coprime to m (m=" + std::to_string(m) + ", i=" + std::to_string(i) + ")");
  auto tc = regular_class_of_order(W, m);
  require(tc.has_value(), ErrorCode::InvalidArgument, "polar",
          "no regular vector: " + std::to_string(m) + " is not a regular number");
  auto v = find_regular_vector(W.root_datum(), tc->eigenspace(i));
  require(v.has_value(), ErrorCode::InvalidArgument, "polar", "eigenspace contains no regular vector");
  return classify(W, *tc, Tail::single(Rational(i, m), *v, m));
}

// ---------------------------------------------------------------------------
// Sampled verification of the partition statement.

struct PartitionConfig {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  bool zero_only = false;
  int max_terms = 3;
  /// Extra per-datum check; returns a description on failure.
  std::function<std::optional<std::string>(const PolarDatum&)> extra_check;
};

struct Violation {
  std::size_t sample;
  std::string check;
  std::string detail;
};

struct PartitionReport {
  std::size_t samples = 0;
  std::size_t translates_checked = 0;
  std::size_t distinct_pairs_checked = 0;
  std::size_t g_zero = 0;
  std::size_t toral = 0;
  std::size_t other = 0;
  std::vector<Violation> violations;
};

/// A random w-equivariant tail: a few terms q = k/m with coefficients small
/// integer combinations of an eigenspace basis.
template <class Rng>
Tail sample_tail(const RootDatum& rd, const TorusClass& tc, Rng& rng, int max_terms = 3) {
  Tail t(rd.rank(), tc.m);
  std::uniform_int_distribution<int> nterms(0, max_terms), kd(0, static_cast<int>(2 * tc.m)), coef(-1, 2),
      zero(0, 2);
  int n = nterms(rng);
  for (int j = 0; j < n; ++j) {
    int k = kd(rng);
    const auto& basis = tc.eigenspace(k);
    if (basis.empty()) continue;
    Covector c(static_cast<std::size_t>(rd.rank()));
    for (const auto& b : basis) {
      int s = zero(rng) == 0 ? 0 : coef(rng);
      if (s == 0) continue;
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + CycloNumber(Rational(s)) * b[i];
    }
    t.add(Rational(k, tc.m), c);
  }
  return t;
}

inline std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Draws the sample with the given index: a torus class, a tail and its datum.
inline PolarDatum draw_sample(const WeylGroup& W, const std::vector<TorusClass>& classes, std::mt19937_64& rng,
                              const PartitionConfig& cfg) {
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  const auto& tc = classes[pick(rng)];
  Tail t = cfg.zero_only ? Tail(W.root_datum().rank(), tc.m) : sample_tail(W.root_datum(), tc, rng, cfg.max_terms);
  return classify(W, tc, t);
}

inline PartitionReport partition_check(const WeylGroup& W, const PartitionConfig& cfg) {
  const auto& rd = W.root_datum();
  auto classes = list_torus_classes(W);
  struct Slot {
    std::vector<Violation> v;
    int kind = 0;
    bool translated = false, distinct = false;
  };
  std::vector<Slot> slots(cfg.samples);
  parallel_for(cfg.samples, [&](std::size_t s) {
    auto& slot = slots[s];
    auto rng = sample_rng(cfg.seed, s);
    auto report = [&](const std::string& check, const std::string& detail) { slot.v.push_back({s, check, detail}); };
    PolarDatum d;
    try {
      d = draw_sample(W, classes, rng, cfg);
    } catch (const Error& e) {
      report("classify-total", e.what());
      return;
    }
    slot.kind = d.levi.size() == static_cast<std::size_t>(rd.num_roots()) ? 1 : d.levi.empty() ? 2 : 3;
    if (auto why = datum_violation(W, d)) report("datum-invariants", *why);
    try {
      auto again = classify(W, d.torus, d.lambda);
      if (again.levi != d.levi) report("idempotence", "re-classification changed the Levi subset");
    } catch (const Error& e) {
      report("idempotence", e.what());
    }
    if (cfg.extra_check)
      if (auto why = cfg.extra_check(d)) report("extra", *why);

    std::uniform_int_distribution<std::size_t> pu(0, W.size() - 1);
    int u = static_cast<int>(pu(rng));
    try {
      int w2 = W.compose(W.compose(u, d.torus.w), W.inverse(u));
      auto tc2 = make_torus_class(W, w2, d.torus.m);
      auto d2 = classify(W, tc2, weyl_act(W[static_cast<std::size_t>(u)], d.lambda));
      if (d2.levi != W.image(u, d.levi)) report("translate-levi", "classify does not commute with W");
      if (!conjugate_oracle(W, d, d2)) report("translate-equivalent", "W-translate not recognized as conjugate");
      slot.translated = true;
    } catch (const Error& e) {
      report("translate", e.what());
    }

    try {
      auto other = draw_sample(W, classes, rng, cfg);
      if (depth_multiset(rd, d.lambda) != depth_multiset(rd, other.lambda)) {
        slot.distinct = true;
        if (conjugate_oracle(W, d, other)) report("disjointness", "data with distinct depth multisets are conjugate");
      }
    } catch (const Error& e) {
      report("disjointness", e.what());
    }
  });
  PartitionReport rep;
  rep.samples = cfg.samples;
  for (auto& slot : slots) {
    if (slot.kind == 1) ++rep.g_zero;
    if (slot.kind == 2) ++rep.toral;
    if (slot.kind == 3) ++rep.other;
    rep.translates_checked += slot.translated;
    rep.distinct_pairs_checked += slot.distinct;
    for (auto& v : slot.v) rep.violations.push_back(std::move(v));
  }
  return rep;
}

}  // namespace polarium
