// Acceptance gate: one PASS/FAIL line per criterion with its runtime and
// time limit. Exit status is nonzero if any criterion fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polarium/polarium.hpp"

using namespace polarium;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> body;
};

WeylGroup group(const char* t) { return WeylGroup::generate(RootDatum::build(t)); }

Covector cov(std::initializer_list<int> xs) {
  Covector c;
  for (int x : xs) c.emplace_back(Rational(x));
  return c;
}

std::vector<Rational> rho_over(int rank, int m) { return std::vector<Rational>(static_cast<std::size_t>(rank), Rational(1, m)); }

Tail sl3_worked_tail() {
  Tail lam(2, 1);
  lam.add(Rational(2), cov({3, 0}));
  lam.add(Rational(1), cov({-1, 2}));
  return lam;
}

/// Valuation read straight from the coefficient map, independent of the
/// stratum code.
std::optional<std::int64_t> raw_valuation(const LaurentWindow& a) {
  std::optional<std::int64_t> v;
  for (const auto& [e, c] : a.terms())
    if (!c.is_zero() && (!v || to_int64(e) < *v)) v = to_int64(e);
  return v;
}

struct GoldenDatum {
  const char* name;
  std::function<LoopContext()> make;
};

std::vector<GoldenDatum> golden_set() {
  return {
      {"sl2 depth-1 toral",
       [] {
         auto W = group("A1");
         return LoopContext::build(W, classify(W, split_torus(W), Tail::single(Rational(1), cov({1}), 1)), rho_over(1, 2));
       }},
      {"sl2 epipelagic m=2",
       [] {
         auto W = group("A1");
         return LoopContext::build(W, epipelagic_datum(W, 2));
       }},
      {"sl3 epipelagic m=3",
       [] {
         auto W = group("A2");
         return LoopContext::build(W, epipelagic_datum(W, 3));
       }},
      {"sl3 two-break",
       [] {
         auto W = group("A2");
         return LoopContext::build(W, classify(W, split_torus(W), sl3_worked_tail()), rho_over(2, 2));
       }},
  };
}

bool same_span(const std::vector<CVec>& a, const std::vector<CVec>& b, std::size_t dim) {
  linalg::SpanTracker<CycloNumber> sa(dim), sb(dim);
  for (const auto& v : a) sa.insert(v);
  for (const auto& v : b) sb.insert(v);
  if (sa.dim() != sb.dim()) return false;
  for (const auto& v : b)
    if (!sa.contains(v)) return false;
  return true;
}

CVec unit(int n, int i, int j, int sign = 1) {
  CVec v(static_cast<std::size_t>(n * n));
  v[static_cast<std::size_t>(i * n + j)] = CycloNumber(sign);
  return v;
}

/// sl2 at x = rho/2, lambda of depth 1: torus in degrees >= 0, e in degrees
/// >= 1/2, f in degrees >= 3/2.
std::vector<CVec> sl2_toral_lattice(const Rational& d) {
  std::vector<CVec> out;
  if (is_integral(d)) {
    if (d >= 0) {
      auto h = unit(2, 0, 0);
      h[3] = CycloNumber(-1);
      out.push_back(h);
    }
  } else {
    if (d >= Rational(1, 2)) out.push_back(unit(2, 0, 1));
    if (d >= Rational(3, 2)) out.push_back(unit(2, 1, 0));
  }
  return out;
}

Outcome c1_table() {
  Outcome o;
  std::set<Sl2Stratum::Kind> seen;
  for (const auto& p : sl2_default_grid()) {
    auto s = sl2_stratum(p.a);
    seen.insert(s.kind);
    auto v = raw_valuation(p.a);
    Sl2Stratum expect;
    if (v && *v <= -2 && *v % 2 == 0) expect = {Sl2Stratum::Kind::SplitToral, -*v / 2};
    if (v && *v <= -3 && *v % 2 != 0) expect = {Sl2Stratum::Kind::NonsplitToral, (-*v - 1) / 2};
    o.expect(s == expect, p.label + " assigned " + to_string(s.kind));
  }
  o.expect(seen.size() == 3, "not all three strata occur on the grid");
  return o;
}

Outcome c2_crosscheck() {
  Outcome o;
  auto W = group("A1");
  auto grid = sl2_default_grid();
  auto r = verify_sl2_grid(W, grid);
  o.expect(r.points == grid.size(), "grid not fully processed");
  o.expect(r.violations.empty(), r.violations.empty() ? "" : r.violations.front());
  return o;
}

std::atomic<std::size_t> ladders_checked{0};

Outcome c3_partition() {
  Outcome o;
  for (const char* t : {"A1", "A2"}) {
    auto W = group(t);
    PartitionConfig cfg;
    cfg.samples = 500;
    cfg.seed = 2024;
    cfg.extra_check = [&W](const PolarDatum& d) -> std::optional<std::string> {
      YuLadder y;
      y.breaks = breaks(W.root_datum(), d);
      y.levels = levi_ladder(W, d, y.breaks);
      y.components = decompose_lambda(d, y.breaks);
      for (const auto& r : y.breaks) y.half_depths.push_back(r / 2);
      ++ladders_checked;
      return ladder_violation(W, d, y);
    };
    auto r = partition_check(W, cfg);
    o.expect(r.samples == 500, std::string(t) + ": sample count");
    o.expect(r.violations.empty(),
             r.violations.empty() ? "" : std::string(t) + ": " + r.violations[0].check + ": " + r.violations[0].detail);
    o.expect(r.translates_checked == r.samples, std::string(t) + ": not every sample had a translate check");
    o.expect(r.distinct_pairs_checked > 0, std::string(t) + ": no distinct-depth pairs compared");
    // Coverage of split and twisted tori, replaying the sample draws.
    std::set<std::int64_t> orders;
    auto classes = list_torus_classes(W);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      auto rng = sample_rng(cfg.seed, s);
      orders.insert(draw_sample(W, classes, rng, cfg).torus.m);
    }
    std::set<std::int64_t> want = std::string(t) == "A1" ? std::set<std::int64_t>{1, 2} : std::set<std::int64_t>{1, 2, 3};
    o.expect(orders == want, std::string(t) + ": torus orders sampled do not cover split and twisted classes");
  }
  return o;
}

Outcome c4_stabilizers() {
  Outcome o;
  for (const char* t : {"A1", "A2", "B2"}) {
    auto W = group(t);
    auto classes = list_torus_classes(W);
    PartitionConfig cfg;
    for (std::size_t s = 0; s < 200; ++s) {
      auto rng = sample_rng(99, s);
      std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
      const auto& tc = classes[pick(rng)];
      auto lam = sample_tail(W.root_datum(), tc, rng, 3);
      auto st = stabilizer(W, lam);
      o.expect(oracle::generated_by_reflections(W, st), std::string(t) + ": stabilizer not generated by reflections");
    }
  }
  return o;
}

Outcome c5_regular() {
  Outcome o;
  for (const char* t : {"A1", "A2", "A3", "B2", "G2"}) {
    auto W = group(t);
    const auto& rd = W.root_datum();
    for (const auto& tc : list_torus_classes(W))
      o.expect(is_springer_regular(rd, tc) == oracle::random_vector_regular(rd, tc),
               std::string(t) + ": regularity disagrees with random vectors for a class of order " + std::to_string(tc.m));
    auto h = rd.num_roots() / rd.semisimple_rank();
    o.expect(regular_numbers(W).regular.count(h) == 1, std::string(t) + ": Coxeter number not regular");
  }
  return o;
}

Outcome c6_ladders() {
  Outcome o;
  auto W = group("A2");
  auto d = classify(W, split_torus(W), sl3_worked_tail());
  auto y = yu_ladder(W, d);
  o.expect(y.breaks == std::vector<Rational>{1, 2}, "breaks differ from [1, 2]");
  o.expect(y.levels.size() == 3 && y.levels[0].empty() && y.levels[1] == RootSet{1, 4} &&
               y.levels[2] == W.root_datum().all_roots(),
           "levels differ from {} < {+-alpha2} < Phi");
  Tail sum(2, 1);
  for (const auto& c : y.components) sum = sum + c;
  o.expect(sum == d.lambda, "components do not reassemble lambda");
  o.expect(ladders_checked.load() >= 1000, "sampled ladders from the partition run missing");
  return o;
}

Outcome c7_lattices() {
  Outcome o;
  for (const auto& g : golden_set()) {
    auto ctx = g.make();
    auto J = ctx.build_j_lattice();
    auto closure = ctx.closure_violation(J);
    o.expect(!closure, std::string(g.name) + ": " + closure.value_or(""));
    auto psi = ctx.psi_violation(J);
    o.expect(!psi, std::string(g.name) + ": " + psi.value_or(""));
    for (int level = 0; level <= ctx.top_level(); ++level) {
      auto bad = ctx.lowered(J, level);
      o.expect(ctx.closure_violation(bad) || ctx.psi_violation(bad),
               std::string(g.name) + ": lowered threshold at level " + std::to_string(level) + " passes both checks");
    }
    const auto [lo, hi] = ctx.window();
    const auto dim = static_cast<std::size_t>(ctx.n() * ctx.n());
    for (const auto& d : ctx.degrees(lo, hi)) {
      auto piece = ctx.j_piece(J, d);
      if (std::string(g.name) == "sl2 depth-1 toral")
        o.expect(same_span(piece, sl2_toral_lattice(d), dim), "sl2 toral lattice differs at degree " + to_string(d));
      if (std::string(g.name).find("epipelagic") != std::string::npos)
        o.expect(same_span(piece, d > 0 ? ctx.grading().basis(d) : std::vector<CVec>{}, dim),
                 std::string(g.name) + ": lattice differs from the positive part at degree " + to_string(d));
    }
  }
  return o;
}

Outcome c8_symplectic() {
  Outcome o;
  std::size_t forms = 0;
  for (const auto& g : golden_set()) {
    auto ctx = g.make();
    const int n = ctx.n();
    for (int j = 1; j <= ctx.top_level(); ++j) {
      if (!ctx.has_symplectic_level(j)) continue;
      ++forms;
      auto f = ctx.symplectic_form(j);
      const auto& lam = ctx.realized().at(2 * f.degree);
      // Recompute every entry through explicit loop matrices.
      for (std::size_t a = 0; a < f.basis.size(); ++a)
        for (std::size_t b = 0; b < f.basis.size(); ++b) {
          auto la = LoopMatrix::from_graded(ctx.grading(), f.degree, f.basis[a]);
          auto lb = LoopMatrix::from_graded(ctx.grading(), f.degree, f.basis[b]);
          auto br = commutator(la, lb);
          auto lam_loop = LoopMatrix::from_graded(ctx.grading(), -2 * f.degree, lam);
          CycloNumber res;
          for (const auto& [e1, m1] : lam_loop.terms)
            for (const auto& [e2, m2] : br.terms)
              if (e1 + e2 == 0) res = res + trace_pair(n, m1, m2);
          o.expect(res == f.matrix[a][b], std::string(g.name) + ": form entry disagrees with residue pairing");
        }
      o.expect(is_alternating(f.matrix), std::string(g.name) + ": form not alternating");
      o.expect(!linalg::determinant(f.matrix).is_zero(), std::string(g.name) + ": form degenerate");
      auto L = lagrangian(f.matrix);
      o.expect(L.lagrangian.size() * 2 == f.basis.size(), std::string(g.name) + ": Lagrangian not half dimensional");
      for (const auto& u : L.lagrangian)
        for (const auto& v : L.lagrangian)
          o.expect(form_value(f.matrix, u, v).is_zero(), std::string(g.name) + ": Lagrangian not isotropic");
    }
  }
  o.expect(forms >= 3, "expected at least three nonzero middle pieces across the golden set");
  return o;
}

Outcome c9_moveability() {
  Outcome o;
  for (const auto& g : golden_set()) {
    auto ctx = g.make();
    for (char v : {'J', 'K'}) {
      auto rep = ctx.moveability(v);
      o.expect(!rep.entries.empty(), std::string(g.name) + ": empty rank table");
      o.expect(rep.full_rank(), std::string(g.name) + ": rank defect in the " + std::string(1, v) + "-variant");
    }
  }
  auto W = group("A2");
  PolarDatum bad{split_torus(W), {}, Tail::single(Rational(1), cov({1, 0}), 1)};
  auto ctx = LoopContext::build_unchecked(W, bad);
  o.expect(!ctx.moveability('K').full_rank(), "negative control shows no rank defect");
  return o;
}

Outcome c10_epipelagic() {
  Outcome o;
  auto rd = RootDatum::build("A1");
  auto d0 = mp_graded_piece(rd, {Rational(1, 2)}, Rational(0)).size();
  auto d1 = mp_graded_piece(rd, {Rational(1, 2)}, Rational(1, 2)).size();
  o.expect(d0 == 1 && d1 == 2, "sl2 graded dimensions are " + std::to_string(d0) + ", " + std::to_string(d1));
  auto check = [&](const char* t, int m, bool expect) {
    auto W = group(t);
    auto r = eigen_regular_check(W, m);
    o.expect(r.agree() && r.grid_found == expect,
             std::string(t) + " m=" + std::to_string(m) + ": grid " + (r.grid_found ? "found" : "missed") +
                 ", regular numbers say " + (r.springer ? "regular" : "not regular"));
  };
  check("A1", 2, true);
  check("A2", 2, true);
  check("A2", 3, true);
  check("A2", 5, false);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "SL2 partition table", 5, c1_table},
      {2, "SL2 cross-check through classification", 30, c2_crosscheck},
      {3, "partition properties A1, A2 (500 samples each)", 120, c3_partition},
      {4, "stabilizers generated by reflections", 120, c4_stabilizers},
      {5, "regular numbers and Coxeter numbers", 60, c5_regular},
      {6, "Yu ladders", 60, c6_ladders},
      {7, "J-lattice closure, psi and negative controls", 60, c7_lattices},
      {8, "symplectic forms and Lagrangians", 60, c8_symplectic},
      {9, "moveability ranks", 120, c9_moveability},
      {10, "epipelagic grading and eigen-regularity", 60, c10_epipelagic},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= c.limit_s;
    bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %-48s %8.3f s (limit %g s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_s, out.ok ? "" : "  ", out.ok ? (in_time ? "" : "  over time limit") : out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
