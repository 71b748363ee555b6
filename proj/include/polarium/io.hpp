#pragma once

// JSON encoding of the library types. Rationals travel as strings "p/q";
// decoders also accept plain integers. Malformed documents raise
// invalid-argument errors attributed to module "io".

#include <json.hpp>

#include <string>
#include <vector>

#include "polarium/chevmap.hpp"
#include "polarium/looplie.hpp"
#include "polarium/yuseq.hpp"

namespace polarium::io {

using nlohmann::json;

[[noreturn]] inline void bad(const std::string& msg) { fail(ErrorCode::InvalidArgument, "io", msg); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

inline json encode(const Rational& r) { return to_string(r); }

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  bad("expected a rational as string or integer, got " + j.dump());
}

inline std::int64_t int_from(const json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    auto r = parse_rational(j.get<std::string>());
    if (is_integral(r)) return to_int64(r);
  }
  bad(std::string(what) + " must be an integer");
}

// --- field elements -------------------------------------------------------

inline json encode(const CycloNumber& c) {
  json coeffs = json::array();
  for (const auto& x : c.coeffs()) coeffs.push_back(to_string(x));
  return {{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

inline CycloNumber cyclo_from(const json& j) {
  if (j.is_string() || j.is_number_integer()) return CycloNumber(rational_from(j));
  auto L = int_from(field(j, "conductor"), "conductor");
  const auto& cs = field(j, "coeffs");
  if (!cs.is_array()) bad("coeffs must be an array");
  std::vector<Rational> v;
  for (const auto& x : cs) v.push_back(rational_from(x));
  return CycloNumber::from_coeffs(L, std::move(v));
}

inline json encode(const Covector& c) {
  json a = json::array();
  for (const auto& x : c) a.push_back(encode(x));
  return a;
}

inline Covector covector_from(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) bad("covector must be an array of length " + std::to_string(dim));
  Covector c;
  for (const auto& x : j) c.push_back(cyclo_from(x));
  return c;
}

// --- root data --------------------------------------------------------------

inline CartanType type_from(const json& j) {
  if (j.is_string()) return CartanType::parse(j.get<std::string>());
  if (!j.is_array()) bad("type must be a string like \"A2\" or a list of [letter, rank] pairs");
  CartanType t;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string()) bad("malformed type component " + c.dump());
    auto name = c[0].get<std::string>();
    char letter = name == "torus" ? 'T' : (name.size() == 1 ? static_cast<char>(std::toupper(name[0])) : '?');
    if (letter == '?') bad("unknown type letter '" + name + "'");
    t.components.push_back({letter, static_cast<int>(int_from(c[1], "rank"))});
  }
  return CartanType::parse(t.str());
}

inline json encode(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.n; ++k) r.push_back(m(i, k));
    rows.push_back(r);
  }
  return rows;
}

inline IntMatrix matrix_from(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) bad("matrix must have " + std::to_string(n) + " rows");
  IntMatrix m{n, std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) bad("matrix rows must have length " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) m(i, k) = int_from(j[i][k], "matrix entry");
  }
  return m;
}

inline json encode(const RootSet& s) { return json(s); }

inline RootSet rootset_from(const RootDatum& rd, const json& j) {
  if (!j.is_array()) bad("root set must be an array of root indices");
  RootSet s;
  for (const auto& x : j) {
    auto a = int_from(x, "root index");
    if (a < 0 || a >= rd.num_roots()) bad("root index " + std::to_string(a) + " out of range");
    s.push_back(static_cast<int>(a));
  }
  return rd.normalized(s);
}

// --- tails and tori --------------------------------------------------------

inline json encode(const Tail& t) {
  json terms = json::array();
  for (const auto& [q, c] : t.terms()) terms.push_back({{"q", to_string(q)}, {"coeff", encode(c)}});
  return {{"m", t.m()}, {"terms", terms}};
}

/// Tail in fundamental-weight coordinates, or with "basis": "diagonal" as
/// trace-zero diagonal entries (type A only).
inline Tail tail_from(const RootDatum& rd, const json& j) {
  const std::int64_t m = j.contains("m") ? int_from(j["m"], "m") : 1;
  if (m < 1) bad("tail conductor must be positive");
  bool diagonal = j.contains("basis") && j["basis"] == "diagonal";
  if (diagonal && (rd.type().components.size() != 1 || rd.type().components[0].letter != 'A'))
    bad("diagonal basis is available for type A only");
  const auto dim = static_cast<std::size_t>(rd.rank());
  Tail t(rd.rank(), m);
  const auto& terms = field(j, "terms");
  if (!terms.is_array()) bad("terms must be an array");
  for (const auto& term : terms) {
    Rational q = rational_from(field(term, "q"));
    if (q < 0) bad("tail exponents must be >= 0");
    if (!is_integral(q * m)) bad("exponent " + to_string(q) + " does not have denominator dividing " + std::to_string(m));
    Covector c;
    if (diagonal) {
      auto mu = covector_from(field(term, "coeff"), dim + 1);
      CycloNumber tr;
      for (const auto& x : mu) tr = tr + x;
      if (!tr.is_zero()) bad("diagonal entries must sum to zero");
      for (std::size_t k = 0; k < dim; ++k) c.push_back(mu[k] - mu[k + 1]);
    } else {
      c = covector_from(field(term, "coeff"), dim);
    }
    t.add(q, c);
  }
  return t;
}

inline json encode(const WeylGroup& W, const TorusClass& tc) {
  (void)W;
  return {{"m", tc.m}, {"w", encode(tc.element.matrix)}};
}

/// {"m":..,"w":matrix} or {"m":..,"word":[simple indices]}; absent means split.
inline TorusClass torus_from(const WeylGroup& W, const json& j) {
  const auto& rd = W.root_datum();
  int w = 0;
  if (j.contains("w")) {
    w = W.index_of(matrix_from(j["w"], static_cast<std::size_t>(rd.rank())));
    if (w < 0) bad("torus matrix is not a Weyl group element");
  } else if (j.contains("word")) {
    if (!j["word"].is_array()) bad("word must be an array of simple reflection indices");
    for (const auto& x : j["word"]) {
      auto s = int_from(x, "simple reflection index");
      if (s < 0 || s >= static_cast<std::int64_t>(W.simple_reflections().size())) bad("simple reflection index out of range");
      w = W.compose(w, W.simple_reflections()[static_cast<std::size_t>(s)]);
    }
  }
  std::int64_t m = j.contains("m") ? int_from(j["m"], "m") : W.order_of(w);
  return make_torus_class(W, w, m);
}

inline json encode(const WeylGroup& W, const PolarDatum& d) {
  return {{"type", W.root_datum().type().str()},
          {"torus", encode(W, d.torus)},
          {"levi", encode(d.levi)},
          {"lambda", encode(d.lambda)}};
}

inline PolarDatum datum_from(const WeylGroup& W, const json& j) {
  const auto& rd = W.root_datum();
  auto tc = j.contains("torus") ? torus_from(W, j["torus"]) : split_torus(W);
  auto lam = tail_from(rd, field(j, "lambda"));
  auto levi = rootset_from(rd, field(j, "levi"));
  return {tc, levi, lam.lifted(lcm64(lam.m(), tc.m))};
}

// --- ladders and lattices ---------------------------------------------------

inline json encode_rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

inline json encode(const YuLadder& y) {
  json levels = json::array(), comps = json::array();
  for (const auto& l : y.levels) levels.push_back(encode(l));
  for (const auto& c : y.components) comps.push_back(encode(c));
  return {{"breaks", encode_rationals(y.breaks)},
          {"half_depths", encode_rationals(y.half_depths)},
          {"levels", levels},
          {"components", comps}};
}

/// Homogeneous element of the given degree as its nonzero entries.
inline json encode_element(const MPGrading& g, const Rational& degree, const CVec& y) {
  json entries = json::array();
  for (int i = 0; i < g.n(); ++i)
    for (int k = 0; k < g.n(); ++k) {
      const auto& c = y[g.idx(i, k)];
      if (c.is_zero()) continue;
      entries.push_back({{"row", i}, {"col", k}, {"t", g.t_power(i, k, degree).str()}, {"coeff", encode(c)}});
    }
  return {{"degree", to_string(degree)}, {"entries", entries}};
}

inline json encode(const LoopContext& ctx, const JLattice& J) {
  json th = json::array(), lag = json::array();
  for (const auto& t : J.thresholds) th.push_back({{"level", t.level}, {"q", to_string(t.q)}, {"inclusive", t.inclusive}});
  for (const auto& c : J.lagrangians) {
    json basis = json::array(), partners = json::array();
    for (const auto& b : c.basis) basis.push_back(encode_element(ctx.grading(), c.degree, b));
    for (const auto& f : c.partners) partners.push_back(encode_element(ctx.grading(), c.degree, f));
    lag.push_back({{"level", c.level}, {"degree", to_string(c.degree)}, {"basis", basis}, {"partners", partners}});
  }
  return {{"thresholds", th}, {"lagrangians", lag}};
}

inline json encode(const MoveabilityReport& r) {
  json rows = json::array();
  for (const auto& e : r.entries)
    rows.push_back({{"level", e.level},
                    {"degree", to_string(e.degree)},
                    {"rows", e.rows},
                    {"cols", e.cols},
                    {"rank", e.rank},
                    {"full", e.full()}});
  return {{"variant", std::string(1, r.variant)}, {"full_rank", r.full_rank()}, {"degrees", rows}};
}

inline std::vector<Rational> point_from(const json& j) {
  if (!j.is_array()) bad("apartment point must be an array of simple-root values");
  std::vector<Rational> x;
  for (const auto& v : j) x.push_back(rational_from(v));
  return x;
}

// --- series and reports -----------------------------------------------------

inline json encode(const LaurentWindow& w) {
  json terms = json::array();
  for (const auto& [q, c] : w.terms()) terms.push_back({{"q", to_string(q)}, {"coeff", encode(c)}});
  return {{"lo", to_string(w.lo())}, {"hi", to_string(w.hi())}, {"terms", terms}};
}

inline LaurentWindow window_from(const json& j) {
  LaurentWindow w(rational_from(field(j, "lo")), rational_from(field(j, "hi")));
  const auto& terms = field(j, "terms");
  if (!terms.is_array()) bad("terms must be an array");
  for (const auto& t : terms) w.set(rational_from(field(t, "q")), cyclo_from(field(t, "coeff")));
  return w;
}

inline json encode(const Sl2Stratum& s) {
  json j{{"kind", to_string(s.kind)}};
  if (s.kind != Sl2Stratum::Kind::GZero) j["n"] = s.n;
  return j;
}

inline json encode(const PartitionReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"sample", x.sample}, {"check", x.check}, {"detail", x.detail}});
  return {{"samples", r.samples},
          {"translates_checked", r.translates_checked},
          {"distinct_pairs_checked", r.distinct_pairs_checked},
          {"g_zero", r.g_zero},
          {"toral", r.toral},
          {"other", r.other},
          {"violations", v}};
}

inline json encode(const Sl2GridReport& r) {
  return {{"points", r.points},
          {"split_toral", r.split},
          {"nonsplit_toral", r.nonsplit},
          {"g_zero", r.g_zero},
          {"violations", r.violations}};
}

inline json encode(const RegularNumbers& r) {
  return {{"regular", std::vector<std::int64_t>(r.regular.begin(), r.regular.end())},
          {"elliptic", std::vector<std::int64_t>(r.elliptic.begin(), r.elliptic.end())}};
}

}  // namespace polarium::io
