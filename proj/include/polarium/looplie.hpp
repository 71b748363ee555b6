#pragma once

// Loop Lie algebras of type A in the trace-zero matrix realization, graded
// by a rational apartment point x. A homogeneous element of degree delta is
// stored as its n x n coefficient matrix Y; entry (i, j) carries the power
// t^{delta - alpha_ij(x)}, so products of homogeneous elements are plain
// matrix products with degrees adding, and the residue-trace pairing of
// degrees delta and -delta is tr(Y Z).

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarium/linalg.hpp"
#include "polarium/yuseq.hpp"

namespace polarium {

using CVec = linalg::Vec<CycloNumber>;  // flattened n x n coefficient matrix
using CMat = linalg::Mat<CycloNumber>;

/// Index bookkeeping for sl_n: root index <-> (i, j) with root e_i - e_j.
class SlnModel {
 public:
  static SlnModel from(const RootDatum& rd) {
    const auto& comps = rd.type().components;
    if (comps.size() != 1 || comps[0].letter != 'A')
      fail(ErrorCode::UnsupportedFeature, "looplie",
           "matrix realization is implemented for simple type A only, got " + rd.type().str());
    SlnModel s;
    s.n_ = comps[0].rank + 1;
    s.ij_.resize(static_cast<std::size_t>(rd.num_roots()));
    for (int a = 0; a < rd.num_roots(); ++a) {
      const auto& c = rd.root(a);
      int first = -1, last = -1;
      for (int k = 0; k < static_cast<int>(c.size()); ++k)
        if (c[static_cast<std::size_t>(k)] != 0) {
          if (first < 0) first = k;
          last = k;
        }
      auto p = rd.is_positive(a) ? std::make_pair(first, last + 1) : std::make_pair(last + 1, first);
      s.ij_[static_cast<std::size_t>(a)] = p;
      s.root_[p] = a;
    }
    return s;
  }

  int n() const { return n_; }
  std::pair<int, int> ij(int root) const { return ij_[static_cast<std::size_t>(root)]; }
  int root_of(int i, int j) const { return root_.at({i, j}); }

  /// Permutation sigma of {0..n-1} with w(e_i - e_j) = e_sigma(i) - e_sigma(j).
  std::vector<int> permutation(const WeylElement& w) const {
    std::vector<int> sigma(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      int j = i == 0 ? 1 : 0;
      sigma[static_cast<std::size_t>(i)] = ij(w.root_permutation[static_cast<std::size_t>(root_of(i, j))]).first;
    }
    return sigma;
  }

  /// Trace-zero diagonal (mu_0..mu_{n-1}) of a covector in fundamental weights.
  std::vector<CycloNumber> diagonal(const Covector& c) const {
    std::vector<CycloNumber> mu(static_cast<std::size_t>(n_));
    for (int k = 0; k + 1 < n_; ++k) mu[static_cast<std::size_t>(k + 1)] = mu[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
    CycloNumber mean;
    for (const auto& x : mu) mean = mean + x;
    mean = mean / CycloNumber(n_);
    for (auto& x : mu) x = x - mean;
    return mu;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> ij_;
  std::map<std::pair<int, int>, int> root_;
};

/// Moy-Prasad grading at x, given by the values x_k = alpha_k(x) on simple roots.
class MPGrading {
 public:
  MPGrading(int n, std::vector<Rational> x) : n_(n), x_(std::move(x)) {
    require(static_cast<int>(x_.size()) == n - 1, ErrorCode::InvalidArgument, "looplie",
            "apartment point needs " + std::to_string(n - 1) + " simple-root values");
    p_.assign(static_cast<std::size_t>(n), Rational(0));
    Integer d = 1;
    for (int k = 0; k + 1 < n; ++k) {
      p_[static_cast<std::size_t>(k + 1)] = p_[static_cast<std::size_t>(k)] - x_[static_cast<std::size_t>(k)];
      d = boost::multiprecision::lcm(d, den(x_[static_cast<std::size_t>(k)]));
    }
    quantum_ = Rational(1) / Rational(d);
  }

  static MPGrading rho_over(int n, std::int64_t m) {
    return MPGrading(n, std::vector<Rational>(static_cast<std::size_t>(n - 1), Rational(1, m)));
  }

  int n() const { return n_; }
  const std::vector<Rational>& x() const { return x_; }
  /// alpha_ij(x) for the root e_i - e_j.
  Rational value(int i, int j) const { return p_[static_cast<std::size_t>(i)] - p_[static_cast<std::size_t>(j)]; }
  /// All degrees are integer multiples of this.
  const Rational& quantum() const { return quantum_; }
  bool on_lattice(const Rational& delta) const { return is_integral(delta / quantum_); }
  bool allowed(int i, int j, const Rational& delta) const { return is_integral(delta - value(i, j)); }
  Integer t_power(int i, int j, const Rational& delta) const { return num(delta - value(i, j)); }

  /// Basis of the degree-delta piece: E_ij for allowed off-diagonal entries
  /// (row-major), then H_k = E_kk - E_{k+1,k+1} when delta is an integer.
  std::vector<CVec> basis(const Rational& delta) const {
    std::vector<CVec> out;
    const auto nn = static_cast<std::size_t>(n_ * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && allowed(i, j, delta)) {
          CVec v(nn);
          v[idx(i, j)] = CycloNumber(1);
          out.push_back(std::move(v));
        }
    if (is_integral(delta))
      for (int k = 0; k + 1 < n_; ++k) {
        CVec v(nn);
        v[idx(k, k)] = CycloNumber(1);
        v[idx(k + 1, k + 1)] = CycloNumber(-1);
        out.push_back(std::move(v));
      }
    return out;
  }

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }

 private:
  int n_;
  std::vector<Rational> x_;
  std::vector<Rational> p_;
  Rational quantum_;
};

struct GradedGenerator {
  int root = -1;        // -1 for a torus generator
  int torus_index = -1; // simple coroot index for torus generators
  Integer exponent;     // power of t
};

inline std::vector<GradedGenerator> mp_graded_piece(const RootDatum& rd, const std::vector<Rational>& x,
                                                    const Rational& degree) {
  auto model = SlnModel::from(rd);
  MPGrading g(model.n(), x);
  std::vector<GradedGenerator> out;
  for (int a = 0; a < rd.num_roots(); ++a) {
    auto [i, j] = model.ij(a);
    if (g.allowed(i, j, degree)) out.push_back({a, -1, g.t_power(i, j, degree)});
  }
  if (is_integral(degree))
    for (int k = 0; k < rd.rank(); ++k) out.push_back({-1, k, num(degree)});
  return out;
}

/// Root assignment of g = V^(0) + ... + V^(d): V^(0) holds Psi^(0) (and the
/// torus), V^(j) holds Psi^(j) minus Psi^(j-1).
inline std::vector<RootSet> vj_split(const YuLadder& y) {
  std::vector<RootSet> out;
  for (std::size_t j = 0; j < y.levels.size(); ++j) {
    if (j == 0) {
      out.push_back(y.levels[0]);
      continue;
    }
    RootSet diff;
    std::set_difference(y.levels[j].begin(), y.levels[j].end(), y.levels[j - 1].begin(), y.levels[j - 1].end(),
                        std::back_inserter(diff));
    out.push_back(std::move(diff));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient-matrix algebra.

inline CVec mat_mul(int n, const CVec& a, const CVec& b) {
  CVec c(a.size());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const auto& x = a[static_cast<std::size_t>(i * n + k)];
      if (x.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const auto& y = b[static_cast<std::size_t>(k * n + j)];
        if (!y.is_zero()) c[static_cast<std::size_t>(i * n + j)] = c[static_cast<std::size_t>(i * n + j)] + x * y;
      }
    }
  return c;
}

inline CVec bracket(int n, const CVec& a, const CVec& b) {
  auto ab = mat_mul(n, a, b), ba = mat_mul(n, b, a);
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = ab[i] - ba[i];
  return ab;
}

/// tr(A B).
inline CycloNumber trace_pair(int n, const CVec& a, const CVec& b) {
  CycloNumber s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& x = a[static_cast<std::size_t>(i * n + j)];
      const auto& y = b[static_cast<std::size_t>(j * n + i)];
      if (!x.is_zero() && !y.is_zero()) s = s + x * y;
    }
  return s;
}

inline CVec combine(const std::vector<CVec>& basis, const CVec& coeffs) {
  CVec out(basis.empty() ? 0 : basis[0].size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (coeffs[b].is_zero()) continue;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!basis[b][i].is_zero()) out[i] = out[i] + coeffs[b] * basis[b][i];
  }
  return out;
}

/// Basis of {sum c_b basis_b : rows . c = 0}.
inline std::vector<CVec> constrained(const std::vector<CVec>& basis, const CMat& rows) {
  if (basis.empty()) return {};
  if (rows.empty()) return basis;
  std::vector<CVec> out;
  for (const auto& c : linalg::nullspace(rows, basis.size())) out.push_back(combine(basis, c));
  return out;
}

/// Explicit loop matrix: t-exponent -> coefficient matrix. Used to check the
/// graded bookkeeping against honest Laurent-polynomial arithmetic.
struct LoopMatrix {
  int n = 0;
  std::map<Integer, CVec> terms;

  static LoopMatrix from_graded(const MPGrading& g, const Rational& delta, const CVec& y) {
    LoopMatrix l{g.n(), {}};
    for (int i = 0; i < g.n(); ++i)
      for (int j = 0; j < g.n(); ++j) {
        const auto& c = y[g.idx(i, j)];
        if (c.is_zero()) continue;
        require(g.allowed(i, j, delta), ErrorCode::InvalidArgument, "looplie", "entry not allowed in this degree");
        auto& m = l.terms[g.t_power(i, j, delta)];
        if (m.empty()) m.assign(static_cast<std::size_t>(g.n() * g.n()), CycloNumber());
        m[g.idx(i, j)] = c;
      }
    return l;
  }

  friend LoopMatrix commutator(const LoopMatrix& a, const LoopMatrix& b) {
    LoopMatrix out{a.n, {}};
    for (const auto& [e1, m1] : a.terms)
      for (const auto& [e2, m2] : b.terms) {
        auto c = bracket(a.n, m1, m2);
        auto& slot = out.terms[e1 + e2];
        if (slot.empty()) slot.assign(c.size(), CycloNumber());
        for (std::size_t i = 0; i < c.size(); ++i) slot[i] = slot[i] + c[i];
      }
    for (auto it = out.terms.begin(); it != out.terms.end();)
      it = linalg::is_zero_vec(it->second) ? out.terms.erase(it) : std::next(it);
    return out;
  }

  friend bool operator==(const LoopMatrix& a, const LoopMatrix& b) { return a.terms == b.terms; }
};

// ---------------------------------------------------------------------------
// Symplectic forms and Lagrangians.

struct SymplecticForm {
  int level = 0;
  Rational degree;
  std::vector<CVec> basis;  // basis of V^(j)_{=s}
  CMat matrix;              // omega(basis_a, basis_b)
};

inline bool is_alternating(const CMat& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i][i].is_zero()) return false;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!(m[i][j] == -m[j][i])) return false;
  }
  return true;
}

struct LagrangianSplit {
  std::vector<CVec> lagrangian;  // coordinates in the form's basis
  std::vector<CVec> partners;    // omega(l_i, f_k) = delta_ik
};

inline CycloNumber form_value(const CMat& w, const CVec& a, const CVec& b) {
  CycloNumber s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero() && !w[i][j].is_zero()) s = s + a[i] * w[i][j] * b[j];
  }
  return s;
}

/// Greedy symplectic basis: take the first remaining vector e, the first
/// partner f with omega(e, f) != 0, normalize, and project the rest off
/// span{e, f}. Returns span{e_k} and the partners f_k.
inline LagrangianSplit lagrangian(const CMat& w) {
  const std::size_t dim = w.size();
  require(dim % 2 == 0, ErrorCode::InternalInvariantViolation, "looplie", "symplectic space has odd dimension");
  std::vector<CVec> pool;
  for (std::size_t i = 0; i < dim; ++i) {
    CVec v(dim);
    v[i] = CycloNumber(1);
    pool.push_back(std::move(v));
  }
  LagrangianSplit out;
  while (!pool.empty()) {
    CVec e = pool.front();
    pool.erase(pool.begin());
    if (linalg::is_zero_vec(e)) continue;
    std::size_t k = 0;
    while (k < pool.size() && form_value(w, e, pool[k]).is_zero()) ++k;
    if (k == pool.size()) fail(ErrorCode::InternalInvariantViolation, "looplie", "form is degenerate");
    CVec f = pool[k];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    auto inv = CycloNumber(1) / form_value(w, e, f);
    for (auto& x : f) x = x * inv;
    for (auto& u : pool) {
      auto uf = form_value(w, u, f), ue = form_value(w, u, e);
      for (std::size_t i = 0; i < dim; ++i) u[i] = u[i] - uf * e[i] + ue * f[i];
    }
    out.lagrangian.push_back(std::move(e));
    out.partners.push_back(std::move(f));
  }
  for (const auto& a : out.lagrangian)
    for (const auto& b : out.lagrangian)
      if (!form_value(w, a, b).is_zero())
        fail(ErrorCode::InternalInvariantViolation, "looplie", "Lagrangian is not isotropic");
  if (out.lagrangian.size() * 2 != dim)
    fail(ErrorCode::InternalInvariantViolation, "looplie", "Lagrangian does not have half dimension");
  return out;
}

// ---------------------------------------------------------------------------
// The datum realized in the loop algebra.

struct LevelThreshold {
  int level = 0;
  Rational q;
  bool inclusive = true;
};

struct LagrangianChoice {
  int level = 0;
  Rational degree;
  std::vector<CVec> basis;     // elements of V^(j)_{=s}
  std::vector<CVec> partners;
};

struct JLattice {
  std::vector<LevelThreshold> thresholds;
  std::vector<LagrangianChoice> lagrangians;
};

struct RankEntry {
  int level = 0;
  Rational degree;
  std::size_t rows = 0, cols = 0, rank = 0;
  bool full() const { return rank == rows && rank == cols; }
};

struct MoveabilityReport {
  char variant = 'J';
  std::vector<RankEntry> entries;
  bool full_rank() const {
    return std::all_of(entries.begin(), entries.end(), [](const RankEntry& e) { return e.full(); });
  }
};

class LoopContext {
 public:
  /// Realizes a checked polar datum. x defaults to 0 for split tori and
  /// rho^vee/m otherwise.
  static LoopContext build(const WeylGroup& W, const PolarDatum& d, std::optional<std::vector<Rational>> x = std::nullopt) {
    auto ctx = prepare(W, d, x);
    ctx.ladder_ = yu_ladder(W, ctx.datum_);
    ctx.split_route_ = ctx.datum_.torus.is_split();
    ctx.finish(true);
    return ctx;
  }

  /// Realizes a split datum as claimed, without validating G-regularity.
  /// Roots whose pairing vanishes although they lie outside the claimed Levi
  /// are placed in every level above 0. Used for negative controls.
  static LoopContext build_unchecked(const WeylGroup& W, const PolarDatum& d,
                                     std::optional<std::vector<Rational>> x = std::nullopt) {
    require(d.torus.is_split(), ErrorCode::InvalidArgument, "looplie", "unchecked data must use the split torus");
    auto ctx = prepare(W, d, x);
    auto& y = ctx.ladder_;
    y.breaks = breaks(W.root_datum(), ctx.datum_);
    y.levels = levi_ladder(W, ctx.datum_, y.breaks);
    y.components = decompose_lambda(ctx.datum_, y.breaks);
    for (const auto& r : y.breaks) y.half_depths.push_back(r / 2);
    ctx.split_route_ = true;
    ctx.finish(false);
    return ctx;
  }

  int n() const { return model_.n(); }
  const MPGrading& grading() const { return grading_; }
  const PolarDatum& datum() const { return datum_; }
  const YuLadder& ladder() const { return ladder_; }
  int conjugator() const { return conjugator_; }
  const std::map<Rational, CVec>& realized() const { return realized_; }
  int top_level() const { return static_cast<int>(ladder_.levels.size()) - 1; }
  std::pair<Rational, Rational> window() const { return window_; }
  void set_window(const Rational& lo, const Rational& hi) {
    require(lo < hi, ErrorCode::InvalidArgument, "looplie", "window must satisfy lo < hi");
    window_ = {lo, hi};
  }

  /// Degrees on the grading lattice within [lo, hi].
  std::vector<Rational> degrees(const Rational& lo, const Rational& hi) const {
    std::vector<Rational> out;
    const auto& qu = grading_.quantum();
    for (Rational d = qu * floor(lo / qu); d <= hi; d += qu)
      if (d >= lo) out.push_back(d);
    return out;
  }

  /// Basis of g^(j)_delta.
  const std::vector<CVec>& level_piece(int j, const Rational& delta) const {
    auto key = std::make_pair(j, delta);
    auto it = level_cache_.find(key);
    if (it != level_cache_.end()) return it->second;
    auto v = split_route_ ? level_by_roots(j, delta) : level_by_centralizer(j, delta);
    return level_cache_.emplace(key, std::move(v)).first->second;
  }

  /// Basis of V^(j)_delta: the trace-orthogonal of g^(j-1)_{-delta} in g^(j)_delta.
  const std::vector<CVec>& v_piece(int j, const Rational& delta) const {
    auto key = std::make_pair(j, delta);
    auto it = v_cache_.find(key);
    if (it != v_cache_.end()) return it->second;
    std::vector<CVec> v;
    if (!grading_.on_lattice(delta)) {
    } else if (j == 0) {
      v = level_piece(0, delta);
    } else {
      const auto& big = level_piece(j, delta);
      const auto& small = level_piece(j - 1, -delta);
      CMat rows;
      for (const auto& z : small) {
        linalg::Vec<CycloNumber> r;
        for (const auto& y : big) r.push_back(trace_pair(n(), y, z));
        rows.push_back(std::move(r));
      }
      v = constrained(big, rows);
    }
    return v_cache_.emplace(key, std::move(v)).first->second;
  }

  /// <lambda, Y> for a homogeneous element of degree delta.
  CycloNumber pair_lambda(const Rational& delta, const CVec& y) const {
    auto it = realized_.find(delta);
    if (it == realized_.end()) return CycloNumber();
    return trace_pair(n(), it->second, y);
  }

  /// Form (v, v') -> <lambda^(j-1), [v, v']> on V^(j)_{=s_{j-1}}.
  SymplecticForm symplectic_form(int j) const {
    require(j >= 1 && j <= top_level(), ErrorCode::InvalidArgument, "looplie", "symplectic level out of range");
    SymplecticForm f;
    f.level = j;
    f.degree = ladder_.half_depths[static_cast<std::size_t>(j - 1)];
    f.basis = v_piece(j, f.degree);
    require(!f.basis.empty(), ErrorCode::InvalidArgument, "looplie",
            "V at the half-depth " + to_string(f.degree) + " of level " + std::to_string(j) + " is zero");
    const Rational r = ladder_.breaks[static_cast<std::size_t>(j - 1)];
    const auto& comp = ladder_.components[static_cast<std::size_t>(j - 1)];
    CVec lam = comp.terms().count(r) ? realized_.at(r) : CVec(static_cast<std::size_t>(n() * n()));
    f.matrix = linalg::zeros<CycloNumber>(f.basis.size(), f.basis.size());
    for (std::size_t a = 0; a < f.basis.size(); ++a)
      for (std::size_t b = 0; b < f.basis.size(); ++b)
        f.matrix[a][b] = trace_pair(n(), lam, bracket(n(), f.basis[a], f.basis[b]));
    if (!is_alternating(f.matrix))
      fail(ErrorCode::InternalInvariantViolation, "looplie", "symplectic form is not alternating");
    if (linalg::determinant(f.matrix).is_zero())
      fail(ErrorCode::InternalInvariantViolation, "looplie", "symplectic form is degenerate");
    return f;
  }

  bool has_symplectic_level(int j) const {
    return j >= 1 && !v_piece(j, ladder_.half_depths[static_cast<std::size_t>(j - 1)]).empty();
  }

  JLattice build_j_lattice() const {
    JLattice J;
    J.thresholds.push_back({0, Rational(0), true});
    for (int j = 1; j <= top_level(); ++j) {
      const Rational s = ladder_.half_depths[static_cast<std::size_t>(j - 1)];
      if (!has_symplectic_level(j)) {
        J.thresholds.push_back({j, s, true});
        continue;
      }
      J.thresholds.push_back({j, s, false});
      auto form = symplectic_form(j);
      auto split = lagrangian(form.matrix);
      LagrangianChoice c{j, s, {}, {}};
      for (const auto& l : split.lagrangian) c.basis.push_back(combine(form.basis, l));
      for (const auto& f : split.partners) c.partners.push_back(combine(form.basis, f));
      J.lagrangians.push_back(std::move(c));
    }
    return J;
  }

  /// Basis of the degree-delta piece of the lattice.
  std::vector<CVec> j_piece(const JLattice& J, const Rational& delta) const {
    std::vector<CVec> out;
    for (const auto& th : J.thresholds) {
      if (delta > th.q || (delta == th.q && th.inclusive)) {
        const auto& v = v_piece(th.level, delta);
        out.insert(out.end(), v.begin(), v.end());
      } else if (delta == th.q) {
        for (const auto& c : J.lagrangians)
          if (c.level == th.level) out.insert(out.end(), c.basis.begin(), c.basis.end());
      }
    }
    return out;
  }

  /// First bracket [u, v] of lattice generators within the window that
  /// leaves the lattice, if any.
  std::optional<std::string> closure_violation(const JLattice& J) const {
    auto degs = degrees(window_.first, window_.second);
    std::map<Rational, std::vector<CVec>> pieces;
    for (const auto& d : degs) pieces[d] = j_piece(J, d);
    for (std::size_t a = 0; a < degs.size(); ++a)
      for (std::size_t b = a; b < degs.size(); ++b) {
        Rational sum = degs[a] + degs[b];
        if (sum > window_.second) break;
        const auto& pa = pieces[degs[a]];
        const auto& pb = pieces[degs[b]];
        if (pa.empty() || pb.empty()) continue;
        linalg::SpanTracker<CycloNumber> target(static_cast<std::size_t>(n() * n()));
        auto it = pieces.find(sum);
        for (const auto& v : it != pieces.end() ? it->second : j_piece(J, sum)) target.insert(v);
        for (const auto& u : pa)
          for (const auto& v : pb)
            if (!target.contains(bracket(n(), u, v)))
              return "bracket of degrees " + to_string(degs[a]) + " and " + to_string(degs[b]) + " leaves the lattice";
      }
    return std::nullopt;
  }

  /// First pair of lattice generators with <lambda, [u, v]> != 0, if any.
  std::optional<std::string> psi_violation(const JLattice& J) const {
    auto degs = degrees(window_.first, window_.second);
    std::map<Rational, std::vector<CVec>> pieces;
    for (const auto& d : degs) pieces[d] = j_piece(J, d);
    for (const auto& [q, lam] : realized_)
      for (const auto& d1 : degs) {
        Rational d2 = q - d1;
        if (d2 < d1 || !pieces.count(d2)) continue;
        for (const auto& u : pieces[d1])
          for (const auto& v : pieces[d2])
            if (!trace_pair(n(), lam, bracket(n(), u, v)).is_zero())
              return "lambda pairs nontrivially with the bracket of degrees " + to_string(d1) + " and " + to_string(d2);
      }
    return std::nullopt;
  }

  /// Copy of J with the threshold of one level lowered by one grading step:
  /// a Lagrangian is replaced by the whole middle piece, otherwise the
  /// next nonzero degree below the threshold is admitted.
  JLattice lowered(const JLattice& J, int level) const {
    JLattice out = J;
    auto& th = out.thresholds.at(static_cast<std::size_t>(level));
    bool had_lagrangian = false;
    for (auto it = out.lagrangians.begin(); it != out.lagrangians.end();)
      if (it->level == level) {
        had_lagrangian = true;
        it = out.lagrangians.erase(it);
      } else {
        ++it;
      }
    if (had_lagrangian) {
      th.inclusive = true;
      return out;
    }
    Rational d = th.q;
    if (grading_.on_lattice(d) && th.inclusive) d -= grading_.quantum();
    else d = grading_.quantum() * floor(d / grading_.quantum());
    const Rational stop = d - 4 - Rational(ladder_.breaks.empty() ? 0 : 1) * ladder_.breaks.back();
    while (d > stop && v_piece(level, d).empty()) d -= grading_.quantum();
    th.q = d;
    th.inclusive = true;
    return out;
  }

  MoveabilityReport moveability(char variant) const {
    require(variant == 'J' || variant == 'K', ErrorCode::InvalidArgument, "looplie", "variant must be J or K");
    MoveabilityReport rep;
    rep.variant = variant;
    JLattice J;
    if (variant == 'J') J = build_j_lattice();
    for (int j = 1; j <= top_level(); ++j) {
      const Rational r = ladder_.breaks[static_cast<std::size_t>(j - 1)];
      const Rational s = ladder_.half_depths[static_cast<std::size_t>(j - 1)];
      for (const auto& delta : degrees(variant == 'J' ? s : r, window_.second)) {
        std::vector<CVec> rows, cols;
        if (variant == 'K') {
          if (delta == r) continue;
          rows = v_piece(j, delta);
          cols = v_piece(j, r - delta);
        } else if (delta == s) {
          for (const auto& c : J.lagrangians)
            if (c.level == j) {
              rows = c.basis;
              cols = c.partners;
            }
        } else {
          rows = v_piece(j, delta);
          cols = v_piece(j, r - delta);
        }
        if (rows.empty() && cols.empty()) continue;
        CMat b = linalg::zeros<CycloNumber>(rows.size(), cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
          for (std::size_t c = 0; c < cols.size(); ++c) b[a][c] = pair_lambda(r, bracket(n(), rows[a], cols[c]));
        RankEntry e{j, delta, rows.size(), cols.size(), rows.empty() || cols.empty() ? 0 : linalg::rank(b)};
        rep.entries.push_back(e);
      }
    }
    return rep;
  }

  /// Independent computation of every level piece in the window through the
  /// other route (root spans vs. centralizers), plus the dimension count
  /// over a unit interval of degrees. Split data only.
  std::optional<std::string> cross_check_levels() const {
    const auto& rd = *rd_;
    for (int j = 0; j <= top_level(); ++j) {
      std::size_t total = 0;
      for (const auto& d : degrees(Rational(0), Rational(1) - grading_.quantum())) total += level_piece(j, d).size();
      std::size_t expect = static_cast<std::size_t>(rd.rank()) + ladder_.levels[static_cast<std::size_t>(j)].size();
      if (total != expect)
        return "level " + std::to_string(j) + " has dimension " + std::to_string(total) + ", expected " +
               std::to_string(expect);
      if (!split_route_) continue;
      for (const auto& d : degrees(window_.first, window_.second)) {
        auto a = level_by_roots(j, d), b = level_by_centralizer(j, d);
        linalg::SpanTracker<CycloNumber> sa(static_cast<std::size_t>(n() * n()));
        for (const auto& v : a) sa.insert(v);
        if (a.size() != b.size()) return "level routes disagree in dimension at degree " + to_string(d);
        for (const auto& v : b)
          if (!sa.contains(v)) return "level routes disagree at degree " + to_string(d);
      }
    }
    return std::nullopt;
  }

 private:
  static LoopContext prepare(const WeylGroup& W, const PolarDatum& d, std::optional<std::vector<Rational>> x) {
    const auto& rd = W.root_datum();
    LoopContext ctx(SlnModel::from(rd),
                    x ? MPGrading(rd.rank() + 1, *x)
                      : (d.torus.is_split() ? MPGrading(rd.rank() + 1, std::vector<Rational>(static_cast<std::size_t>(rd.rank())))
                                            : MPGrading::rho_over(rd.rank() + 1, d.torus.m)));
    ctx.rd_ = std::make_shared<const RootDatum>(rd);
    for (std::size_t u = 0; u < W.size(); ++u) {
      int ui = static_cast<int>(u);
      int w2 = W.compose(W.compose(ui, d.torus.w), W.inverse(ui));
      auto lam = weyl_act(W[u], d.lambda);
      auto terms = ctx.realize(W[static_cast<std::size_t>(w2)], d.torus.m, lam);
      if (!terms) continue;
      ctx.conjugator_ = ui;
      ctx.datum_ = PolarDatum{make_torus_class(W, w2, d.torus.m), W.image(ui, d.levi), lam};
      ctx.realized_ = std::move(*terms);
      break;
    }
    if (ctx.conjugator_ < 0)
      fail(ErrorCode::InvalidArgument, "looplie",
           "no conjugate of the torus presentation is homogeneous for the chosen apartment point");
    Rational top = d.lambda.depth().value_or(Rational(0));
    ctx.window_ = {-top - 1, top + 2};
    return ctx;
  }

  LoopContext(SlnModel m, MPGrading g) : model_(std::move(m)), grading_(std::move(g)) {}

  void finish(bool cross_check) {
    if (!cross_check) return;
    if (auto why = cross_check_levels()) fail(ErrorCode::InternalInvariantViolation, "looplie", *why);
  }

  /// Cyclic realization: for a cycle (i_1 ... i_l) of sigma let R send
  /// e_{i_k} to e_{i_{k+1}} and e_{i_l} to t^{-1} e_{i_1}; the term c_q is
  /// realized blockwise as mu_{i_1} R^{q l}. Returns nullopt when some term is
  /// not homogeneous of degree -q for the grading.
  std::optional<std::map<Rational, CVec>> realize(const WeylElement& w, std::int64_t m, const Tail& lam) const {
    const int nn = n();
    auto sigma = model_.permutation(w);
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(static_cast<std::size_t>(nn), 0);
    for (int i = 0; i < nn; ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      std::vector<int> cyc;
      for (int k = i; !seen[static_cast<std::size_t>(k)]; k = sigma[static_cast<std::size_t>(k)]) {
        seen[static_cast<std::size_t>(k)] = 1;
        cyc.push_back(k);
      }
      cycles.push_back(std::move(cyc));
    }
    std::map<Rational, CVec> out;
    for (const auto& [q, c] : lam.terms()) {
      auto mu = model_.diagonal(c);
      CVec y(static_cast<std::size_t>(nn * nn));
      for (const auto& cyc : cycles) {
        const auto l = static_cast<std::int64_t>(cyc.size());
        const auto& head = mu[static_cast<std::size_t>(cyc[0])];
        auto step = zeta(m, -to_int64(q * m));
        CycloNumber expect = head;
        for (int k : cyc) {
          if (!(mu[static_cast<std::size_t>(k)] == expect))
            fail(ErrorCode::InternalInvariantViolation, "looplie", "tail term is not an eigen-pattern on a cycle");
          expect = expect * step;
        }
        if (head.is_zero()) continue;
        Rational ar = q * l;
        if (!is_integral(ar)) fail(ErrorCode::InternalInvariantViolation, "looplie", "cycle length incompatible with exponent");
        const std::int64_t a = to_int64(ar);
        for (std::int64_t k = 0; k < l; ++k) {
          int col = cyc[static_cast<std::size_t>(k)];
          int row = cyc[static_cast<std::size_t>((k + a) % l)];
          Integer tp = -Integer((k + a) / l);
          if (!grading_.allowed(row, col, -q) || grading_.t_power(row, col, -q) != tp) return std::nullopt;
          y[grading_.idx(row, col)] = y[grading_.idx(row, col)] + head;
        }
      }
      out[q] = std::move(y);
    }
    return out;
  }

  std::vector<CVec> level_by_roots(int j, const Rational& delta) const {
    std::vector<CVec> out;
    if (!grading_.on_lattice(delta)) return out;
    const auto& lev = ladder_.levels[static_cast<std::size_t>(j)];
    for (const auto& v : grading_.basis(delta)) {
      int row = -1, col = -1;
      for (int i = 0; i < n() && row < 0; ++i)
        for (int k = 0; k < n(); ++k)
          if (i != k && !v[grading_.idx(i, k)].is_zero()) {
            row = i;
            col = k;
            break;
          }
      if (row < 0 || std::binary_search(lev.begin(), lev.end(), model_.root_of(row, col))) out.push_back(v);
    }
    return out;
  }

  std::vector<CVec> level_by_centralizer(int j, const Rational& delta) const {
    if (!grading_.on_lattice(delta)) return {};
    auto full = grading_.basis(delta);
    CMat rows;
    for (const auto& [q, lam] : realized_) {
      if (j > 0 && q <= ladder_.breaks[static_cast<std::size_t>(j - 1)]) continue;
      std::vector<CVec> images;
      for (const auto& y : full) images.push_back(bracket(n(), lam, y));
      for (std::size_t e = 0; e < static_cast<std::size_t>(n() * n()); ++e) {
        linalg::Vec<CycloNumber> r;
        bool any = false;
        for (const auto& im : images) {
          r.push_back(im[e]);
          any = any || !im[e].is_zero();
        }
        if (any) rows.push_back(std::move(r));
      }
    }
    return constrained(full, rows);
  }

  SlnModel model_;
  MPGrading grading_;
  std::shared_ptr<const RootDatum> rd_;
  PolarDatum datum_;
  YuLadder ladder_;
  int conjugator_ = -1;
  bool split_route_ = true;
  std::map<Rational, CVec> realized_;
  std::pair<Rational, Rational> window_;
  mutable std::map<std::pair<int, Rational>, std::vector<CVec>> level_cache_, v_cache_;
};

// ---------------------------------------------------------------------------
// Regular semisimple elements in the degree -1 piece of the Z/m grading.

namespace detail {

using QPoly = std::vector<Rational>;  // coefficients, lowest degree first

inline void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qmod(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    qtrim(a);
  }
  return a;
}

inline QPoly qgcd(QPoly a, QPoly b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    auto r = qmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Characteristic polynomial by Faddeev-LeVerrier.
inline QPoly charpoly(const linalg::Mat<Rational>& a) {
  const std::size_t n = a.size();
  QPoly c(n + 1, Rational(0));
  c[n] = 1;
  auto m = linalg::zeros<Rational>(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) m[i][i] += c[n - k + 1];
    m = linalg::mul(a, m);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
    c[n - k] = -tr / Rational(static_cast<long long>(k));
  }
  return c;
}

}  // namespace detail

inline bool is_regular_semisimple(const linalg::Mat<Rational>& a) {
  auto p = detail::charpoly(a);
  detail::QPoly dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * Rational(static_cast<long long>(i)));
  return detail::qgcd(p, dp).size() == 1;
}

struct EigenRegularResult {
  bool grid_found = false;
  bool springer = false;
  std::size_t grid_points = 0;
  bool agree() const { return grid_found == springer; }
};

/// Searches span{E_beta : ht(beta) = -1 mod m} (plus the diagonal when m = 1)
/// over coefficients {0, 1, 2} for a matrix with distinct eigenvalues, and
/// compares with Springer regularity of m.
inline EigenRegularResult eigen_regular_check(const WeylGroup& W, std::int64_t m) {
  const auto& rd = W.root_datum();
  auto model = SlnModel::from(rd);
  require(m >= 1 && m <= 64, ErrorCode::InvalidArgument, "looplie", "m out of range");
  const int n = model.n();
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < rd.num_roots(); ++a)
    if (((rd.height(a) % m) + m) % m == (m - 1) % m) slots.push_back(model.ij(a));
  if (m == 1)
    for (int k = 0; k < n; ++k) slots.push_back({k, k});
  EigenRegularResult res;
  res.springer = regular_numbers(W).regular.count(m) > 0;
  std::vector<int> coeff(slots.size(), 0);
  const std::size_t limit = 1u << 16;
  for (;;) {
    auto a = linalg::zeros<Rational>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    Rational tr = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      a[static_cast<std::size_t>(slots[s].first)][static_cast<std::size_t>(slots[s].second)] = coeff[s];
      if (slots[s].first == slots[s].second) tr += coeff[s];
    }
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -= tr / n;
    ++res.grid_points;
    if (is_regular_semisimple(a)) {
      res.grid_found = true;
      break;
    }
    std::size_t pos = 0;
    while (pos < coeff.size() && coeff[pos] == 2) coeff[pos++] = 0;
    if (pos == coeff.size() || res.grid_points >= limit) break;
    ++coeff[pos];
  }
  return res;
}

}  // namespace polarium
