#pragma once

// Split root data of types A-D and G2 (plus a central torus), their Weyl
// groups as integer matrices, and Q-closure of root subsets.
//
// Coordinates: a covector of the Cartan (an element of t0*) is written in
// the basis of fundamental weights followed by the duals of the central
// torus coordinates; a vector of t0 in the basis of simple coroots followed
// by the central coordinates. The two bases are dual, so <h, lambda> is the
// plain dot product.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polarium/error.hpp"
#include "polarium/linalg.hpp"
#include "polarium/rational.hpp"

namespace polarium {

using IntVec = std::vector<std::int64_t>;
using RootSet = std::vector<int>;  // sorted root indices

struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> a;

  static IntMatrix identity(std::size_t n) {
    IntMatrix m{n, std::vector<std::int64_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r{x.n, std::vector<std::int64_t>(x.n * x.n, 0)};
    for (std::size_t i = 0; i < x.n; ++i)
      for (std::size_t k = 0; k < x.n; ++k) {
        auto v = x(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < x.n; ++j) r(i, j) += v * y(k, j);
      }
    return r;
  }

  IntVec apply(const IntVec& v) const {
    IntVec r(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  IntMatrix transposed() const {
    IntMatrix t{n, std::vector<std::int64_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend bool operator<(const IntMatrix& x, const IntMatrix& y) { return x.a < y.a; }
};

struct CartanComponent {
  char letter;  // 'A','B','C','D','G' or 'T' for a central torus
  int rank;
  friend bool operator==(const CartanComponent&, const CartanComponent&) = default;
};

struct CartanType {
  std::vector<CartanComponent> components;

  /// Accepts "A2", "B2", "G2", products "A1xA1" and a central torus "A2xT1".
  static CartanType parse(const std::string& s) {
    CartanType t;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == 'x' || s[i] == '+' || s[i] == '*' || std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
        continue;
      }
      char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i++])));
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) fail(ErrorCode::InvalidArgument, "rootdata", "malformed Cartan type '" + s + "'");
      if (std::string_view("ABCDGT").find(letter) == std::string_view::npos)
        fail(ErrorCode::UnsupportedFeature, "rootdata", std::string("unsupported Cartan letter '") + letter + "'");
      t.components.push_back({letter, std::stoi(s.substr(i, j - i))});
      i = j;
    }
    if (t.components.empty()) fail(ErrorCode::InvalidArgument, "rootdata", "empty Cartan type");
    return t;
  }

  std::string str() const {
    std::string out;
    for (const auto& c : components) {
      if (!out.empty()) out += "x";
      out += c.letter;
      out += std::to_string(c.rank);
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<std::int64_t>> simple_cartan(char letter, int n) {
  std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
  switch (letter) {
    case 'A':
      if (n < 1) break;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      return c;
    case 'B':
      if (n < 2) break;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 1][n - 2] = -2;  // alpha_n short
      return c;
    case 'C':
      if (n < 2) break;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 2][n - 1] = -2;  // alpha_n long
      return c;
    case 'D':
      if (n < 3) break;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      return c;
    case 'G':
      if (n != 2) break;
      c[0][1] = -3;  // alpha_1 short
      c[1][0] = -1;
      return c;
    default:
      break;
  }
  fail(ErrorCode::UnsupportedFeature, "rootdata",
       std::string("unsupported simple type ") + letter + std::to_string(n));
}

inline std::int64_t weyl_order_of(char letter, int n) {
  auto fact = [](int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  switch (letter) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return (std::int64_t{1} << n) * fact(n);
    case 'D': return (std::int64_t{1} << (n - 1)) * fact(n);
    case 'G': return 12;
    default: return 1;
  }
}

}  // namespace detail

class RootDatum {
 public:
  static RootDatum build(const CartanType& type) {
    RootDatum rd;
    rd.type_ = type;
    int ss = 0, torus = 0;
    for (const auto& c : type.components) {
      if (c.rank < 0 || c.rank > 12)
        fail(ErrorCode::UnsupportedFeature, "rootdata", "rank out of supported range in " + type.str());
      if (c.letter == 'T')
        torus += c.rank;
      else
        ss += c.rank;
    }
    rd.ss_rank_ = ss;
    rd.rank_ = ss + torus;
    rd.cartan_.assign(ss, std::vector<std::int64_t>(ss, 0));
    int off = 0;
    for (const auto& c : type.components) {
      if (c.letter == 'T') continue;
      auto block = detail::simple_cartan(c.letter, c.rank);
      for (int i = 0; i < c.rank; ++i)
        for (int j = 0; j < c.rank; ++j) rd.cartan_[off + i][off + j] = block[i][j];
      rd.weyl_order_ *= detail::weyl_order_of(c.letter, c.rank);
      off += c.rank;
    }
    rd.enumerate_roots();
    return rd;
  }

  static RootDatum build(const std::string& type) { return build(CartanType::parse(type)); }

  const CartanType& type() const { return type_; }
  int rank() const { return rank_; }
  int semisimple_rank() const { return ss_rank_; }
  /// C[i][j] = <alpha_i^vee, alpha_j>.
  const std::vector<std::vector<std::int64_t>>& cartan() const { return cartan_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return static_cast<int>(roots_.size() / 2); }
  std::int64_t weyl_order() const { return weyl_order_; }

  /// Root in simple-root coordinates.
  const IntVec& root(int i) const { return roots_[i]; }
  /// Coroot in simple-coroot coordinates.
  const IntVec& coroot(int i) const { return coroots_[i]; }
  /// Root as a covector (fundamental weight coordinates, length rank()).
  const IntVec& root_weight(int i) const { return root_weights_[i]; }
  /// Coroot as a vector of t0 (length rank()); pairs with covectors by dot product.
  const IntVec& coroot_vector(int i) const { return coroot_vectors_[i]; }
  int negative(int i) const { return i < num_positive() ? i + num_positive() : i - num_positive(); }
  bool is_positive(int i) const { return i < num_positive(); }
  int height(int i) const {
    std::int64_t h = 0;
    for (auto c : roots_[i]) h += c;
    return static_cast<int>(h);
  }

  /// <alpha_a^vee, alpha_b>.
  std::int64_t pairing(int a, int b) const {
    std::int64_t s = 0;
    for (int k = 0; k < rank_; ++k) s += coroot_vectors_[a][k] * root_weights_[b][k];
    return s;
  }

  /// Index of the root with the given fundamental-weight coordinates, or -1.
  int find_root_weight(const IntVec& w) const {
    auto it = weight_index_.find(w);
    return it == weight_index_.end() ? -1 : it->second;
  }

  RootSet all_roots() const {
    RootSet s(roots_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<int>(i);
    return s;
  }

  /// Phi intersected with the Q-span of `subset`.
  RootSet q_closure(const RootSet& subset) const {
    linalg::SpanTracker<Rational> span(static_cast<std::size_t>(ss_rank_));
    for (int a : subset) span.insert(as_rational(roots_[check_index(a)]));
    RootSet out;
    for (int i = 0; i < num_roots(); ++i)
      if (span.contains(as_rational(roots_[i]))) out.push_back(i);
    return out;
  }

  bool is_q_closed(const RootSet& subset) const {
    RootSet s = normalized(subset);
    return q_closure(s) == s;
  }

  RootSet normalized(RootSet s) const {
    for (int a : s) check_index(a);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  /// Weyl-group weight matrix of the simple reflection s_i.
  IntMatrix simple_reflection(int i) const {
    auto m = IntMatrix::identity(static_cast<std::size_t>(rank_));
    for (int k = 0; k < ss_rank_; ++k) m(k, i) -= cartan_[k][i];
    return m;
  }

  /// Weight matrix of the reflection in root a: lambda -> lambda - <a^vee, lambda> a.
  IntMatrix reflection(int a) const {
    auto m = IntMatrix::identity(static_cast<std::size_t>(rank_));
    for (int k = 0; k < rank_; ++k)
      for (int l = 0; l < rank_; ++l) m(k, l) -= root_weights_[a][k] * coroot_vectors_[a][l];
    return m;
  }

  friend bool operator==(const RootDatum& x, const RootDatum& y) {
    return x.rank_ == y.rank_ && x.cartan_ == y.cartan_;
  }

 private:
  static linalg::Vec<Rational> as_rational(const IntVec& v) {
    return linalg::Vec<Rational>(v.begin(), v.end());
  }

  int check_index(int a) const {
    if (a < 0 || a >= num_roots())
      fail(ErrorCode::InvalidArgument, "rootdata", "root index " + std::to_string(a) + " out of range");
    return a;
  }

  void enumerate_roots() {
    const int r = ss_rank_;
    // <alpha_i^vee, beta> for beta in root coordinates: sum_j C[i][j] beta_j;
    // <beta^vee, alpha_i> for beta^vee in coroot coordinates: sum_j beta_j C[j][i].
    std::set<std::pair<IntVec, IntVec>> seen;
    std::vector<std::pair<IntVec, IntVec>> queue;
    for (int i = 0; i < r; ++i) {
      IntVec e(r, 0);
      e[i] = 1;
      queue.emplace_back(e, e);
      seen.emplace(e, e);
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int i = 0; i < r; ++i) {
        auto [b, bv] = queue[q];
        std::int64_t c = 0, cv = 0;
        for (int j = 0; j < r; ++j) {
          c += cartan_[i][j] * b[j];
          cv += bv[j] * cartan_[j][i];
        }
        b[i] -= c;
        bv[i] -= cv;
        if (seen.emplace(b, bv).second) queue.emplace_back(b, bv);
      }
    }
    std::vector<std::pair<IntVec, IntVec>> pos;
    for (auto& p : queue) {
      bool positive = std::all_of(p.first.begin(), p.first.end(), [](std::int64_t x) { return x >= 0; });
      if (positive) pos.push_back(p);
    }
    auto height = [](const IntVec& v) {
      std::int64_t h = 0;
      for (auto x : v) h += x;
      return h;
    };
    std::sort(pos.begin(), pos.end(), [&](const auto& x, const auto& y) {
      auto hx = height(x.first), hy = height(y.first);
      if (hx != hy) return hx < hy;
      return x.first > y.first;
    });
    for (auto& p : pos) {
      roots_.push_back(p.first);
      coroots_.push_back(p.second);
    }
    for (auto& p : pos) {
      IntVec a = p.first, b = p.second;
      for (auto& x : a) x = -x;
      for (auto& x : b) x = -x;
      roots_.push_back(a);
      coroots_.push_back(b);
    }
    for (std::size_t a = 0; a < roots_.size(); ++a) {
      IntVec w(rank_, 0), v(rank_, 0);
      for (int k = 0; k < r; ++k) {
        for (int j = 0; j < r; ++j) w[k] += cartan_[k][j] * roots_[a][j];
        v[k] = coroots_[a][k];
      }
      root_weights_.push_back(w);
      coroot_vectors_.push_back(v);
      weight_index_[w] = static_cast<int>(a);
    }
  }

  CartanType type_;
  int rank_ = 0;
  int ss_rank_ = 0;
  std::int64_t weyl_order_ = 1;
  std::vector<std::vector<std::int64_t>> cartan_;
  std::vector<IntVec> roots_, coroots_, root_weights_, coroot_vectors_;
  std::map<IntVec, int> weight_index_;
};

/// An element of W acting on t0* (weights) and, contragrediently, on t0.
struct WeylElement {
  IntMatrix matrix;           // action on covectors, fundamental weight coordinates
  IntMatrix coweight_matrix;  // action on t0, simple coroot coordinates
  std::vector<int> root_permutation;

  bool is_identity() const { return matrix == IntMatrix::identity(matrix.n); }
};

inline constexpr std::int64_t kMaxWeylOrder = 100000;

class WeylGroup {
 public:
  /// Enumerates W by closure under simple reflections (breadth first,
  /// identity first).
  static WeylGroup generate(const RootDatum& rd, std::int64_t bound = kMaxWeylOrder) {
    if (rd.weyl_order() > bound)
      fail(ErrorCode::ResourceLimit, "rootdata",
           "|W| = " + std::to_string(rd.weyl_order()) + " exceeds bound " + std::to_string(bound));
    WeylGroup g;
    g.rd_ = std::make_shared<const RootDatum>(rd);
    const auto n = static_cast<std::size_t>(rd.rank());
    std::vector<IntMatrix> gens;
    for (int i = 0; i < rd.semisimple_rank(); ++i) gens.push_back(rd.simple_reflection(i));
    g.add(IntMatrix::identity(n));
    for (std::size_t q = 0; q < g.elements_.size(); ++q) {
      for (const auto& s : gens) {
        auto m = s * g.elements_[q].matrix;
        if (g.index_.count(m)) continue;
        if (static_cast<std::int64_t>(g.elements_.size()) >= bound)
          fail(ErrorCode::ResourceLimit, "rootdata", "Weyl group enumeration exceeded bound");
        g.add(m);
      }
    }
    for (int i = 0; i < rd.semisimple_rank(); ++i) g.simple_.push_back(g.index_of(gens[i]));
    return g;
  }

  const RootDatum& root_datum() const { return *rd_; }
  std::size_t size() const { return elements_.size(); }
  const WeylElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const std::vector<int>& simple_reflections() const { return simple_; }

  int index_of(const IntMatrix& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

  int compose(int x, int y) const { return index_of(elements_[x].matrix * elements_[y].matrix); }

  int inverse(int x) const {
    // transpose of the coweight matrix is the inverse weight matrix
    return index_of(elements_[x].coweight_matrix.transposed());
  }

  int reflection(int root) const { return index_of(rd_->reflection(root)); }

  int order_of(int x) const {
    auto id = IntMatrix::identity(elements_[x].matrix.n);
    auto m = elements_[x].matrix;
    int k = 1;
    while (!(m == id)) {
      m = m * elements_[x].matrix;
      ++k;
    }
    return k;
  }

  /// Subgroup generated by the given elements, as a sorted index list.
  std::vector<int> generated_subgroup(const std::vector<int>& gens) const {
    std::vector<int> out{0};
    std::vector<char> seen(elements_.size(), 0);
    seen[0] = 1;
    for (std::size_t q = 0; q < out.size(); ++q)
      for (int s : gens) {
        int y = compose(s, out[q]);
        if (!seen[y]) {
          seen[y] = 1;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Conjugacy classes; each class is sorted and classes are ordered by
  /// their smallest element.
  std::vector<std::vector<int>> conjugacy_classes() const {
    std::vector<int> cls(elements_.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      if (cls[e] >= 0) continue;
      std::vector<int> orbit{static_cast<int>(e)};
      cls[e] = static_cast<int>(out.size());
      for (std::size_t q = 0; q < orbit.size(); ++q)
        for (int s : simple_) {
          int y = compose(compose(s, orbit[q]), s);
          if (cls[y] < 0) {
            cls[y] = static_cast<int>(out.size());
            orbit.push_back(y);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
    return out;
  }

  bool stabilizes(int w, const RootSet& subset) const {
    std::vector<char> in(static_cast<std::size_t>(rd_->num_roots()), 0);
    for (int a : subset) in[a] = 1;
    for (int a : subset)
      if (!in[elements_[w].root_permutation[a]]) return false;
    return true;
  }

  RootSet image(int w, const RootSet& subset) const {
    RootSet out;
    for (int a : subset) out.push_back(elements_[w].root_permutation[a]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add(const IntMatrix& m) {
    WeylElement w;
    w.matrix = m;
    w.root_permutation.resize(static_cast<std::size_t>(rd_->num_roots()));
    for (int a = 0; a < rd_->num_roots(); ++a) {
      int b = rd_->find_root_weight(m.apply(rd_->root_weight(a)));
      if (b < 0) fail(ErrorCode::InternalInvariantViolation, "rootdata", "matrix does not permute roots");
      w.root_permutation[a] = b;
    }
    // contragredient: coweight = (matrix^-1)^T; matrix^-1 found by the group
    // relation matrix^-1 = matrix^(order-1)
    auto id = IntMatrix::identity(m.n);
    IntMatrix inv = id, p = m;
    while (!(p == id)) {
      inv = p;
      p = p * m;
    }
    w.coweight_matrix = (m == id) ? id : inv.transposed();
    index_.emplace(m, static_cast<int>(elements_.size()));
    elements_.push_back(std::move(w));
  }

  std::shared_ptr<const RootDatum> rd_;
  std::vector<WeylElement> elements_;
  std::map<IntMatrix, int> index_;
  std::vector<int> simple_;
};

}  // namespace polarium
