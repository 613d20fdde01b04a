#ifndef SSVERIFY_ROOT_DATUM_HPP_
#define SSVERIFY_ROOT_DATUM_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace ssverify {

using IntVec = std::vector<std::int64_t>;

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

// CARTAN TYPES

struct CartanComponent {
  char series = 'A';
  int rank = 1;
  std::string label() const { return std::string(1, series) + std::to_string(rank); }
  friend bool operator==(const CartanComponent& a, const CartanComponent& b) {
    return a.series == b.series && a.rank == b.rank;
  }
};

struct CartanType {
  std::vector<CartanComponent> components;

  // "E6", "A2xA2", "A1xA1xA1"; a bare "E" with separate rank is also accepted
  // by the (series, rank) overload.
  static CartanType parse(const std::string& text) {
    CartanType t;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find_first_of("xX*", pos);
      if (end == std::string::npos)
        end = text.size();
      std::string part = text.substr(pos, end - pos);
      if (part.size() < 2 || !std::isalpha(static_cast<unsigned char>(part[0])))
        throw ParseError("bad Cartan type '" + text + "'");
      CartanComponent c;
      c.series = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
      try {
        c.rank = std::stoi(part.substr(1));
      } catch (const std::exception&) {
        throw ParseError("bad Cartan type '" + text + "'");
      }
      t.components.push_back(c);
      pos = end + 1;
    }
    if (t.components.empty())
      throw ParseError("empty Cartan type");
    t.validate();
    return t;
  }
  static CartanType single(char series, int rank) {
    CartanType t;
    t.components.push_back({series, rank});
    t.validate();
    return t;
  }

  void validate() const {
    for (const auto& c : components) {
      bool ok = c.rank >= 1;
      switch (c.series) {
      case 'A': break;
      case 'B': case 'C': ok = ok && c.rank >= 2; break;
      case 'D': ok = ok && c.rank >= 3; break;
      case 'E': ok = c.rank >= 6 && c.rank <= 8; break;
      case 'F': ok = c.rank == 4; break;
      case 'G': ok = c.rank == 2; break;
      default: ok = false;
      }
      if (!ok)
        throw InvalidCartan("unsupported type " + c.label());
    }
  }

  int rank() const {
    int r = 0;
    for (const auto& c : components)
      r += c.rank;
    return r;
  }
  std::string label() const {
    std::string s;
    for (std::size_t i = 0; i < components.size(); ++i)
      s += (i ? "x" : "") + components[i].label();
    return s;
  }
};

namespace detail {

// Squared root lengths and Gram matrix (up to scale) in Bourbaki numbering.
inline SmallMatrix gram_matrix(const CartanComponent& c) {
  const int n = c.rank;
  SmallMatrix g(n, n);
  auto link = [&](int i, int j, std::int64_t v) { g(i, j) = g(j, i) = v; };
  switch (c.series) {
  case 'A':
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
    break;
  case 'B': // alpha_n short
    for (int i = 0; i < n; ++i) g(i, i) = 4;
    g(n - 1, n - 1) = 2;
    for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
    break;
  case 'C': // alpha_n long
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    g(n - 1, n - 1) = 4;
    for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
    link(n - 2, n - 1, -2);
    break;
  case 'D':
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
    link(n - 3, n - 1, -1);
    break;
  case 'E':
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    link(0, 2, -1);
    link(1, 3, -1);
    for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
    break;
  case 'F': // alpha_1, alpha_2 long
    g(0, 0) = g(1, 1) = 4;
    g(2, 2) = g(3, 3) = 2;
    link(0, 1, -2);
    link(1, 2, -2);
    link(2, 3, -1);
    break;
  case 'G': // alpha_1 short
    g(0, 0) = 2;
    g(1, 1) = 6;
    link(0, 1, -3);
    break;
  default:
    throw InvalidCartan("unsupported series");
  }
  return g;
}

} // namespace detail

// cartan(i, j) = <alpha_j, alpha_i^vee>, block diagonal over components.
inline SmallMatrix cartan_matrix(const CartanType& t) {
  const int n = t.rank();
  SmallMatrix a(n, n);
  int off = 0;
  for (const auto& c : t.components) {
    SmallMatrix g = detail::gram_matrix(c);
    for (int i = 0; i < c.rank; ++i)
      for (int j = 0; j < c.rank; ++j)
        a(off + i, off + j) = 2 * g(i, j) / g(i, i);
    off += c.rank;
  }
  return a;
}

enum class Isogeny { adjoint, simply_connected };

inline Isogeny parse_isogeny(const std::string& s) {
  if (s == "adjoint" || s == "ad")
    return Isogeny::adjoint;
  if (s == "simply_connected" || s == "sc" || s == "simply-connected")
    return Isogeny::simply_connected;
  throw ParseError("unknown isogeny '" + s + "'");
}

// ROOT DATUM

struct Root {
  IntVec x;        // in the basis of X
  IntVec y;        // coroot, in the basis of Y
  IntVec coeffs;   // in the simple roots
  IntVec cocoeffs; // coroot in the simple coroots
  std::int64_t height = 0;
  bool positive = true;
};

class RootDatum {
public:
  static constexpr std::size_t kRootBound = 10000;

  // Rows of simple_roots are simple roots in X, rows of simple_coroots the
  // simple coroots in Y; the pairing is the coordinate dot product.
  RootDatum(const SmallMatrix& simple_roots, const SmallMatrix& simple_coroots,
            std::optional<CartanType> type = std::nullopt)
      : R_(simple_roots), C_(simple_coroots), type_(std::move(type)) {
    if (R_.rows() != C_.rows() || R_.cols() != C_.cols())
      throw DimensionMismatch("simple roots and coroots must have the same shape");
    n_ = R_.rows();
    r_ = R_.cols();
    cartan_ = SmallMatrix(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        cartan_(i, j) = dot(R_.row(j), C_.row(i));
    validate_cartan();
    if (rank_of(R_) != n_)
      throw InvalidCartan("simple roots are linearly dependent");
    generate_roots();
  }

  static std::shared_ptr<const RootDatum> build(const CartanType& t, Isogeny iso) {
    SmallMatrix a = cartan_matrix(t);
    SmallMatrix id = SmallMatrix::identity(a.rows());
    if (iso == Isogeny::adjoint)
      return std::make_shared<const RootDatum>(id, a, t);
    return std::make_shared<const RootDatum>(a.transpose(), id, t);
  }
  static std::shared_ptr<const RootDatum> build(const std::string& type, Isogeny iso) {
    return build(CartanType::parse(type), iso);
  }
  static std::shared_ptr<const RootDatum> explicit_datum(const SmallMatrix& R, const SmallMatrix& C) {
    return std::make_shared<const RootDatum>(R, C);
  }

  std::size_t rank() const { return r_; }
  std::size_t semisimple_rank() const { return n_; }
  bool is_semisimple() const { return n_ == r_; }
  const SmallMatrix& simple_roots() const { return R_; }
  const SmallMatrix& simple_coroots() const { return C_; }
  const SmallMatrix& cartan() const { return cartan_; }
  const std::optional<CartanType>& cartan_type() const { return type_; }

  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_positive() const { return npos_; }
  const Root& root(std::size_t i) const { return roots_.at(i); }
  const std::vector<Root>& roots() const { return roots_; }
  int negative(int i) const { return i < static_cast<int>(npos_) ? i + static_cast<int>(npos_) : i - static_cast<int>(npos_); }
  bool is_positive(int i) const { return i < static_cast<int>(npos_); }

  std::optional<int> index_of_x(const IntVec& x) const {
    auto it = by_x_.find(x);
    if (it == by_x_.end())
      return std::nullopt;
    return it->second;
  }

  // Image of root j under the simple reflection s_i.
  const std::vector<int>& simple_reflection_perm(std::size_t i) const { return simple_perm_.at(i); }

  // Image of root j under the reflection in root k.
  int reflect_root(int k, int j) const {
    const Root& b = roots_[k];
    const Root& g = roots_[j];
    const std::int64_t p = dot(g.x, b.y);
    IntVec x = g.x;
    for (std::size_t a = 0; a < r_; ++a)
      x[a] -= p * b.x[a];
    return by_x_.at(x);
  }

  // A word in simple reflections for the reflection in root k.
  std::vector<int> reflection_word(int k) const {
    if (k < 0 || k >= static_cast<int>(roots_.size()))
      throw BadIndex("root index " + std::to_string(k));
    int cur = is_positive(k) ? k : negative(k);
    std::vector<int> path;
    while (roots_[cur].height != 1) {
      std::size_t i = 0;
      for (; i < n_; ++i)
        if (dot(roots_[cur].x, C_.row(i)) > 0)
          break;
      cur = simple_perm_[i][cur];
      path.push_back(static_cast<int>(i));
    }
    std::vector<int> word = path;
    word.push_back(cur);
    word.insert(word.end(), path.rbegin(), path.rend());
    return word;
  }

  // Reflection matrix on Y acting on column vectors: v - <alpha, v> alpha^vee.
  SmallMatrix reflection_matrix(int k) const {
    const Root& b = roots_.at(k);
    SmallMatrix m = SmallMatrix::identity(r_);
    for (std::size_t a = 0; a < r_; ++a)
      for (std::size_t c = 0; c < r_; ++c)
        m(a, c) -= b.y[a] * b.x[c];
    return m;
  }

  std::optional<int> index_of_y(const IntVec& y) const {
    auto it = by_y_.find(y);
    if (it == by_y_.end())
      return std::nullopt;
    return it->second;
  }

  // Permutation of the roots induced by a matrix acting on Y, if it permutes the coroots.
  std::optional<std::vector<int>> perm_of_y_matrix(const SmallMatrix& m) const {
    std::vector<int> perm(roots_.size());
    for (std::size_t j = 0; j < roots_.size(); ++j) {
      auto k = index_of_y(m.apply(roots_[j].y));
      if (!k)
        return std::nullopt;
      perm[j] = *k;
    }
    return perm;
  }

  // Type label derived from the Cartan matrix.
  std::string type_label() const;

private:
  void validate_cartan() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j && cartan_(i, j) != 2)
          throw InvalidCartan("diagonal entry " + std::to_string(cartan_(i, j)));
        if (i != j && cartan_(i, j) > 0)
          throw InvalidCartan("positive off-diagonal entry");
        if (i != j && (cartan_(i, j) == 0) != (cartan_(j, i) == 0))
          throw InvalidCartan("zero pattern is not symmetric");
      }
  }

  void generate_roots() {
    std::map<IntVec, IntVec> found; // coeffs -> cocoeffs
    std::queue<IntVec> todo;
    for (std::size_t i = 0; i < n_; ++i) {
      IntVec e(n_, 0);
      e[i] = 1;
      found.emplace(e, e);
      todo.push(e);
    }
    while (!todo.empty()) {
      IntVec b = todo.front();
      todo.pop();
      const IntVec bc = found.at(b);
      for (std::size_t i = 0; i < n_; ++i) {
        std::int64_t p = 0, q = 0;
        for (std::size_t j = 0; j < n_; ++j) {
          p += b[j] * cartan_(i, j);
          q += bc[j] * cartan_(j, i);
        }
        IntVec nb = b, nc = bc;
        nb[i] -= p;
        nc[i] -= q;
        if (found.emplace(nb, nc).second) {
          if (found.size() > kRootBound)
            throw NonFiniteSystem("root closure exceeds " + std::to_string(kRootBound));
          todo.push(nb);
        }
      }
    }
    std::vector<std::pair<IntVec, IntVec>> pos;
    for (const auto& [b, bc] : found)
      if (std::all_of(b.begin(), b.end(), [](std::int64_t v) { return v >= 0; }))
        pos.emplace_back(b, bc);
    auto height = [](const IntVec& v) { return std::accumulate(v.begin(), v.end(), std::int64_t(0)); };
    std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
      std::int64_t ha = height(a.first), hb = height(b.first);
      if (ha != hb)
        return ha < hb;
      return a.first > b.first;
    });
    if (pos.size() * 2 != found.size())
      throw NonFiniteSystem("root set is not symmetric");
    npos_ = pos.size();
    roots_.resize(2 * npos_);
    std::map<IntVec, int> by_coeffs;
    for (std::size_t k = 0; k < npos_; ++k) {
      for (int sign : {1, -1}) {
        Root rt;
        rt.coeffs = pos[k].first;
        rt.cocoeffs = pos[k].second;
        for (auto& v : rt.coeffs) v *= sign;
        for (auto& v : rt.cocoeffs) v *= sign;
        rt.height = height(rt.coeffs);
        rt.positive = sign > 0;
        rt.x.assign(r_, 0);
        rt.y.assign(r_, 0);
        for (std::size_t j = 0; j < n_; ++j)
          for (std::size_t a = 0; a < r_; ++a) {
            rt.x[a] += rt.coeffs[j] * R_(j, a);
            rt.y[a] += rt.cocoeffs[j] * C_(j, a);
          }
        const std::size_t idx = sign > 0 ? k : k + npos_;
        by_coeffs[rt.coeffs] = static_cast<int>(idx);
        by_x_[rt.x] = static_cast<int>(idx);
        by_y_[rt.y] = static_cast<int>(idx);
        roots_[idx] = std::move(rt);
      }
    }
    simple_perm_.assign(n_, std::vector<int>(roots_.size()));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < roots_.size(); ++j) {
        const IntVec& b = roots_[j].coeffs;
        std::int64_t p = 0;
        for (std::size_t t = 0; t < n_; ++t)
          p += b[t] * cartan_(i, t);
        IntVec nb = b;
        nb[i] -= p;
        simple_perm_[i][j] = by_coeffs.at(nb);
      }
  }

  SmallMatrix R_, C_, cartan_;
  std::optional<CartanType> type_;
  std::size_t n_ = 0, r_ = 0, npos_ = 0;
  std::vector<Root> roots_;
  std::map<IntVec, int> by_x_;
  std::map<IntVec, int> by_y_;
  std::vector<std::vector<int>> simple_perm_;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

// WEYL GROUP ELEMENTS

class WeylElement {
public:
  WeylElement() = default;

  static WeylElement identity(const RootDatum& rd) {
    WeylElement w;
    w.perm_.resize(rd.num_roots());
    std::iota(w.perm_.begin(), w.perm_.end(), 0);
    w.mat_ = SmallMatrix::identity(rd.rank());
    return w;
  }

  // word [i1, ..., ik] is the product s_i1 * ... * s_ik.
  static WeylElement from_word(const RootDatum& rd, const std::vector<int>& word) {
    WeylElement w = identity(rd);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      w.left_multiply_simple(rd, *it);
    w.word_ = word;
    return w;
  }

  static WeylElement simple(const RootDatum& rd, int i) { return from_word(rd, {i}); }

  static WeylElement reflection(const RootDatum& rd, int root) {
    return from_word(rd, rd.reflection_word(root));
  }

  // Recovers a reduced word from the action on roots.
  static WeylElement from_perm(const RootDatum& rd, const std::vector<int>& perm) {
    if (perm.size() != rd.num_roots())
      throw DimensionMismatch("root permutation length");
    std::vector<int> cur = perm, records;
    const int n = static_cast<int>(rd.semisimple_rank());
    for (;;) {
      int i = 0;
      for (; i < n; ++i)
        if (!rd.is_positive(cur[i]))
          break;
      if (i == n)
        break;
      const auto& s = rd.simple_reflection_perm(i);
      std::vector<int> next(cur.size());
      for (std::size_t j = 0; j < cur.size(); ++j)
        next[j] = cur[s[j]];
      cur.swap(next);
      records.push_back(i);
      if (records.size() > rd.num_positive())
        throw DimensionMismatch("not a Weyl group permutation");
    }
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (cur[j] != static_cast<int>(j))
        throw DimensionMismatch("not a Weyl group permutation");
    std::reverse(records.begin(), records.end());
    return from_word(rd, records);
  }

  const std::vector<int>& word() const { return word_; }
  const std::vector<int>& perm() const { return perm_; }
  const SmallMatrix& matrix() const { return mat_; }
  std::size_t length_of_word() const { return word_.size(); }

  bool is_identity() const {
    for (std::size_t j = 0; j < perm_.size(); ++j)
      if (perm_[j] != static_cast<int>(j))
        return false;
    return true;
  }

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    WeylElement c;
    c.word_ = a.word_;
    c.word_.insert(c.word_.end(), b.word_.begin(), b.word_.end());
    c.perm_.resize(a.perm_.size());
    for (std::size_t j = 0; j < a.perm_.size(); ++j)
      c.perm_[j] = a.perm_[b.perm_[j]];
    c.mat_ = a.mat_ * b.mat_;
    return c;
  }

  WeylElement inverse(const RootDatum& rd) const {
    std::vector<int> rev(word_.rbegin(), word_.rend());
    return from_word(rd, rev);
  }

  // Image of root j.
  int operator()(int j) const { return perm_[j]; }

  // Consistency of the root permutation with the matrix on coroots.
  bool consistent(const RootDatum& rd) const {
    for (std::size_t j = 0; j < rd.num_roots(); ++j) {
      IntVec img = mat_.apply(rd.root(j).y);
      if (img != rd.root(perm_[j]).y)
        return false;
    }
    return true;
  }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.perm_ == b.perm_; }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
  friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.perm_ < b.perm_; }

private:
  void left_multiply_simple(const RootDatum& rd, int i) {
    if (i < 0 || i >= static_cast<int>(rd.semisimple_rank()))
      throw BadIndex("simple reflection " + std::to_string(i));
    const auto& s = rd.simple_reflection_perm(i);
    for (auto& p : perm_)
      p = s[p];
    // rows of s_i * M: M - c_i (r_i . M)
    const auto r = rd.rank();
    const SmallMatrix& R = rd.simple_roots();
    const SmallMatrix& C = rd.simple_coroots();
    for (std::size_t col = 0; col < r; ++col) {
      std::int64_t p = 0;
      for (std::size_t a = 0; a < r; ++a)
        p += R(i, a) * mat_(a, col);
      if (p == 0)
        continue;
      for (std::size_t a = 0; a < r; ++a)
        mat_(a, col) -= C(i, a) * p;
    }
  }

  std::vector<int> word_;
  std::vector<int> perm_;
  SmallMatrix mat_;
};

// y_matrix * v over Q.
inline std::vector<Rational> weyl_apply(const WeylElement& w, const std::vector<Rational>& v) {
  const SmallMatrix& m = w.matrix();
  if (v.size() != m.cols())
    throw DimensionMismatch("weyl_apply: vector length " + std::to_string(v.size()));
  std::vector<Rational> out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i] += Rational(m(i, j)) * v[j];
  return out;
}

// Closure of generating root permutations; returns all elements (as perms).
inline std::set<std::vector<int>> perm_group_closure(const std::vector<std::vector<int>>& gens,
                                                     std::size_t degree, std::size_t cap = 10000000) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> todo{id};
  while (!todo.empty()) {
    std::vector<int> g = std::move(todo.back());
    todo.pop_back();
    for (const auto& s : gens) {
      std::vector<int> h(degree);
      for (std::size_t j = 0; j < degree; ++j)
        h[j] = s[g[j]];
      if (seen.insert(h).second) {
        if (seen.size() > cap)
          throw OrbitBound("group closure exceeds cap");
        todo.push_back(std::move(h));
      }
    }
  }
  return seen;
}

// TYPE RECOGNITION

namespace detail {

// Identifies the Cartan type of one connected component; `nodes` index into
// the Cartan matrix `a` with a(i,j) = <alpha_j, alpha_i^vee>.
inline CartanComponent identify_component(const SmallMatrix& a, const std::vector<int>& nodes) {
  const int n = static_cast<int>(nodes.size());
  CartanComponent c;
  c.rank = n;
  std::vector<int> degree(n, 0);
  int multi = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(nodes[i], nodes[j]) != 0) {
        ++degree[i];
        multi = std::max<int>(multi, static_cast<int>(a(nodes[i], nodes[j]) * a(nodes[j], nodes[i])));
      }
  if (multi == 3) {
    c.series = 'G';
    return c;
  }
  int branch = -1;
  for (int i = 0; i < n; ++i)
    if (degree[i] == 3)
      branch = i;
  if (multi == 2) {
    if (n == 4) {
      // F4 unless the double bond sits at an end of the chain
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && a(nodes[i], nodes[j]) * a(nodes[j], nodes[i]) == 2 && degree[i] == 2 && degree[j] == 2) {
            c.series = 'F';
            return c;
          }
    }
    // B if the end node of the double bond is short
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && a(nodes[i], nodes[j]) * a(nodes[j], nodes[i]) == 2 && degree[i] == 1) {
          if (n == 2) {
            c.series = 'B';
            return c;
          }
          c.series = (a(nodes[i], nodes[j]) == -2) ? 'B' : 'C';
          return c;
        }
    c.series = 'B';
    return c;
  }
  if (branch < 0) {
    c.series = 'A';
    return c;
  }
  int short_arms = 0;
  for (int j = 0; j < n; ++j)
    if (j != branch && a(nodes[branch], nodes[j]) != 0 && degree[j] == 1)
      ++short_arms;
  c.series = short_arms >= 2 ? 'D' : 'E';
  return c;
}

// Connected components of the Dynkin graph, each sorted, ordered by first node.
inline std::vector<std::vector<int>> dynkin_components(const SmallMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> nodes{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v)
        if (v != u && a(u, v) != 0 && comp[v] < 0) {
          comp[v] = comp[s];
          nodes.push_back(v);
          stack.push_back(v);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(nodes);
  }
  return out;
}

inline std::string type_label_of(const SmallMatrix& a) {
  if (a.rows() == 0)
    return "1";
  std::string s;
  for (const auto& nodes : dynkin_components(a)) {
    if (!s.empty())
      s += "x";
    s += identify_component(a, nodes).label();
  }
  return s;
}

// Diagram of one component. labels[i] is the printed number of node i.
inline std::string component_diagram(const SmallMatrix& a, const std::vector<int>& nodes,
                                     const std::vector<int>& labels) {
  CartanComponent type = identify_component(a, nodes);
  const int n = static_cast<int>(nodes.size());
  auto adj = [&](int i, int j) { return i != j && a(nodes[i], nodes[j]) != 0; };
  auto bond = [&](int i, int j) -> std::string {
    std::int64_t m = a(nodes[i], nodes[j]) * a(nodes[j], nodes[i]);
    if (m == 1)
      return " - ";
    // arrow points at the short root
    bool j_short = a(nodes[i], nodes[j]) == -1 && a(nodes[j], nodes[i]) < -1;
    if (m == 2)
      return j_short ? " => " : " <= ";
    return j_short ? " >>> " : " <<< ";
  };
  auto lab = [&](int i) { return std::to_string(labels[nodes[i]]); };

  int branch = -1;
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (int j = 0; j < n; ++j)
      d += adj(i, j);
    if (d == 3)
      branch = i;
  }
  if (branch < 0) {
    // walk the chain from the end with the smallest label
    int start = 0;
    if (n > 1) {
      int best = -1;
      for (int i = 0; i < n; ++i) {
        int d = 0;
        for (int j = 0; j < n; ++j)
          d += adj(i, j);
        if (d <= 1 && (best < 0 || labels[nodes[i]] < labels[nodes[best]]))
          best = i;
      }
      start = best;
    }
    std::string line = lab(start);
    int prev = -1, cur = start;
    for (;;) {
      int next = -1;
      for (int j = 0; j < n; ++j)
        if (j != prev && adj(cur, j))
          next = j;
      if (next < 0)
        break;
      line += bond(cur, next) + lab(next);
      prev = cur;
      cur = next;
    }
    return type.label() + " " + line;
  }
  // arms hanging off the branch node
  std::vector<std::vector<int>> arms;
  for (int j = 0; j < n; ++j) {
    if (!adj(branch, j))
      continue;
    std::vector<int> arm{j};
    int prev = branch, cur = j;
    for (;;) {
      int next = -1;
      for (int k = 0; k < n; ++k)
        if (k != prev && adj(cur, k))
          next = k;
      if (next < 0)
        break;
      arm.push_back(next);
      prev = cur;
      cur = next;
    }
    arms.push_back(arm);
  }
  auto min_label = [&](const std::vector<int>& arm) {
    int m = labels[nodes[arm[0]]];
    for (int v : arm)
      m = std::min(m, labels[nodes[v]]);
    return m;
  };
  // the node drawn above the branch is a length-one arm, the largest label if several
  int up = -1;
  for (int k = 0; k < 3; ++k)
    if (arms[k].size() == 1 && (up < 0 || labels[nodes[arms[k][0]]] > labels[nodes[arms[up][0]]]))
      up = k;
  std::vector<int> rest;
  for (int k = 0; k < 3; ++k)
    if (k != up)
      rest.push_back(k);
  if (min_label(arms[rest[1]]) < min_label(arms[rest[0]]))
    std::swap(rest[0], rest[1]);
  std::string chain;
  const auto& left = arms[rest[0]];
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    chain += lab(*it);
    chain += bond(*it, (it + 1 == left.rend()) ? branch : *(it + 1));
  }
  const std::size_t col = chain.size();
  chain += lab(branch);
  int prev = branch;
  for (int v : arms[rest[1]]) {
    chain += bond(prev, v) + lab(v);
    prev = v;
  }
  std::string head = type.label();
  head += std::string(col > head.size() ? col - head.size() : 1, ' ');
  head += lab(arms[up][0]);
  return head + "\n" + std::string(col, ' ') + "|\n" + chain;
}

} // namespace detail

inline std::string RootDatum::type_label() const { return detail::type_label_of(cartan_); }

// Node-numbered Dynkin diagram, one block per component.
inline std::string diagram_text(const RootDatum& rd) {
  if (rd.semisimple_rank() == 0)
    return "(torus)";
  std::vector<int> labels(rd.semisimple_rank());
  std::iota(labels.begin(), labels.end(), 1);
  std::string out;
  for (const auto& nodes : detail::dynkin_components(rd.cartan())) {
    if (!out.empty())
      out += "\n";
    out += detail::component_diagram(rd.cartan(), nodes, labels);
  }
  return out;
}

// REFLECTION SUBGROUPS

class ReflectionSubgroup {
public:
  ReflectionSubgroup() = default;

  // Subgroup generated by the reflections in the given parent roots. The simple
  // system is recomputed canonically from the closure (positive roots of the
  // subsystem that are not sums of two positive subsystem roots).
  ReflectionSubgroup(DatumPtr parent, const std::vector<int>& gens) : parent_(std::move(parent)) {
    const RootDatum& rd = *parent_;
    const int nr = static_cast<int>(rd.num_roots());
    member_.assign(nr, 0);
    std::vector<int> todo;
    for (int g : gens) {
      if (g < 0 || g >= nr)
        throw BadIndex("root index " + std::to_string(g) + " (datum has " + std::to_string(nr) + " roots)");
      for (int h : {g, rd.negative(g)})
        if (!member_[h]) {
          member_[h] = 1;
          todo.push_back(h);
        }
    }
    while (!todo.empty()) {
      int b = todo.back();
      todo.pop_back();
      for (int g : gens) {
        int c = rd.reflect_root(g, b);
        if (!member_[c]) {
          member_[c] = 1;
          todo.push_back(c);
        }
      }
    }
    for (int j = 0; j < nr; ++j)
      if (member_[j])
        roots_.push_back(j);
    for (int j : roots_) {
      if (!rd.is_positive(j))
        continue;
      bool decomposable = false;
      for (int k : roots_) {
        if (!rd.is_positive(k) || k == j)
          continue;
        IntVec d = rd.root(j).x;
        for (std::size_t a = 0; a < d.size(); ++a)
          d[a] -= rd.root(k).x[a];
        auto idx = rd.index_of_x(d);
        if (idx && member_[*idx] && rd.is_positive(*idx)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable)
        simple_.push_back(j);
    }
    const std::size_t k = simple_.size();
    cartan_ = SmallMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        cartan_(i, j) = dot(rd.root(simple_[j]).x, rd.root(simple_[i]).y);
    components_ = detail::dynkin_components(cartan_);
    for (const auto& comp : components_)
      compute_highest(comp);
  }

  static ReflectionSubgroup full(DatumPtr parent) {
    std::vector<int> s(parent->semisimple_rank());
    std::iota(s.begin(), s.end(), 0);
    return ReflectionSubgroup(std::move(parent), s);
  }

  const RootDatum& parent() const { return *parent_; }
  const DatumPtr& parent_ptr() const { return parent_; }
  const std::vector<int>& simple_indices() const { return simple_; }
  const std::vector<int>& root_indices() const { return roots_; }
  bool contains_root(int j) const { return member_.at(j) != 0; }
  std::size_t semisimple_rank() const { return simple_.size(); }
  const SmallMatrix& cartan() const { return cartan_; }
  std::string type_label() const { return detail::type_label_of(cartan_); }

  // Components as positions into simple_indices().
  const std::vector<std::vector<int>>& components() const { return components_; }
  // Parent index of the highest root of each component.
  const std::vector<int>& highest_roots() const { return highest_; }
  // Coefficients of each highest root on its component's simple roots.
  const std::vector<IntVec>& highest_marks() const { return marks_; }

  std::vector<WeylElement> generators() const {
    std::vector<WeylElement> g;
    for (int s : simple_)
      g.push_back(WeylElement::reflection(*parent_, s));
    return g;
  }

  std::string component_label(std::size_t c) const {
    CartanComponent t = detail::identify_component(cartan_, components_.at(c));
    return t.label();
  }

private:
  void compute_highest(const std::vector<int>& comp) {
    const RootDatum& rd = *parent_;
    int cur = simple_[comp.front()];
    IntVec marks(comp.size(), 0);
    marks[0] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t t = 0; t < comp.size(); ++t) {
        IntVec x = rd.root(cur).x;
        const IntVec& a = rd.root(simple_[comp[t]]).x;
        for (std::size_t i = 0; i < x.size(); ++i)
          x[i] += a[i];
        auto idx = rd.index_of_x(x);
        if (idx && member_[*idx]) {
          cur = *idx;
          ++marks[t];
          grew = true;
          break;
        }
      }
    }
    highest_.push_back(cur);
    marks_.push_back(marks);
  }

  DatumPtr parent_;
  std::vector<char> member_;
  std::vector<int> roots_;
  std::vector<int> simple_;
  SmallMatrix cartan_;
  std::vector<std::vector<int>> components_;
  std::vector<int> highest_;
  std::vector<IntVec> marks_;
};

inline ReflectionSubgroup reflection_subgroup(const DatumPtr& rd, const std::vector<int>& indices) {
  return ReflectionSubgroup(rd, indices);
}

} // namespace ssverify

#endif // SSVERIFY_ROOT_DATUM_HPP_
