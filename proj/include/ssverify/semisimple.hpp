#ifndef SSVERIFY_SEMISIMPLE_HPP_
#define SSVERIFY_SEMISIMPLE_HPP_

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lattice.hpp"
#include "root_datum.hpp"

namespace ssverify {

// TORUS ELEMENTS

// A point of Y (x) Q/Z stored as numerators over one common denominator, which
// is kept minimal and therefore equals the order of the element.
class TorusElement {
public:
  TorusElement() = default;
  TorusElement(std::int64_t den, IntVec nums) : den_(den), nums_(std::move(nums)) {
    if (den_ <= 0)
      throw DimensionMismatch("torus element denominator must be positive");
    normalize();
  }

  static TorusElement zero(std::size_t rank) { return TorusElement(1, IntVec(rank, 0)); }

  static TorusElement from_coords(const std::vector<Rat01>& c) {
    std::int64_t den = 1;
    for (const auto& r : c)
      den = std::lcm(den, r.den);
    IntVec nums(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      nums[i] = c[i].num * (den / c[i].den);
    return TorusElement(den, nums);
  }

  static TorusElement from_rationals(const std::vector<Rational>& v) {
    std::vector<Rat01> c;
    for (const auto& x : v)
      c.emplace_back(to_int64(boost::multiprecision::numerator(x)), to_int64(boost::multiprecision::denominator(x)));
    return from_coords(c);
  }

  // "<0,1/3,0,2/3,0,0>"
  static TorusElement parse(const std::string& text) {
    std::string t;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch)))
        t += ch;
    if (t.size() < 2 || t.front() != '<' || t.back() != '>')
      throw ParseError("torus element must look like <a,b/c,...>: " + text);
    t = t.substr(1, t.size() - 2);
    std::vector<Rat01> c;
    std::size_t pos = 0;
    while (pos <= t.size()) {
      std::size_t end = t.find(',', pos);
      if (end == std::string::npos)
        end = t.size();
      std::string part = t.substr(pos, end - pos);
      try {
        std::size_t slash = part.find('/');
        if (slash == std::string::npos)
          c.emplace_back(std::stoll(part), 1);
        else
          c.emplace_back(std::stoll(part.substr(0, slash)), std::stoll(part.substr(slash + 1)));
      } catch (const std::exception&) {
        throw ParseError("bad coordinate '" + part + "'");
      }
      pos = end + 1;
    }
    return from_coords(c);
  }

  std::size_t rank() const { return nums_.size(); }
  std::int64_t denominator() const { return den_; }
  const IntVec& numerators() const { return nums_; }
  std::int64_t order() const { return den_; }
  Rat01 coord(std::size_t i) const { return Rat01(nums_.at(i), den_); }
  std::vector<Rat01> coords() const {
    std::vector<Rat01> c;
    for (std::size_t i = 0; i < nums_.size(); ++i)
      c.push_back(coord(i));
    return c;
  }
  bool is_identity() const { return den_ == 1; }

  // Group law of the torus (often written multiplicatively, s*z).
  friend TorusElement operator+(const TorusElement& a, const TorusElement& b) {
    if (a.rank() != b.rank())
      throw DimensionMismatch("torus elements of different rank");
    const std::int64_t den = std::lcm(a.den_, b.den_);
    IntVec n(a.rank());
    for (std::size_t i = 0; i < n.size(); ++i)
      n[i] = a.nums_[i] * (den / a.den_) + b.nums_[i] * (den / b.den_);
    return TorusElement(den, n);
  }
  TorusElement scaled(std::int64_t k) const {
    IntVec n = nums_;
    for (auto& x : n)
      x = ((x * (k % den_)) % den_ + den_) % den_;
    return TorusElement(den_, n);
  }

  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < nums_.size(); ++i)
      s += (i ? "," : "") + coord(i).str();
    return s + ">";
  }

  friend bool operator==(const TorusElement& a, const TorusElement& b) {
    return a.den_ == b.den_ && a.nums_ == b.nums_;
  }
  friend bool operator!=(const TorusElement& a, const TorusElement& b) { return !(a == b); }
  // Lexicographic on coordinate values.
  friend bool operator<(const TorusElement& a, const TorusElement& b) {
    for (std::size_t i = 0; i < a.nums_.size() && i < b.nums_.size(); ++i) {
      const __int128 l = static_cast<__int128>(a.nums_[i]) * b.den_;
      const __int128 r = static_cast<__int128>(b.nums_[i]) * a.den_;
      if (l != r)
        return l < r;
    }
    return a.nums_.size() < b.nums_.size();
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::int64_t>()(den_);
    for (auto x : nums_)
      h = h * 1000003u ^ std::hash<std::int64_t>()(x);
    return h;
  }

private:
  void normalize() {
    std::int64_t g = den_;
    for (auto& x : nums_) {
      x %= den_;
      if (x < 0)
        x += den_;
      g = std::gcd(g, x);
    }
    if (g > 1) {
      den_ /= g;
      for (auto& x : nums_)
        x /= g;
    }
  }

  std::int64_t den_ = 1;
  IntVec nums_;
};

struct TorusElementHash {
  std::size_t operator()(const TorusElement& s) const { return s.hash(); }
};

using TorusSet = std::unordered_set<TorusElement, TorusElementHash>;

inline std::int64_t element_order(const TorusElement& s) { return s.order(); }

// <alpha, s> mod 1 for the root with the given index.
inline Rat01 pair_root(const RootDatum& rd, const TorusElement& s, int root) {
  if (root < 0 || root >= static_cast<int>(rd.num_roots()))
    throw BadIndex("root index " + std::to_string(root));
  if (s.rank() != rd.rank())
    throw DimensionMismatch("torus element rank");
  return Rat01(dot(rd.root(root).x, s.numerators()), s.denominator());
}

// Action of a Y-matrix on a torus element.
inline TorusElement act(const SmallMatrix& m, const TorusElement& s) {
  return TorusElement(s.denominator(), m.apply(s.numerators()));
}
inline TorusElement act(const WeylElement& w, const TorusElement& s) { return act(w.matrix(), s); }

// s - <alpha, s> alpha^vee for a root of the datum.
inline TorusElement reflect(const RootDatum& rd, int root, const TorusElement& s) {
  const Root& r = rd.root(root);
  const std::int64_t p = dot(r.x, s.numerators());
  if (p % s.denominator() == 0)
    return s;
  IntVec n = s.numerators();
  for (std::size_t a = 0; a < n.size(); ++a)
    n[a] -= p * r.y[a];
  return TorusElement(s.denominator(), n);
}

inline std::size_t orbit_cap() {
  if (const char* env = std::getenv("SSVERIFY_ORBIT_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw ParseError("SSVERIFY_ORBIT_CAP must be a positive integer");
    }
  }
  return 10000000;
}

// BFS closure of s under the reflections in the given roots; sorted.
inline std::vector<TorusElement> orbit_by_reflections(const RootDatum& rd, const std::vector<int>& roots,
                                                      const TorusElement& s, std::size_t cap = orbit_cap()) {
  TorusSet seen{s};
  std::vector<TorusElement> todo{s};
  while (!todo.empty()) {
    TorusElement t = std::move(todo.back());
    todo.pop_back();
    for (int r : roots) {
      TorusElement u = reflect(rd, r, t);
      if (seen.insert(u).second) {
        if (seen.size() > cap)
          throw OrbitBound("orbit exceeds " + std::to_string(cap) + " elements");
        todo.push_back(std::move(u));
      }
    }
  }
  std::vector<TorusElement> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<TorusElement> orbit(const std::vector<WeylElement>& gens, const TorusElement& s,
                                       std::size_t cap = orbit_cap()) {
  TorusSet seen{s};
  std::vector<TorusElement> todo{s};
  while (!todo.empty()) {
    TorusElement t = std::move(todo.back());
    todo.pop_back();
    for (const auto& g : gens) {
      TorusElement u = act(g, t);
      if (seen.insert(u).second) {
        if (seen.size() > cap)
          throw OrbitBound("orbit exceeds " + std::to_string(cap) + " elements");
        todo.push_back(std::move(u));
      }
    }
  }
  std::vector<TorusElement> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct OrbitStabilizer {
  std::vector<TorusElement> orbit;
  std::vector<WeylElement> stabilizer_gens;
};

// Schreier generators u_{g.o}^-1 g u_o of the stabilizer.
inline OrbitStabilizer stabilizer(const RootDatum& rd, const std::vector<WeylElement>& gens, const TorusElement& s,
                                  std::size_t cap = orbit_cap()) {
  std::unordered_map<TorusElement, WeylElement, TorusElementHash> transversal;
  transversal.emplace(s, WeylElement::identity(rd));
  std::vector<TorusElement> order{s};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const TorusElement o = order[k];
    const WeylElement u = transversal.at(o);
    for (const auto& g : gens) {
      TorusElement img = act(g, o);
      if (!transversal.count(img)) {
        if (transversal.size() >= cap)
          throw OrbitBound("orbit exceeds " + std::to_string(cap) + " elements");
        transversal.emplace(img, g * u);
        order.push_back(img);
      }
    }
  }
  OrbitStabilizer out;
  std::set<std::vector<int>> seen;
  for (const auto& o : order) {
    const WeylElement& u = transversal.at(o);
    for (const auto& g : gens) {
      const WeylElement& v = transversal.at(act(g, o));
      WeylElement h = v.inverse(rd) * g * u;
      if (h.is_identity() || !seen.insert(h.perm()).second)
        continue;
      out.stabilizer_gens.push_back(WeylElement::from_perm(rd, h.perm()));
    }
  }
  out.orbit = order;
  std::sort(out.orbit.begin(), out.orbit.end());
  return out;
}

// CENTRE AND TORSION

struct AlgebraicCentre {
  Lattice z0;            // Y(Z(M)°)
  FinAbGroup component;  // Z(M) / Z(M)°
};

inline AlgebraicCentre algebraic_centre(const ReflectionSubgroup& m) {
  const RootDatum& rd = m.parent();
  const std::size_t r = rd.rank();
  IntMatrix rm(m.simple_indices().size(), r);
  for (std::size_t i = 0; i < m.simple_indices().size(); ++i)
    for (std::size_t a = 0; a < r; ++a)
      rm(i, a) = rd.root(m.simple_indices()[i]).x[a];
  AlgebraicCentre c;
  c.z0 = rm.rows() ? saturated_kernel(rm.transpose()) : Lattice::full(r);
  std::vector<BigInt> tors;
  if (rm.rows()) {
    SmithForm f = smith_normal_form(rm);
    for (std::size_t i = 0; i < rm.rows(); ++i)
      if (f.S(i, i) > 1)
        tors.push_back(f.S(i, i));
  }
  c.component = FinAbGroup::from_cyclic(tors);
  return c;
}

// Elements of order dividing n of the subtorus with cocharacter lattice s.
inline std::vector<TorusElement> torsion_subgroup(const Lattice& s, std::int64_t n) {
  if (n < 1)
    throw DimensionMismatch("torsion order must be positive");
  const std::size_t r = s.ambient_rank(), k = s.rank();
  std::vector<IntVec> basis;
  for (std::size_t i = 0; i < k; ++i) {
    IntVec b(r);
    for (std::size_t a = 0; a < r; ++a)
      b[a] = to_int64(s.basis()(i, a) % n);
    basis.push_back(b);
  }
  TorusSet seen;
  std::vector<TorusElement> out;
  IntVec coeff(k, 0);
  for (;;) {
    IntVec v(r, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = 0; a < r; ++a)
        v[a] += coeff[i] * basis[i][a];
    TorusElement t(n, v);
    if (seen.insert(t).second)
      out.push_back(t);
    std::size_t i = 0;
    while (i < k && ++coeff[i] == n)
      coeff[i++] = 0;
    if (i == k)
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ALCOVE GEOMETRY

// Affine Weyl group data of a reflection subgroup H acting on Y (x) Q: walls of
// the fundamental alcove and representatives of Y_H / Q^vee_H, where Y_H is Y
// intersected with the span of the coroots of H.
class AlcoveSystem {
public:
  explicit AlcoveSystem(ReflectionSubgroup h) : h_(std::move(h)) {
    const RootDatum& rd = h_.parent();
    r_ = rd.rank();
    for (int s : h_.simple_indices())
      walls_.push_back(s);
    for (int t : h_.highest_roots())
      affine_.push_back(t);
    const std::size_t k = walls_.size();
    IntMatrix coroots(k, r_);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = 0; a < r_; ++a)
        coroots(i, a) = rd.root(walls_[i]).y[a];
    Lattice yh = saturation(coroots, r_);
    full_translations_ = yh.rank() == r_ && yh == Lattice::full(r_);
    if (k == 0) {
      omega_.push_back(IntVec(r_, 0));
      return;
    }
    // coroots in the basis of Y_H, then Y_H / Q^vee_H via Smith form
    IntMatrix cc(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      auto c = yh.coordinates(coroots.row(i));
      for (std::size_t j = 0; j < k; ++j)
        cc(i, j) = (*c)[j];
    }
    SmithForm f = smith_normal_form(cc);
    IntMatrix qinv = to_integral(inverse(f.Q.cast<Rational>()));
    std::vector<std::int64_t> d(k);
    for (std::size_t i = 0; i < k; ++i)
      d[i] = to_int64(f.S(i, i));
    IntVec e(k, 0);
    for (;;) {
      std::vector<BigInt> u(k, BigInt(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          u[j] += BigInt(e[i]) * qinv(i, j);
      IntVec y(r_, 0);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t a = 0; a < r_; ++a)
          y[a] += to_int64(u[j] * yh.basis()(j, a));
      omega_.push_back(y);
      std::size_t i = 0;
      while (i < k && ++e[i] >= d[i])
        e[i++] = 0;
      if (i == k)
        break;
    }
  }

  const ReflectionSubgroup& group() const { return h_; }
  const RootDatum& datum() const { return h_.parent(); }
  const std::vector<IntVec>& omega_reps() const { return omega_; }
  // True when Y_H = Y, so that W_H-orbits on the torus are alcove points mod Omega.
  bool full_translations() const { return full_translations_; }

  // Moves v/den into the closed fundamental alcove by wall reflections. The
  // linear parts applied (root indices, first applied first) go to trail.
  void reduce(IntVec& v, std::int64_t den, std::vector<int>* trail = nullptr) const {
    const RootDatum& rd = h_.parent();
    for (std::size_t step = 0;; ++step) {
      if (step > 1000000)
        throw OrbitBound("alcove reduction did not terminate");
      bool moved = false;
      for (int w : walls_) {
        const Root& a = rd.root(w);
        const std::int64_t p = dot(a.x, v);
        if (p < 0) {
          for (std::size_t i = 0; i < r_; ++i)
            v[i] -= p * a.y[i];
          if (trail)
            trail->push_back(w);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      for (int t : affine_) {
        const Root& a = rd.root(t);
        const std::int64_t p = dot(a.x, v);
        if (p > den) {
          const std::int64_t k = p - den;
          for (std::size_t i = 0; i < r_; ++i)
            v[i] -= k * a.y[i];
          if (trail)
            trail->push_back(t);
          moved = true;
          break;
        }
      }
      if (!moved)
        return;
    }
  }

  // Root indices of the walls through the alcove point v/den.
  std::vector<int> walls_through(const IntVec& v, std::int64_t den) const {
    const RootDatum& rd = h_.parent();
    std::vector<int> out;
    for (int w : walls_)
      if (dot(rd.root(w).x, v) == 0)
        out.push_back(w);
    for (int t : affine_)
      if (dot(rd.root(t).x, v) == den)
        out.push_back(t);
    return out;
  }

  // Linear part of the elements mapping the alcove point mu to itself through
  // a nonzero Omega coset: one matrix per such coset.
  std::vector<SmallMatrix> omega_stabilizer(const IntVec& mu, std::int64_t den) const {
    const RootDatum& rd = h_.parent();
    std::vector<SmallMatrix> out;
    for (std::size_t k = 1; k < omega_.size(); ++k) {
      IntVec v = mu;
      for (std::size_t a = 0; a < r_; ++a)
        v[a] += den * omega_[k][a];
      std::vector<int> trail;
      reduce(v, den, &trail);
      if (v != mu)
        continue;
      SmallMatrix g = SmallMatrix::identity(r_);
      for (int t : trail)
        g = rd.reflection_matrix(t) * g;
      out.push_back(g);
    }
    return out;
  }

private:
  ReflectionSubgroup h_;
  std::size_t r_ = 0;
  std::vector<int> walls_;
  std::vector<int> affine_;
  std::vector<IntVec> omega_;
  bool full_translations_ = false;
};

// Alcove point of the W_H-orbit of s, as numerators over s.denominator().
inline IntVec alcove_point(const AlcoveSystem& h, const TorusElement& s, std::vector<int>* trail = nullptr) {
  IntVec v = s.numerators();
  h.reduce(v, s.denominator(), trail);
  return v;
}

// Canonical representative of the W-orbit of s: minimum over the Omega
// translates of the alcove point.
inline TorusElement canonical_form(const AlcoveSystem& g, const TorusElement& s) {
  if (!g.full_translations())
    throw NotSemisimple("canonical forms need Y spanned rationally by the coroots");
  if (s.rank() != g.datum().rank())
    throw DimensionMismatch("torus element rank");
  const std::int64_t den = s.denominator();
  const IntVec mu = alcove_point(g, s);
  TorusElement best(den, mu);
  for (std::size_t k = 1; k < g.omega_reps().size(); ++k) {
    IntVec v = mu;
    for (std::size_t a = 0; a < v.size(); ++a)
      v[a] += den * g.omega_reps()[k][a];
    g.reduce(v, den);
    TorusElement t(den, v);
    if (t < best)
      best = t;
  }
  return best;
}

// Rank of the linear conditions cutting out the fixed space of stab_{W_H}(s).
inline std::size_t stabilizer_constraint_rank(const AlcoveSystem& h, const TorusElement& s) {
  const RootDatum& rd = h.datum();
  const std::size_t r = rd.rank();
  const std::int64_t den = s.denominator();
  const IntVec mu = alcove_point(h, s);
  SmallMatrix rows(0, r);
  for (int w : h.walls_through(mu, den))
    rows.append_row(rd.root(w).x);
  for (const SmallMatrix& g : h.omega_stabilizer(mu, den)) {
    SmallMatrix d = g - SmallMatrix::identity(r);
    for (std::size_t i = 0; i < r; ++i)
      rows.append_row(d.row(i));
  }
  return rows.rows() ? rank_small(rows) : 0;
}

// s is quasi-isolated in H iff the fixed space of stab_{W_H}(s) is the fixed
// space of W_H, i.e. the stabilizer constraints have full rank |Delta_H|.
inline bool is_quasi_isolated(const AlcoveSystem& h, const TorusElement& s) {
  return stabilizer_constraint_rank(h, s) == h.group().semisimple_rank();
}

// Isolated: the connected centralizer already has semisimple rank |Delta_H|.
inline bool is_isolated(const AlcoveSystem& h, const TorusElement& s) {
  const RootDatum& rd = h.datum();
  const IntVec mu = alcove_point(h, s);
  SmallMatrix rows(0, rd.rank());
  for (int w : h.walls_through(mu, s.denominator()))
    rows.append_row(rd.root(w).x);
  return (rows.rows() ? rank_small(rows) : 0) == h.group().semisimple_rank();
}

// CENTRALIZERS

struct ExtendedCentralizer {
  ReflectionSubgroup connected;
  std::vector<WeylElement> component_gens;
  std::size_t component_order = 1;

  std::string type_label() const { return connected.type_label(); }
  std::string str() const {
    std::string s = "Extended(ReflectionSubgroup(" + type_label() + ", [";
    const auto& idx = connected.simple_indices();
    for (std::size_t i = 0; i < idx.size(); ++i)
      s += (i ? ", " : "") + std::to_string(idx[i] + 1);
    s += "]), component order " + std::to_string(component_order) + ")";
    return s;
  }
};

// Roots with <alpha, s> in Z.
inline std::vector<int> integral_roots(const RootDatum& rd, const TorusElement& s) {
  std::vector<int> out;
  for (std::size_t k = 0; k < rd.num_roots(); ++k)
    if (dot(rd.root(k).x, s.numerators()) % s.denominator() == 0)
      out.push_back(static_cast<int>(k));
  return out;
}

inline ExtendedCentralizer centralizer(const AlcoveSystem& g, const TorusElement& s) {
  const RootDatum& rd = g.datum();
  if (!g.group().root_indices().empty() && g.group().root_indices().size() != rd.num_roots())
    throw DimensionMismatch("centralizer expects the alcove system of the whole group");
  ExtendedCentralizer c;
  std::vector<int> pos;
  for (int k : integral_roots(rd, s))
    if (rd.is_positive(k))
      pos.push_back(k);
  c.connected = ReflectionSubgroup(g.group().parent_ptr(), pos);

  std::vector<int> trail;
  const IntVec mu = alcove_point(g, s, &trail);
  SmallMatrix w0 = SmallMatrix::identity(rd.rank());
  std::vector<int> w0_word;
  for (int t : trail) {
    std::vector<int> wt = rd.reflection_word(t);
    w0_word.insert(w0_word.begin(), wt.begin(), wt.end());
  }
  WeylElement w = WeylElement::from_word(rd, w0_word);
  WeylElement winv = w.inverse(rd);
  const auto stab = g.omega_stabilizer(mu, s.denominator());
  c.component_order = 1 + stab.size();
  std::set<std::vector<int>> seen;
  for (const SmallMatrix& m : stab) {
    auto perm = rd.perm_of_y_matrix(m);
    if (!perm)
      throw DimensionMismatch("stabilizer element does not permute the coroots");
    WeylElement h = winv * WeylElement::from_perm(rd, *perm) * w;
    // canonical coset representative: maps the simple roots of Phi_s to positive roots
    std::vector<int> p = h.perm();
    for (bool changed = true; changed;) {
      changed = false;
      for (int b : c.connected.simple_indices())
        if (!rd.is_positive(p[b])) {
          std::vector<int> q(p.size());
          for (std::size_t j = 0; j < p.size(); ++j)
            q[j] = p[rd.reflect_root(b, static_cast<int>(j))];
          p.swap(q);
          changed = true;
        }
    }
    if (seen.insert(p).second)
      c.component_gens.push_back(WeylElement::from_perm(rd, p));
  }
  return c;
}

// CLASSIFICATION

// Points of the closed alcove of the whole group whose element order divides
// m, given by Kac coordinates.
inline std::vector<TorusElement> kac_points(const AlcoveSystem& g, std::int64_t m) {
  const RootDatum& rd = g.datum();
  const ReflectionSubgroup& h = g.group();
  const std::size_t n = rd.semisimple_rank(), r = rd.rank();
  if (n != r)
    throw NotSemisimple("Kac coordinates need a semisimple datum");
  RatMatrix rinv = inverse(rd.simple_roots().cast<Rational>());
  // common denominator D so that D * R^-1 is integral
  BigInt dd = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      BigInt d = denominator(rinv(i, j));
      dd = dd / gcd_big(dd, d) * d;
    }
  const std::int64_t D = to_int64(dd);
  SmallMatrix radj(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      radj(i, j) = to_int64(numerator(rinv(i, j) * Rational(dd)));

  // per component: all a >= 0 with sum marks * a <= m
  std::vector<std::vector<IntVec>> per_comp;
  for (std::size_t c = 0; c < h.components().size(); ++c) {
    const auto& comp = h.components()[c];
    const IntVec& marks = h.highest_marks()[c];
    std::vector<IntVec> sols;
    IntVec a(comp.size(), 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
      if (i == comp.size()) {
        sols.push_back(a);
        return;
      }
      for (std::int64_t v = 0; v * marks[i] <= left; ++v) {
        a[i] = v;
        rec(i + 1, left - v * marks[i]);
      }
      a[i] = 0;
    };
    rec(0, m);
    per_comp.push_back(sols);
  }
  std::vector<TorusElement> out;
  IntVec a(n, 0);
  std::function<void(std::size_t)> combine = [&](std::size_t c) {
    if (c == per_comp.size()) {
      // mu = R^-1 a / m must satisfy m mu in Z^r
      IntVec num = radj.apply(a);
      for (auto x : num)
        if (x % D != 0)
          return;
      for (auto& x : num)
        x /= D;
      out.emplace_back(m, num);
      return;
    }
    const auto& comp = h.components()[c];
    for (const IntVec& sol : per_comp[c]) {
      for (std::size_t i = 0; i < comp.size(); ++i)
        a[h.simple_indices()[comp[i]]] = sol[i];
      combine(c + 1);
    }
  };
  combine(0);
  return out;
}

// One representative per W-orbit of quasi-isolated elements of order at most
// bound, sorted by (order, coordinates).
inline std::vector<TorusElement> quasi_isolated_representatives(const AlcoveSystem& g, std::int64_t bound) {
  if (bound < 1)
    throw DimensionMismatch("order bound must be positive");
  std::set<std::pair<std::int64_t, TorusElement>> reps;
  for (std::int64_t m = bound / 2 + 1; m <= bound; ++m)
    for (const TorusElement& s : kac_points(g, m))
      if (is_quasi_isolated(g, s)) {
        TorusElement c = canonical_form(g, s);
        reps.emplace(c.order(), c);
      }
  std::vector<TorusElement> out;
  for (const auto& [o, s] : reps)
    out.push_back(s);
  return out;
}

// All W-orbit representatives (canonical forms) of elements of order at most bound.
inline std::vector<TorusElement> all_classes(const AlcoveSystem& g, std::int64_t bound) {
  std::set<std::pair<std::int64_t, TorusElement>> reps;
  for (std::int64_t m = bound / 2 + 1; m <= bound; ++m)
    for (const TorusElement& s : kac_points(g, m)) {
      TorusElement c = canonical_form(g, s);
      reps.emplace(c.order(), c);
    }
  std::vector<TorusElement> out;
  for (const auto& [o, s] : reps)
    out.push_back(s);
  return out;
}

} // namespace ssverify

#endif // SSVERIFY_SEMISIMPLE_HPP_
