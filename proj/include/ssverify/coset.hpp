#ifndef SSVERIFY_COSET_HPP_
#define SSVERIFY_COSET_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "root_datum.hpp"
#include "semisimple.hpp"
#include "torus.hpp"

namespace ssverify {

using Perm = std::vector<int>;

namespace detail {

inline Perm compose(const Perm& a, const Perm& b) { // a after b
  Perm c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    c[j] = a[b[j]];
  return c;
}

inline Perm invert(const Perm& a) {
  Perm c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    c[a[j]] = static_cast<int>(j);
  return c;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 0;
    for (int x : p)
      h = h * 131u + static_cast<std::size_t>(x);
    return h;
  }
};

} // namespace detail

// Set stabilizer of the roots of M in W, by Schreier generators on the orbit
// of that root set; returned as root permutations.
inline std::vector<Perm> normalizer_gens(const ReflectionSubgroup& m, std::size_t cap = orbit_cap()) {
  const RootDatum& rd = m.parent();
  const std::size_t nr = rd.num_roots();
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < rd.semisimple_rank(); ++i)
    gens.push_back(rd.simple_reflection_perm(i));
  auto image = [&](const Perm& g, const std::vector<int>& set) {
    std::vector<int> out;
    for (int j : set)
      out.push_back(g[j]);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::map<std::vector<int>, Perm> transversal;
  Perm id(nr);
  std::iota(id.begin(), id.end(), 0);
  transversal.emplace(m.root_indices(), id);
  std::vector<std::vector<int>> order{m.root_indices()};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Perm u = transversal.at(order[k]);
    for (const auto& g : gens) {
      auto img = image(g, order[k]);
      if (!transversal.count(img)) {
        if (transversal.size() >= cap)
          throw OrbitBound("root-set orbit exceeds " + std::to_string(cap));
        transversal.emplace(img, detail::compose(g, u));
        order.push_back(img);
      }
    }
  }
  std::set<Perm> out;
  for (const auto& o : order) {
    const Perm& u = transversal.at(o);
    for (const auto& g : gens) {
      Perm h = detail::compose(detail::invert(transversal.at(image(g, o))), detail::compose(g, u));
      if (h != id)
        out.insert(h);
    }
  }
  return {out.begin(), out.end()};
}

// Size of the W-orbit of the root set of M (so |N_W(W_M)| = |W| / this).
inline std::size_t root_set_orbit_size(const ReflectionSubgroup& m) {
  const RootDatum& rd = m.parent();
  std::set<std::vector<int>> seen{m.root_indices()};
  std::vector<std::vector<int>> todo{m.root_indices()};
  while (!todo.empty()) {
    auto s = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < rd.semisimple_rank(); ++i) {
      std::vector<int> img;
      for (int j : s)
        img.push_back(rd.simple_reflection_perm(i)[j]);
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second)
        todo.push_back(img);
    }
  }
  return seen.size();
}

struct Twist {
  ReflectionSubgroup levi;
  WeylElement w;
  SmallMatrix phi;          // diagram automorphism part on Y
  SmallMatrix action;       // w * phi on Y
  TwistedTorus radical;     // Y(Z(M)°) with the restriction of w * phi
  CycloFactorization radical_poly;
  std::vector<std::vector<int>> component_orbits; // 1-based root labels per orbit
  std::string name;

  std::string poly_text() const { return order_polynomial_text(radical_poly); }
  std::string display() const { return name + "." + poly_text(); }
};

// Twistings of the Levi M: classes of N_W(W_M)/W_M under t -> n t phi(n)^-1.
// phi (a diagram automorphism on Y) must stabilize the root set of M.
class TwistingsBuilder {
public:
  TwistingsBuilder(const ReflectionSubgroup& m, const SmallMatrix& phi, std::size_t quotient_cap = 1000000)
      : m_(m), phi_(phi), cap_(quotient_cap) {}

  std::vector<Twist> run() const {
    const RootDatum& rd = m_.parent();
    auto phi_perm_opt = rd.perm_of_y_matrix(phi_);
    if (!phi_perm_opt)
      throw DimensionMismatch("phi does not permute the coroots");
    const Perm phi_perm = *phi_perm_opt;
    for (int j : m_.root_indices())
      if (!m_.contains_root(phi_perm[j]))
        throw DimensionMismatch("phi does not stabilize the roots of M");
    const Perm phi_inv = detail::invert(phi_perm);

    // canonical representatives of N / W_M
    std::vector<Perm> gens;
    {
      std::set<Perm> g;
      for (const Perm& p : normalizer_gens(m_))
        g.insert(canonical(p));
      Perm id(rd.num_roots());
      std::iota(id.begin(), id.end(), 0);
      g.erase(id);
      gens.assign(g.begin(), g.end());
    }
    Perm id(rd.num_roots());
    std::iota(id.begin(), id.end(), 0);
    std::unordered_map<Perm, std::size_t, detail::PermHash> index{{id, 0}};
    std::vector<Perm> elems{id};
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (const Perm& g : gens) {
        Perm h = canonical(detail::compose(g, elems[k]));
        if (index.emplace(h, elems.size()).second) {
          if (elems.size() >= cap_)
            throw QuotientTooLarge("N/W_M exceeds " + std::to_string(cap_) + " cosets");
          elems.push_back(std::move(h));
        }
      }
    // phi-conjugacy classes
    std::vector<int> cls(elems.size(), -1);
    std::vector<Perm> reps;
    for (std::size_t s = 0; s < elems.size(); ++s) {
      if (cls[s] >= 0)
        continue;
      const int c = static_cast<int>(reps.size());
      Perm best = elems[s];
      std::vector<std::size_t> todo{s};
      cls[s] = c;
      while (!todo.empty()) {
        const Perm t = elems[todo.back()];
        todo.pop_back();
        for (const Perm& n : gens) {
          // n t phi(n)^-1 with phi(n) = phi n phi^-1
          Perm phin_inv = detail::compose(phi_perm, detail::compose(detail::invert(n), phi_inv));
          Perm u = canonical(detail::compose(n, detail::compose(t, phin_inv)));
          std::size_t ui = index.at(u);
          if (cls[ui] < 0) {
            cls[ui] = c;
            todo.push_back(ui);
            if (u < best)
              best = u;
          }
        }
      }
      reps.push_back(best);
    }
    quotient_order_ = elems.size();

    std::vector<Twist> out;
    for (const Perm& p : reps)
      out.push_back(make_twist(WeylElement::from_perm(rd, p)));
    std::sort(out.begin(), out.end(), [](const Twist& a, const Twist& b) {
      const std::string ta = a.poly_text(), tb = b.poly_text();
      if (ta != tb)
        return ta < tb;
      if (a.component_orbits != b.component_orbits)
        return a.component_orbits < b.component_orbits;
      return a.w.perm() < b.w.perm();
    });
    return out;
  }

  std::size_t quotient_order() const { return quotient_order_; }

  Twist make_twist(const WeylElement& w) const {
    const RootDatum& rd = m_.parent();
    Twist t;
    t.levi = m_;
    t.w = w;
    t.phi = phi_;
    t.action = w.matrix() * phi_;
    auto act_perm = rd.perm_of_y_matrix(t.action);
    for (int j : m_.root_indices())
      if (!m_.contains_root((*act_perm)[j]))
        throw DimensionMismatch("twist does not normalize the roots of M");

    // restriction of w phi to Y(Z(M)°)
    Lattice z0 = algebraic_centre(m_).z0;
    const std::size_t k = z0.rank();
    IntMatrix res(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      IntVec b(rd.rank());
      for (std::size_t a = 0; a < rd.rank(); ++a)
        b[a] = to_int64(z0.basis()(i, a));
      IntVec img = t.action.apply(b);
      std::vector<BigInt> big(img.begin(), img.end());
      auto c = z0.coordinates(big);
      if (!c)
        throw DimensionMismatch("twist does not preserve the central torus");
      for (std::size_t j = 0; j < k; ++j)
        res(j, i) = (*c)[j];
    }
    t.radical = TwistedTorus(z0, res);
    t.radical_poly = cyclo_factor(t.radical);

    // orbits of w phi on the components of M
    const auto& comps = m_.components();
    std::vector<std::set<int>> croots;
    for (std::size_t c = 0; c < comps.size(); ++c)
      croots.push_back(component_roots(c));
    auto comp_of = [&](int root) {
      const int r = rd.is_positive(root) ? root : rd.negative(root);
      for (std::size_t c = 0; c < comps.size(); ++c)
        if (croots[c].count(r))
          return static_cast<int>(c);
      throw DimensionMismatch("root outside the components of M");
    };
    std::vector<int> seen(comps.size(), 0);
    std::string name;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (seen[c])
        continue;
      std::vector<int> orbit;
      for (int cur = static_cast<int>(c); !seen[cur];) {
        seen[cur] = 1;
        orbit.push_back(cur);
        cur = comp_of((*act_perm)[m_.simple_indices()[comps[cur].front()]]);
      }
      std::vector<int> labels;
      std::string types;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        types += (i ? "x" : "") + m_.component_label(orbit[i]);
        for (int pos : comps[orbit[i]])
          labels.push_back(m_.simple_indices()[pos] + 1);
      }
      t.component_orbits.push_back(labels);
      std::string lab;
      for (std::size_t i = 0; i < labels.size(); ++i)
        lab += (i ? "," : "") + std::to_string(labels[i]);
      if (!name.empty())
        name += "x";
      name += (orbit.size() > 1 ? "(" + types + ")" : types) + "<" + lab + ">";
    }
    t.name = comps.empty() ? "()" : name;
    return t;
  }

private:
  // Representative of t W_M sending the simple roots of M to positive roots.
  Perm canonical(Perm p) const {
    const RootDatum& rd = m_.parent();
    for (bool changed = true; changed;) {
      changed = false;
      for (int b : m_.simple_indices())
        if (!rd.is_positive(p[b])) {
          Perm q(p.size());
          for (std::size_t j = 0; j < p.size(); ++j)
            q[j] = p[rd.reflect_root(b, static_cast<int>(j))];
          p.swap(q);
          changed = true;
        }
    }
    return p;
  }

  std::set<int> component_roots(std::size_t c) const {
    const RootDatum& rd = m_.parent();
    std::vector<int> simple;
    for (int pos : m_.components()[c])
      simple.push_back(m_.simple_indices()[pos]);
    ReflectionSubgroup sub(m_.parent_ptr(), simple);
    std::set<int> out;
    for (int j : sub.root_indices())
      if (rd.is_positive(j))
        out.insert(j);
    return out;
  }

  ReflectionSubgroup m_;
  SmallMatrix phi_;
  std::size_t cap_;
  mutable std::size_t quotient_order_ = 0;
};

inline std::vector<Twist> twistings(const ReflectionSubgroup& m, const SmallMatrix& phi) {
  return TwistingsBuilder(m, phi).run();
}
inline std::vector<Twist> twistings(const ReflectionSubgroup& m) {
  return twistings(m, SmallMatrix::identity(m.parent().rank()));
}

// s is fixed by F = q * (w phi).
inline bool frobenius_fixed(const Twist& t, std::int64_t q, const TorusElement& s) {
  const std::int64_t den = s.denominator();
  IntVec img = t.action.apply(s.numerators());
  for (std::size_t a = 0; a < img.size(); ++a)
    if ((((q % den) * (img[a] % den) - s.numerators()[a]) % den) != 0)
      return false;
  return true;
}

inline std::vector<TorusElement> frobenius_fixed_elements(const Twist& t, std::int64_t q,
                                                          const std::vector<TorusElement>& elems) {
  std::vector<TorusElement> out;
  for (const auto& s : elems)
    if (frobenius_fixed(t, q, s))
      out.push_back(s);
  return out;
}

inline std::set<std::int64_t> fixed_order_profile(const Twist& t, std::int64_t q,
                                                  const std::vector<TorusElement>& elems) {
  std::set<std::int64_t> out;
  for (const auto& s : elems)
    if (frobenius_fixed(t, q, s))
      out.insert(s.order());
  return out;
}

} // namespace ssverify

#endif // SSVERIFY_COSET_HPP_
