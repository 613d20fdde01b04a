#ifndef SSVERIFY_HARNESS_HPP_
#define SSVERIFY_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "coset.hpp"
#include "root_datum.hpp"
#include "semisimple.hpp"
#include "torus.hpp"

namespace ssverify {

using Json = nlohmann::ordered_json;

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs f(0..n-1) on up to `threads` workers. Results must go to per-index
// slots; the lowest-index exception is rethrown.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t k = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < k; ++t)
    pool.emplace_back(work);
  for (auto& t : pool)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

// CALCUL

struct CaseSpec {
  int id = 0;
  std::string group;           // Cartan label, e.g. "E7"
  Isogeny isogeny = Isogeny::adjoint;
  std::vector<int> levi;       // 1-based simple root labels
  std::string levi_type;
  std::vector<std::int64_t> n_values;
  std::int64_t bound = 6;      // order <= bound
  std::int64_t check_bound = 0; // rerun with this bound and require the same verdict (0: skip)
};

inline const std::vector<CaseSpec>& calcul_cases() {
  static const std::vector<CaseSpec> cases{
      {1, "E6", Isogeny::adjoint, {1, 3, 5, 6}, "A2xA2", {3}, 6, 0},
      {2, "E7", Isogeny::simply_connected, {1, 2, 3, 4, 5, 6}, "E6", {4}, 4, 8},
      {3, "E7", Isogeny::adjoint, {2, 5, 7}, "A1xA1xA1", {4, 6}, 6, 0},
      {4, "E8", Isogeny::adjoint, {1, 2, 3, 4, 5, 6, 7}, "E7", {3, 5}, 6, 0},
      {5, "E8", Isogeny::adjoint, {1, 2, 3, 4, 5, 6}, "E6", {2}, 6, 0},
  };
  return cases;
}

inline const CaseSpec& calcul_case(int id) {
  for (const auto& c : calcul_cases())
    if (c.id == id)
      return c;
  throw BadIndex("no calcul case " + std::to_string(id));
}

struct MClassRecord {
  TorusElement rep;                 // lex-least element of the M-orbit
  std::size_t size = 0;
  std::vector<std::size_t> counts;  // per n: z with s*z not G-conjugate to s
};

struct OrbitRecord {
  TorusElement rep;
  std::int64_t order = 0;
  std::size_t orbit_size = 0;
  std::vector<TorusElement> m_qi;   // M-quasi-isolated members, sorted
  std::vector<MClassRecord> m_classes;

  // count multiset for the k-th n, sorted decreasingly
  std::vector<std::size_t> multiset(std::size_t k) const {
    std::vector<std::size_t> out;
    for (const auto& c : m_classes)
      out.push_back(c.counts.at(k));
    std::sort(out.rbegin(), out.rend());
    return out;
  }
};

struct CalculReport {
  CaseSpec spec;
  std::string group_label;
  std::vector<OrbitRecord> orbits;
  std::vector<bool> holds_per_n;
  bool holds = false;
  std::optional<bool> check_holds;      // verdict at spec.check_bound
  std::size_t check_classes = 0;        // G-classes at spec.check_bound

  std::size_t qi_elements() const {
    std::size_t s = 0;
    for (const auto& o : orbits)
      s += o.orbit_size;
    return s;
  }
};

struct CalculResult {
  std::vector<OrbitRecord> orbits;
  std::vector<bool> holds_per_n;
};

// The core pipeline on an explicit datum. levi holds 0-based simple indices.
inline CalculResult run_calcul(const DatumPtr& rd, const std::vector<int>& levi,
                               const std::vector<std::int64_t>& n_values, std::int64_t bound,
                               unsigned threads = 1) {
  const AlcoveSystem g(ReflectionSubgroup::full(rd));
  const ReflectionSubgroup m = reflection_subgroup(rd, levi);
  const AlcoveSystem ma(m);
  std::vector<int> g_simple(rd->semisimple_rank());
  std::iota(g_simple.begin(), g_simple.end(), 0);

  std::vector<std::vector<TorusElement>> zn;
  const Lattice z0 = algebraic_centre(m).z0;
  for (std::int64_t n : n_values)
    zn.push_back(torsion_subgroup(z0, n));

  CalculResult res;
  for (const TorusElement& s : quasi_isolated_representatives(g, bound)) {
    OrbitRecord o;
    o.rep = s;
    o.order = s.order();
    res.orbits.push_back(std::move(o));
  }

  parallel_for(res.orbits.size(), threads, [&](std::size_t i) {
    OrbitRecord& o = res.orbits[i];
    const auto orb = orbit_by_reflections(*rd, g_simple, o.rep);
    o.orbit_size = orb.size();
    for (const auto& s : orb)
      if (is_quasi_isolated(ma, s))
        o.m_qi.push_back(s);
    TorusSet done;
    for (const auto& s : o.m_qi) {
      if (done.count(s))
        continue;
      const auto mo = orbit_by_reflections(*rd, m.simple_indices(), s);
      done.insert(mo.begin(), mo.end());
      o.m_classes.push_back({mo.front(), mo.size(), {}});
    }
  });

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < res.orbits.size(); ++i)
    for (std::size_t j = 0; j < res.orbits[i].m_classes.size(); ++j)
      tasks.emplace_back(i, j);
  parallel_for(tasks.size(), threads, [&](std::size_t t) {
    MClassRecord& c = res.orbits[tasks[t].first].m_classes[tasks[t].second];
    const TorusElement base = canonical_form(g, c.rep);
    for (const auto& z : zn) {
      std::size_t k = 0;
      for (const auto& x : z)
        if (!(canonical_form(g, c.rep + x) == base))
          ++k;
      c.counts.push_back(k);
    }
  });

  for (std::size_t k = 0; k < n_values.size(); ++k) {
    bool ok = true;
    for (const auto& o : res.orbits)
      for (const auto& c : o.m_classes)
        ok = ok && c.counts[k] >= 1;
    res.holds_per_n.push_back(ok);
  }
  return res;
}

inline std::vector<int> zero_based(const std::vector<int>& labels) {
  std::vector<int> out;
  for (int l : labels)
    out.push_back(l - 1);
  return out;
}

inline CalculReport run_calcul_case(const CaseSpec& spec, unsigned threads = 1) {
  auto rd = RootDatum::build(spec.group, spec.isogeny);
  for (int l : spec.levi)
    if (l < 1 || static_cast<std::size_t>(l) > rd->semisimple_rank())
      throw BadIndex("levi label " + std::to_string(l));
  const std::string got = reflection_subgroup(rd, zero_based(spec.levi)).type_label();
  if (got != spec.levi_type)
    throw CaseMismatch("case " + std::to_string(spec.id) + ": levi has type " + got + ", expected " +
                       spec.levi_type);
  CalculReport r;
  r.spec = spec;
  r.group_label = spec.group + (spec.isogeny == Isogeny::adjoint ? " adjoint" : " sc");
  CalculResult res = run_calcul(rd, zero_based(spec.levi), spec.n_values, spec.bound, threads);
  r.orbits = std::move(res.orbits);
  r.holds_per_n = res.holds_per_n;
  r.holds = std::all_of(r.holds_per_n.begin(), r.holds_per_n.end(), [](bool b) { return b; });
  if (spec.check_bound > 0) {
    CalculResult chk = run_calcul(rd, zero_based(spec.levi), spec.n_values, spec.check_bound, threads);
    r.check_classes = chk.orbits.size();
    r.check_holds = std::all_of(chk.holds_per_n.begin(), chk.holds_per_n.end(), [](bool b) { return b; });
  }
  return r;
}

inline Json to_json(const CalculReport& r) {
  Json j;
  j["case"] = r.spec.id;
  j["group"] = r.group_label;
  j["levi"] = r.spec.levi;
  j["levi_type"] = r.spec.levi_type;
  j["n"] = r.spec.n_values;
  j["bound"] = r.spec.bound;
  j["qi_elements"] = r.qi_elements();
  Json orbits = Json::array();
  for (const auto& o : r.orbits) {
    Json oj;
    oj["rep"] = o.rep.str();
    oj["order"] = o.order;
    oj["orbit_size"] = o.orbit_size;
    oj["m_qi"] = o.m_qi.size();
    Json cls = Json::array();
    for (const auto& c : o.m_classes)
      cls.push_back({{"rep", c.rep.str()}, {"size", c.size}, {"counts", c.counts}});
    oj["m_classes"] = cls;
    Json ms = Json::array();
    for (std::size_t k = 0; k < r.spec.n_values.size(); ++k)
      ms.push_back(o.multiset(k));
    oj["count_multisets"] = ms;
    orbits.push_back(oj);
  }
  j["orbits"] = orbits;
  j["holds_per_n"] = r.holds_per_n;
  if (r.check_holds) {
    j["bound_check"] = {{"bound", r.spec.check_bound},
                        {"classes", r.check_classes},
                        {"verdict", *r.check_holds ? "holds" : "fails"}};
  }
  j["verdict"] = r.holds && r.check_holds.value_or(true) ? "holds" : "fails";
  return j;
}

// ORDRE 8

struct Ordre8Entry {
  Twist twist;
  bool mixed = false;
  std::size_t fixed = 0;
  std::set<std::int64_t> profile;
  FinAbGroup structure; // S^F of the twisted radical torus
  bool consistent = false; // profile contains 8 iff 8 divides the exponent of S^F
};

struct Ordre8Report {
  std::int64_t q = 0;
  std::size_t z8_size = 0;
  std::vector<std::string> polys; // all twists
  std::vector<Ordre8Entry> entries; // the (q+1)^4 twist and the mixed ones
  bool holds = false;
};

inline bool mixed_phi12(const CycloFactorization& f) {
  return f.uses_only({1, 2}) && f.multiplicity(1) >= 1 && f.multiplicity(2) >= 1;
}

inline Ordre8Report run_ordre8(std::int64_t q, unsigned threads = 1) {
  auto rd = RootDatum::build("E7", Isogeny::adjoint);
  const ReflectionSubgroup m = reflection_subgroup(rd, {1, 4, 6});
  const auto z8 = torsion_subgroup(algebraic_centre(m).z0, 8);
  Ordre8Report r;
  r.q = q;
  r.z8_size = z8.size();
  for (const Twist& t : twistings(m)) {
    r.polys.push_back(t.poly_text());
    const bool mixed = mixed_phi12(t.radical_poly);
    if (mixed || t.radical_poly == CycloFactorization{{{2, 4}}})
      r.entries.push_back({t, mixed, 0, {}, {}, false});
  }
  parallel_for(r.entries.size(), threads, [&](std::size_t i) {
    Ordre8Entry& e = r.entries[i];
    const auto fixed = frobenius_fixed_elements(e.twist, q, z8);
    e.fixed = fixed.size();
    for (const auto& s : fixed)
      e.profile.insert(s.order());
    e.structure = fixed_structure(e.twist.radical, q);
    e.consistent = (e.profile.count(8) > 0) == (e.structure.exponent() % 8 == 0);
  });
  r.holds = !r.entries.empty();
  for (const auto& e : r.entries)
    r.holds = r.holds && e.consistent && (!e.mixed || e.profile.count(8));
  return r;
}

inline Json to_json(const Ordre8Report& r) {
  Json j;
  j["q"] = r.q;
  j["z8"] = r.z8_size;
  j["twistings"] = r.polys.size();
  j["polys"] = r.polys;
  Json es = Json::array();
  for (const auto& e : r.entries)
    es.push_back({{"twist", e.twist.display()},
                  {"w_word", e.twist.w.word()},
                  {"mixed", e.mixed},
                  {"fixed", e.fixed},
                  {"profile", e.profile},
                  {"structure", e.structure.str()}});
  j["selected"] = es;
  j["verdict"] = r.holds ? "holds" : "fails";
  return j;
}

// TORUS LAWS

inline Json to_json(const Dim2Survey& s) {
  Json j;
  j["q"] = s.q.str();
  Json es = Json::array();
  for (const auto& e : s.entries)
    es.push_back({{"phi", e.phi.str()},
                  {"poly", order_polynomial_text(e.factors)},
                  {"structure", e.structure.str()},
                  {"listed", e.allowed}});
  j["entries"] = es;
  std::vector<std::string> st;
  for (const auto& g : s.structures)
    st.push_back(g.str());
  j["structures"] = st;
  j["verdict"] = s.all_allowed ? "holds" : "fails";
  return j;
}

struct TorusLawCase {
  std::string source;
  IntMatrix phi;
  std::int64_t q = 0;
  BigInt chi;          // char poly of the torus at q
  FinAbGroup structure;
  bool order_ok = false;  // |S^F| = chi(q)
  bool pure_ok = false;   // every Sylow Phi_m-subtorus has (Z/Phi_m(q))^k points
};

// Maximal tori of small groups, one per Weyl class, at several q.
inline std::vector<TorusLawCase> torus_law_grid() {
  std::vector<TorusLawCase> out;
  for (const char* type : {"A2", "B2", "G2", "A3", "B3"}) {
    auto rd = RootDatum::build(type, Isogeny::adjoint);
    for (const Twist& t : twistings(reflection_subgroup(rd, {}))) {
      for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        TorusLawCase c;
        std::string word;
        for (int i : t.w.word())
          word += std::to_string(i + 1);
        c.source = std::string(type) + " w=" + (word.empty() ? "1" : word);
        c.phi = t.radical.phi();
        c.q = q;
        c.chi = t.radical_poly.evaluate(BigInt(q));
        c.structure = fixed_structure(t.radical, q);
        c.order_ok = c.structure.order() == c.chi;
        c.pure_ok = true;
        for (const auto& [m, k] : t.radical_poly.factors) {
          std::vector<BigInt> cyc(k, poly_eval(cyclotomic(m), BigInt(q)));
          c.pure_ok = c.pure_ok && fixed_structure(sylow_phi_subtorus(t.radical, m), q) == FinAbGroup::from_cyclic(cyc);
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

} // namespace ssverify

#endif // SSVERIFY_HARNESS_HPP_
