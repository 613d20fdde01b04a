#include <gtest/gtest.h>

#include <fstream>

#include "oracles.hpp"
#include "ssverify/harness.hpp"

using namespace ssverify;

namespace {

Json fixture(const std::string& name) {
  std::ifstream in(std::string(SSVERIFY_FIXTURES) + "/" + name);
  return Json::parse(in);
}

std::set<TorusElement> parse_set(const Json& arr) {
  std::set<TorusElement> out;
  for (const auto& s : arr)
    out.insert(TorusElement::parse(s.get<std::string>()));
  return out;
}

const CalculReport& case1() {
  static CalculReport r = run_calcul_case(calcul_case(1));
  return r;
}

} // namespace

TEST(ParallelFor, CoversEveryIndexOnce) {
  for (unsigned t : {1u, 3u, 16u}) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), t, [&](std::size_t i) { hits[i] += 1; });
    EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), 100);
  }
}

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(50, 4, [](std::size_t i) {
      if (i == 7 || i == 31)
        throw BadIndex(std::to_string(i));
    });
    FAIL();
  } catch (const BadIndex& e) {
    EXPECT_STREQ(e.what(), "BadIndex: 7");
  }
}

TEST(CaseTable, LeviTypesValidate) {
  for (const auto& spec : calcul_cases()) {
    auto rd = RootDatum::build(spec.group, spec.isogeny);
    EXPECT_EQ(reflection_subgroup(rd, zero_based(spec.levi)).type_label(), spec.levi_type) << spec.id;
  }
  CaseSpec bad = calcul_case(3);
  bad.levi = {1, 2, 3};
  EXPECT_THROW(run_calcul_case(bad), CaseMismatch);
  bad.levi = {0};
  EXPECT_THROW(run_calcul_case(bad), BadIndex);
  EXPECT_THROW(calcul_case(6), BadIndex);
}

TEST(Calcul, CaseOneGoldenValues) {
  const Json fx = fixture("calcul_case1.json");
  const auto& r = case1();
  ASSERT_EQ(r.orbits.size(), 5u);
  std::set<TorusElement> reps;
  for (const auto& o : r.orbits)
    reps.insert(o.rep);
  EXPECT_EQ(reps, parse_set(fx["reps"]));
  for (std::size_t i = 0; i < 5; ++i) {
    const std::size_t size = fx["orbit_sizes"][i];
    auto it = std::find_if(r.orbits.begin(), r.orbits.end(), [&](const OrbitRecord& o) { return o.orbit_size == size; });
    ASSERT_NE(it, r.orbits.end()) << size;
    EXPECT_EQ(it->m_qi.size(), fx["m_qi"][i].get<std::size_t>());
    EXPECT_EQ(it->multiset(0), fx["count_multisets"][i].get<std::vector<std::size_t>>());
    std::size_t covered = 0;
    for (const auto& c : it->m_classes)
      covered += c.size;
    EXPECT_EQ(covered, it->m_qi.size());
  }
  auto two = std::find_if(r.orbits.begin(), r.orbits.end(), [](const OrbitRecord& o) { return o.orbit_size == 36; });
  EXPECT_EQ(std::set<TorusElement>(two->m_qi.begin(), two->m_qi.end()), parse_set(fx["qi2"]));
  EXPECT_TRUE(r.holds);
}

TEST(Calcul, CountsAgreeWithStoredOrbitMembership) {
  // membership test: s*z lies in the M-qi part of the same G-orbit
  const auto& r = case1();
  auto rd = RootDatum::build("E6", Isogeny::adjoint);
  auto m = reflection_subgroup(rd, {0, 2, 4, 5});
  auto z3 = torsion_subgroup(algebraic_centre(m).z0, 3);
  for (std::size_t i = 0; i < r.orbits.size(); ++i) {
    const std::set<TorusElement> own(r.orbits[i].m_qi.begin(), r.orbits[i].m_qi.end());
    for (const auto& c : r.orbits[i].m_classes) {
      std::size_t k = 0;
      for (const auto& z : z3)
        k += !own.count(c.rep + z);
      EXPECT_EQ(k, c.counts[0]) << c.rep.str();
    }
  }
}

TEST(Calcul, TrivialCentreNeverHolds) {
  auto rd = RootDatum::build("E6", Isogeny::adjoint);
  CalculResult r = run_calcul(rd, {0, 2, 4, 5}, {1}, 6);
  for (const auto& o : r.orbits)
    for (const auto& c : o.m_classes)
      EXPECT_EQ(c.counts[0], 0u);
  EXPECT_FALSE(r.holds_per_n[0]);
}

TEST(Calcul, Conservation) {
  // sum of orbit sizes = number of quasi-isolated elements of order <= 6
  auto rd = RootDatum::build("E6", Isogeny::adjoint);
  const AlcoveSystem g(ReflectionSubgroup::full(rd));
  std::size_t direct = 0;
  for (std::int64_t m = 1; m <= 6; ++m) {
    IntVec v(6, 0);
    for (;;) {
      TorusElement s(m, v);
      if (s.order() == m && is_quasi_isolated(g, s))
        ++direct;
      std::size_t i = 0;
      while (i < 6 && ++v[i] == m)
        v[i++] = 0;
      if (i == 6)
        break;
    }
  }
  EXPECT_EQ(case1().qi_elements(), direct);
}

TEST(Calcul, ConservationAgainstSchreierTest) {
  for (const char* t : {"A3", "B3", "G2"}) {
    auto rd = RootDatum::build(t, Isogeny::adjoint);
    ReflectionSubgroup full = ReflectionSubgroup::full(rd);
    std::size_t direct = 0;
    for (const auto& s : oracle::small_elements(rd->rank(), 6))
      direct += oracle::brute_quasi_isolated(full, s);
    CalculResult r = run_calcul(rd, {}, {2}, 6);
    std::size_t total = 0;
    for (const auto& o : r.orbits)
      total += o.orbit_size;
    EXPECT_EQ(total, direct) << t;
  }
}

TEST(Calcul, MonotoneInN) {
  // Z3 sits inside Z6, so each count over Z6 is at least the count over Z3
  auto rd = RootDatum::build("E6", Isogeny::adjoint);
  CalculResult r = run_calcul(rd, {0, 2, 4, 5}, {3, 6}, 6);
  for (const auto& o : r.orbits)
    for (const auto& c : o.m_classes)
      EXPECT_GE(c.counts[1], c.counts[0]);
}

TEST(Calcul, ThreadCountDoesNotChangeReport) {
  const std::string a = to_json(run_calcul_case(calcul_case(1), 1)).dump();
  const std::string b = to_json(run_calcul_case(calcul_case(1), 7)).dump();
  EXPECT_EQ(a, b);
}

TEST(Calcul, JsonShape) {
  Json j = to_json(case1());
  EXPECT_EQ(j["case"], 1);
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_EQ(j["orbits"].size(), 5u);
  EXPECT_EQ(j["orbits"][0]["count_multisets"][0], Json::array({8}));
  EXPECT_FALSE(j.contains("bound_check"));
  EXPECT_EQ(j["qi_elements"], 1 + 36 + 80 + 1080 + 90);
}

TEST(Calcul, CaseTwoOrderBoundCheck) {
  CalculReport r = run_calcul_case(calcul_case(2));
  ASSERT_TRUE(r.check_holds.has_value());
  EXPECT_GE(r.check_classes, r.orbits.size());
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(*r.check_holds);
}

TEST(Ordre8, QuinticAgreesWithFixedStructure) {
  Ordre8Report r = run_ordre8(5);
  ASSERT_EQ(r.entries.size(), 7u);
  for (const auto& e : r.entries) {
    EXPECT_TRUE(e.consistent) << e.twist.display();
    BigInt expect = 1;
    for (const auto& d : e.structure.invariant_factors())
      expect *= gcd_big(d, 8);
    EXPECT_EQ(BigInt(e.fixed), expect);
  }
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(to_json(r)["verdict"], "holds");
}

TEST(Ordre8, GoldenValues) {
  const Json fx = fixture("ordre8_q3.json");
  Ordre8Report r = run_ordre8(3, 4);
  std::multiset<std::string> want;
  for (const auto& p : fx["polys"])
    want.insert(p.get<std::string>());
  EXPECT_EQ(std::multiset<std::string>(r.polys.begin(), r.polys.end()), want);
  std::multiset<std::vector<std::int64_t>> profiles, want_profiles;
  for (const auto& e : r.entries)
    profiles.insert({e.profile.begin(), e.profile.end()});
  for (const auto& p : fx["profiles"])
    want_profiles.insert(p.get<std::vector<std::int64_t>>());
  EXPECT_EQ(profiles, want_profiles);
  // the listed generators of Z8 generate the same group
  auto m = reflection_subgroup(RootDatum::build("E7", Isogeny::adjoint), {1, 4, 6});
  auto z8 = torsion_subgroup(algebraic_centre(m).z0, 8);
  std::set<TorusElement> gen{TorusElement::zero(7)};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& g : parse_set(fx["z8_gens"]))
      for (const auto& s : std::vector<TorusElement>(gen.begin(), gen.end()))
        grew = gen.insert(s + g).second || grew;
  }
  EXPECT_EQ(gen, std::set<TorusElement>(z8.begin(), z8.end()));
}

TEST(TorusLaws, Grid) {
  const auto grid = torus_law_grid();
  EXPECT_GE(grid.size(), 50u);
  for (const auto& t : grid) {
    EXPECT_TRUE(t.order_ok) << t.source << " q=" << t.q;
    EXPECT_TRUE(t.pure_ok) << t.source << " q=" << t.q;
  }
}

TEST(TorusLaws, SurveyJsonReportsUnlistedPhi4) {
  Json j = to_json(dim2_survey(3));
  EXPECT_EQ(j["verdict"], "fails");
  std::size_t unlisted = 0;
  for (const auto& e : j["entries"])
    if (!e["listed"].get<bool>()) {
      ++unlisted;
      EXPECT_EQ(e["poly"], "(q^2+1)");
      EXPECT_EQ(e["structure"], "Z/10");
    }
  EXPECT_GT(unlisted, 0u);
}
