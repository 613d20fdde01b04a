#include <gtest/gtest.h>

#include <set>

#include "ssverify/root_datum.hpp"

using namespace ssverify;

namespace {

// Elements of W by BFS over words; returns the longest word length found.
std::size_t longest_length(const RootDatum& rd, std::size_t* order = nullptr) {
  std::vector<std::vector<int>> gens;
  for (std::size_t i = 0; i < rd.semisimple_rank(); ++i)
    gens.push_back(rd.simple_reflection_perm(i));
  std::vector<int> id(rd.num_roots());
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, std::size_t> dist{{id, 0}};
  std::vector<std::vector<int>> frontier{id};
  std::size_t depth = 0;
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        std::vector<int> h(g.size());
        for (std::size_t j = 0; j < g.size(); ++j)
          h[j] = s[g[j]];
        if (dist.emplace(h, depth + 1).second)
          next.push_back(h);
      }
    if (!next.empty())
      ++depth;
    frontier.swap(next);
  }
  if (order)
    *order = dist.size();
  return depth;
}

} // namespace

TEST(BuildDatum, A2AdjointAndSc) {
  auto ad = RootDatum::build("A2", Isogeny::adjoint);
  EXPECT_EQ(ad->simple_roots(), (SmallMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(ad->simple_coroots(), (SmallMatrix{{2, -1}, {-1, 2}}));
  auto sc = RootDatum::build("A2", Isogeny::simply_connected);
  EXPECT_EQ(sc->simple_roots(), (SmallMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(sc->simple_coroots(), (SmallMatrix{{1, 0}, {0, 1}}));
}

TEST(BuildDatum, ExplicitGL3) {
  SmallMatrix r{{-1, 1, 0}, {0, -1, 1}};
  auto gl = RootDatum::explicit_datum(r, r);
  EXPECT_EQ(gl->rank(), 3u);
  EXPECT_EQ(gl->semisimple_rank(), 2u);
  EXPECT_FALSE(gl->is_semisimple());
  EXPECT_EQ(gl->num_roots(), 6u);
  EXPECT_EQ(gl->type_label(), "A2");
}

TEST(BuildDatum, InvalidCartan) {
  EXPECT_THROW(RootDatum::explicit_datum(SmallMatrix{{1, 0}, {0, 1}}, SmallMatrix{{2, 1}, {-1, 2}}), InvalidCartan);
  EXPECT_THROW(RootDatum::explicit_datum(SmallMatrix{{1, 0}, {0, 1}}, SmallMatrix{{2, 0}, {-1, 2}}), InvalidCartan);
  EXPECT_THROW(RootDatum::explicit_datum(SmallMatrix{{1}}, SmallMatrix{{3}}), InvalidCartan);
  EXPECT_THROW(CartanType::parse("E9"), InvalidCartan);
  EXPECT_THROW(CartanType::parse("Q3"), InvalidCartan);
}

TEST(BuildDatum, AffineCartanIsNotFinite) {
  // affine A1: [[2,-2],[-2,2]]
  EXPECT_THROW(RootDatum::explicit_datum(SmallMatrix{{1, 0}, {0, 1}}, SmallMatrix{{2, -2}, {-2, 2}}),
               std::exception);
}

TEST(GenerateRoots, Counts) {
  const std::vector<std::pair<std::string, std::size_t>> expect{
      {"A1", 2}, {"A2", 6}, {"B2", 8}, {"G2", 12}, {"A3", 12}, {"B3", 18}, {"C3", 18},
      {"D4", 24}, {"F4", 48}, {"E6", 72}, {"E7", 126}, {"E8", 240}, {"A2xA2", 12}};
  for (const auto& [t, n] : expect)
    for (Isogeny iso : {Isogeny::adjoint, Isogeny::simply_connected}) {
      auto rd = RootDatum::build(t, iso);
      EXPECT_EQ(rd->num_roots(), n) << t;
      EXPECT_EQ(rd->type_label(), t);
    }
}

TEST(GenerateRoots, OrderAndNegatives) {
  auto rd = RootDatum::build("E6", Isogeny::adjoint);
  const std::size_t np = rd->num_positive();
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(rd->root(i).height, 1);
    EXPECT_EQ(rd->root(i).coeffs[i], 1);
  }
  for (std::size_t j = 0; j + 1 < np; ++j)
    EXPECT_LE(rd->root(j).height, rd->root(j + 1).height);
  for (std::size_t j = 0; j < np; ++j) {
    EXPECT_TRUE(rd->root(j).positive);
    IntVec neg = rd->root(j).x;
    for (auto& v : neg) v = -v;
    EXPECT_EQ(rd->root(j + np).x, neg);
  }
  // highest root of E6: 1 2 2 3 2 1
  EXPECT_EQ(rd->root(np - 1).coeffs, (IntVec{1, 2, 2, 3, 2, 1}));
}

TEST(GenerateRoots, PairingOfRootAndCoroot) {
  for (const char* t : {"G2", "B3", "C3", "F4", "E7"})
    for (Isogeny iso : {Isogeny::adjoint, Isogeny::simply_connected}) {
      auto rd = RootDatum::build(t, iso);
      for (const auto& r : rd->roots())
        EXPECT_EQ(dot(r.x, r.y), 2) << t;
    }
}

TEST(GenerateRoots, DualCartanIsTranspose) {
  for (const char* t : {"B3", "C4", "G2", "F4", "E6"}) {
    auto ad = RootDatum::build(t, Isogeny::adjoint);
    auto sc = RootDatum::build(t, Isogeny::simply_connected);
    EXPECT_EQ(ad->cartan(), sc->cartan());
    // the dual datum swaps roots and coroots
    RootDatum dual(ad->simple_coroots(), ad->simple_roots());
    EXPECT_EQ(dual.cartan(), ad->cartan().transpose());
  }
}

TEST(Weyl, LongestElementLength) {
  EXPECT_EQ(longest_length(*RootDatum::build("A2", Isogeny::adjoint)), 3u);
  EXPECT_EQ(longest_length(*RootDatum::build("B2", Isogeny::adjoint)), 4u);
  EXPECT_EQ(longest_length(*RootDatum::build("G2", Isogeny::adjoint)), 6u);
  std::size_t order = 0;
  longest_length(*RootDatum::build("A3", Isogeny::simply_connected), &order);
  EXPECT_EQ(order, 24u);
}

TEST(Weyl, ApplyExamples) {
  auto rd = RootDatum::build("A2", Isogeny::adjoint);
  std::vector<Rational> v{Rational(1, 3), Rational(-2, 5)};
  EXPECT_EQ(weyl_apply(WeylElement::identity(*rd), v), v);
  std::vector<Rational> c1{2, -1};
  EXPECT_EQ(weyl_apply(WeylElement::simple(*rd, 0), c1), (std::vector<Rational>{-2, 1}));
  EXPECT_EQ(WeylElement::from_word(*rd, {0, 1, 0}).matrix(), WeylElement::from_word(*rd, {1, 0, 1}).matrix());
  EXPECT_THROW(weyl_apply(WeylElement::identity(*rd), {1}), DimensionMismatch);
}

TEST(Weyl, PermAndMatrixConsistent) {
  for (const char* t : {"B3", "G2", "E6"})
    for (Isogeny iso : {Isogeny::adjoint, Isogeny::simply_connected}) {
      auto rd = RootDatum::build(t, iso);
      for (std::vector<int> word : {std::vector<int>{0}, {0, 1}, {1, 0, 1, 0}, {0, 1, 2, 1}}) {
        word.erase(std::remove_if(word.begin(), word.end(),
                                  [&](int i) { return i >= static_cast<int>(rd->semisimple_rank()); }),
                   word.end());
        WeylElement w = WeylElement::from_word(*rd, word);
        EXPECT_TRUE(w.consistent(*rd));
        WeylElement back = WeylElement::from_perm(*rd, w.perm());
        EXPECT_EQ(back, w);
        EXPECT_EQ(back.matrix(), w.matrix());
        EXPECT_TRUE((w * w.inverse(*rd)).is_identity());
      }
    }
}

TEST(Weyl, ReflectionInEveryRoot) {
  auto rd = RootDatum::build("F4", Isogeny::adjoint);
  for (std::size_t k = 0; k < rd->num_roots(); ++k) {
    WeylElement s = WeylElement::reflection(*rd, static_cast<int>(k));
    EXPECT_EQ(s.matrix(), rd->reflection_matrix(static_cast<int>(k)));
    EXPECT_EQ(s(static_cast<int>(k)), rd->negative(static_cast<int>(k)));
    EXPECT_TRUE(s.consistent(*rd));
  }
}

TEST(ReflectionSubgroup, Examples) {
  auto e6 = RootDatum::build("E6", Isogeny::adjoint);
  EXPECT_EQ(reflection_subgroup(e6, {0, 2, 4, 5}).type_label(), "A2xA2");
  auto e7 = RootDatum::build("E7", Isogeny::adjoint);
  EXPECT_EQ(reflection_subgroup(e7, {1, 4, 6}).type_label(), "A1xA1xA1");
  EXPECT_EQ(reflection_subgroup(e7, {0, 1, 2, 3, 4, 5}).type_label(), "E6");
  ReflectionSubgroup triv = reflection_subgroup(e6, {});
  EXPECT_EQ(triv.type_label(), "1");
  EXPECT_TRUE(triv.root_indices().empty());
  EXPECT_THROW(reflection_subgroup(e6, {72}), BadIndex);
}

TEST(ReflectionSubgroup, NonParabolic) {
  auto e6 = RootDatum::build("E6", Isogeny::adjoint);
  const int top = static_cast<int>(e6->num_positive()) - 1;
  ReflectionSubgroup h = reflection_subgroup(e6, {0, 2, 3, 4, 5, top});
  EXPECT_EQ(h.type_label(), "A5xA1");
  EXPECT_EQ(h.root_indices().size(), 32u);
  auto g2 = RootDatum::build("G2", Isogeny::adjoint);
  // long roots of G2 form A2
  std::vector<int> longs;
  for (std::size_t k = 0; k < g2->num_positive(); ++k)
    if (g2->root(k).coeffs[0] % 3 == 0)
      longs.push_back(static_cast<int>(k));
  EXPECT_EQ(reflection_subgroup(g2, longs).type_label(), "A2");
}

TEST(ReflectionSubgroup, ClosedUnderReflections) {
  auto e7 = RootDatum::build("E7", Isogeny::simply_connected);
  ReflectionSubgroup h = reflection_subgroup(e7, {1, 4, 6, 125 - 63});
  for (int a : h.root_indices())
    for (int b : h.root_indices())
      EXPECT_TRUE(h.contains_root(e7->reflect_root(a, b)));
}

TEST(ReflectionSubgroup, HighestRootMarks) {
  auto e8 = RootDatum::build("E8", Isogeny::adjoint);
  ReflectionSubgroup g = ReflectionSubgroup::full(e8);
  EXPECT_EQ(g.highest_marks().front(), (IntVec{2, 3, 4, 6, 5, 4, 3, 2}));
  auto f4 = RootDatum::build("F4", Isogeny::adjoint);
  EXPECT_EQ(ReflectionSubgroup::full(f4).highest_marks().front(), (IntVec{2, 3, 4, 2}));
}

TEST(Diagram, ESeries) {
  auto e6 = RootDatum::build("E6", Isogeny::adjoint);
  EXPECT_EQ(diagram_text(*e6), "E6      2\n        |\n1 - 3 - 4 - 5 - 6");
  auto e7 = RootDatum::build("E7", Isogeny::adjoint);
  EXPECT_EQ(diagram_text(*e7), "E7      2\n        |\n1 - 3 - 4 - 5 - 6 - 7");
}

TEST(Diagram, Small) {
  EXPECT_EQ(diagram_text(*RootDatum::build("A1", Isogeny::adjoint)), "A1 1");
  EXPECT_EQ(diagram_text(*RootDatum::build("B2", Isogeny::adjoint)), "B2 1 => 2");
  EXPECT_EQ(diagram_text(*RootDatum::build("C3", Isogeny::adjoint)), "C3 1 - 2 <= 3");
  EXPECT_EQ(diagram_text(*RootDatum::build("G2", Isogeny::adjoint)), "G2 1 <<< 2");
  EXPECT_EQ(diagram_text(*RootDatum::build("D4", Isogeny::adjoint)), "D4  4\n    |\n1 - 2 - 3");
}
