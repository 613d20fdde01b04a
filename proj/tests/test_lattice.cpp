#include <gtest/gtest.h>

#include <random>

#include "ssverify/lattice.hpp"

using namespace ssverify;

namespace {

IntMatrix diag(std::initializer_list<int> d) {
  IntMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (int v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

BigInt det(const IntMatrix& a) {
  RatMatrix m = a.cast<Rational>();
  const std::size_t n = m.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      m.swap_rows(p, c);
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i)
      m.add_row(i, c, Rational(-m(i, c) / m(c, c)));
  }
  return numerator(d);
}

void check_smith(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.P * a * f.Q, f.S);
  EXPECT_EQ(abs(det(f.P)), 1);
  EXPECT_EQ(abs(det(f.Q)), 1);
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < f.S.rows(); ++i)
    for (std::size_t j = 0; j < f.S.cols(); ++j)
      if (i != j)
        EXPECT_EQ(f.S(i, j), 0);
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_GE(f.S(i, i), 0);
    if (i + 1 < k && f.S(i, i) != 0)
      EXPECT_EQ(f.S(i + 1, i + 1) % f.S(i, i), 0);
    if (f.S(i, i) == 0 && i + 1 < k)
      EXPECT_EQ(f.S(i + 1, i + 1), 0);
  }
  // P^-1 S Q^-1 reconstructs A
  IntMatrix back = to_integral(inverse(f.P.cast<Rational>())) * f.S * to_integral(inverse(f.Q.cast<Rational>()));
  EXPECT_EQ(back, a);
}

} // namespace

TEST(SmithNormalForm, Identity) {
  SmithForm f = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(f.S, IntMatrix::identity(3));
  EXPECT_EQ(f.P, IntMatrix::identity(3));
  EXPECT_EQ(f.Q, IntMatrix::identity(3));
}

TEST(SmithNormalForm, Diag23) {
  IntMatrix a = diag({2, 3});
  SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.S, diag({1, 6}));
  check_smith(a);
}

TEST(SmithNormalForm, Zero) {
  IntMatrix z(2, 2);
  SmithForm f = smith_normal_form(z);
  EXPECT_EQ(f.S, z);
  check_smith(z);
}

TEST(SmithNormalForm, RandomMatricesReconstruct) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        a(i, j) = entry(rng);
    check_smith(a);
  }
}

TEST(QuotientStructure, Examples) {
  EXPECT_TRUE(quotient_structure(diag({1, 1}), 2).trivial());
  IntMatrix a{{-1, 3}, {3, -1}}; // q*phi - I for the swap at q = 3
  EXPECT_EQ(quotient_structure(a, 2).str(), "Z/8");
  EXPECT_EQ(quotient_structure(diag({2, 2}), 2).str(), "Z/2 x Z/2");
}

TEST(QuotientStructure, InfiniteAndMismatch) {
  EXPECT_THROW(quotient_structure(IntMatrix{{1, 1}}, 2), InfiniteQuotient);
  EXPECT_THROW(quotient_structure(IntMatrix{{1, 1}, {2, 2}}, 2), InfiniteQuotient);
  EXPECT_THROW(quotient_structure(IntMatrix{{1, 1, 0}}, 2), DimensionMismatch);
}

TEST(QuotientStructure, OrderIsAbsDeterminant) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5), dim(1, 4);
  int checked = 0;
  while (checked < 150) {
    std::size_t n = dim(rng);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = entry(rng);
    BigInt d = det(a);
    if (d == 0)
      continue;
    EXPECT_EQ(quotient_structure(a, n).order(), abs(d));
    ++checked;
  }
}

TEST(FinAbGroup, FromCyclicNormalizes) {
  EXPECT_EQ(FinAbGroup::from_cyclic({2, 3}).str(), "Z/6");
  EXPECT_EQ(FinAbGroup::from_cyclic({4, 6}).str(), "Z/2 x Z/12");
  EXPECT_TRUE(FinAbGroup::from_cyclic({1, 1}).trivial());
  EXPECT_EQ(FinAbGroup::from_cyclic({2, 2}).order(), 4);
  EXPECT_EQ(FinAbGroup::from_cyclic({4, 6}).exponent(), 12);
}

TEST(SaturatedKernel, Examples) {
  EXPECT_EQ(saturated_kernel(IntMatrix::identity(3)).rank(), 0u);
  Lattice k = saturated_kernel(IntMatrix{{2}, {2}});
  EXPECT_EQ(k, Lattice(2, IntMatrix{{1, -1}}));
  EXPECT_EQ(saturated_kernel(IntMatrix(2, 2)), Lattice::full(2));
}

TEST(SaturatedKernel, BruteForceSmallHeight) {
  // every integer v with |v_i| <= 3 and v*A = 0 lies in the kernel lattice, and nothing else does
  IntMatrix a{{1, 2}, {3, 6}, {2, 4}};
  Lattice k = saturated_kernel(a);
  EXPECT_EQ(k.rank() + rank_of(a), 3u);
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        std::vector<BigInt> v{x, y, z};
        bool zero = true;
        for (std::size_t c = 0; c < 2; ++c)
          zero = zero && (v[0] * a(0, c) + v[1] * a(1, c) + v[2] * a(2, c) == 0);
        EXPECT_EQ(k.contains(v), zero);
      }
}

TEST(SaturatedKernel, RankAndTorsionFree) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a(4, 2);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        a(i, j) = 2 * entry(rng);
    Lattice k = saturated_kernel(a);
    EXPECT_EQ(k.rank() + rank_of(a), 4u);
    if (k.rank() == 0)
      continue;
    // Z^4 / K torsion-free: the invariant factors of the basis are all 1
    SmithForm f = smith_normal_form(k.basis());
    for (std::size_t i = 0; i < k.rank(); ++i)
      EXPECT_EQ(f.S(i, i), 1);
  }
}

TEST(Lattice, Membership) {
  EXPECT_TRUE(lattice_member(Lattice::full(3), {5, -7, 2}));
  Lattice l(2, IntMatrix{{1, -1}});
  EXPECT_TRUE(lattice_member(l, {2, -2}));
  EXPECT_FALSE(lattice_member(l, {1, 0}));
  EXPECT_THROW(lattice_member(l, {1, 0, 0}), DimensionMismatch);
}

TEST(Lattice, CanonicalBasis) {
  Lattice a(3, IntMatrix{{1, 1, 0}, {0, 1, 1}});
  Lattice b(3, IntMatrix{{1, 2, 1}, {1, 0, -1}, {0, 1, 1}});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, Lattice(3, IntMatrix{{1, 1, 0}, {0, 2, 2}}));
}

TEST(Lattice, Saturation) {
  Lattice s = saturation(IntMatrix{{2, 2, 0}}, 3);
  EXPECT_EQ(s, Lattice(3, IntMatrix{{1, 1, 0}}));
  EXPECT_EQ(saturation(IntMatrix{{2, 0}, {0, 3}}, 2), Lattice::full(2));
}

TEST(Rat01, Normalizes) {
  Rat01 a(7, 8), b(-1, 8), c(6, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(c.str(), "1/2");
  EXPECT_EQ(Rat01(3, 3).str(), "0");
  EXPECT_TRUE(Rat01(1, 3) < Rat01(1, 2));
}
