#ifndef SSVERIFY_LATTICE_HPP_
#define SSVERIFY_LATTICE_HPP_

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace ssverify {

// A rational number in [0,1) in lowest terms: an element of Q/Z.
struct Rat01 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat01() = default;
  Rat01(std::int64_t n, std::int64_t d) {
    if (d <= 0)
      throw DimensionMismatch("Rat01 denominator must be positive");
    n %= d;
    if (n < 0)
      n += d;
    std::int64_t g = std::gcd(n, d);
    num = n / g;
    den = d / g;
  }

  friend bool operator==(const Rat01& a, const Rat01& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat01& a, const Rat01& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }

  std::string str() const {
    if (num == 0)
      return "0";
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Finite abelian group by invariant factors d1 | d2 | ... with every di > 1.
class FinAbGroup;
FinAbGroup quotient_structure(const IntMatrix& a, std::size_t ambient_rank);

class FinAbGroup {
public:
  FinAbGroup() = default;

  // Normalizes an arbitrary product of cyclic groups Z/c1 x Z/c2 x ...
  static FinAbGroup from_cyclic(const std::vector<BigInt>& orders);

  const std::vector<BigInt>& invariant_factors() const { return factors_; }
  BigInt order() const {
    BigInt o = 1;
    for (const auto& d : factors_)
      o *= d;
    return o;
  }
  BigInt exponent() const { return factors_.empty() ? BigInt(1) : factors_.back(); }
  bool trivial() const { return factors_.empty(); }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const FinAbGroup& a, const FinAbGroup& b) { return !(a == b); }
  friend bool operator<(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ < b.factors_; }

  std::string str() const {
    if (factors_.empty())
      return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      s += (i ? " x Z/" : "Z/") + factors_[i].str();
    return s;
  }

private:
  friend FinAbGroup quotient_structure(const IntMatrix& a, std::size_t ambient_rank);
  std::vector<BigInt> factors_;
};

struct SmithForm {
  IntMatrix S; // diagonal, d1 | d2 | ..., di >= 0
  IntMatrix P; // unimodular, m x m
  IntMatrix Q; // unimodular, n x n
};

// P * A * Q = S.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& s = f.S;
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = m, pj = n;
      BigInt best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (s(i, j) == 0)
            continue;
          BigInt v = abs(s(i, j));
          if (pi == m || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == m)
        return f;
      s.swap_rows(t, pi);
      f.P.swap_rows(t, pi);
      s.swap_cols(t, pj);
      f.Q.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0)
          continue;
        BigInt q = s(i, t) / s(t, t);
        s.add_row(i, t, -q);
        f.P.add_row(i, t, -q);
        if (s(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0)
          continue;
        BigInt q = s(t, j) / s(t, t);
        s.add_col(j, t, -q);
        f.Q.add_col(j, t, -q);
        if (s(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row(t, i, BigInt(1));
            f.P.add_row(t, i, BigInt(1));
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      f.P.negate_row(t);
    }
  }
  return f;
}

// Structure of Z^ambient_rank / (row span of a).
inline FinAbGroup quotient_structure(const IntMatrix& a, std::size_t ambient_rank) {
  if (a.cols() != ambient_rank && !(a.rows() == 0))
    throw DimensionMismatch("rows of A must live in Z^" + std::to_string(ambient_rank));
  FinAbGroup g;
  if (ambient_rank == 0)
    return g;
  if (a.rows() < ambient_rank)
    throw InfiniteQuotient("rank " + std::to_string(a.rows()) + " < " + std::to_string(ambient_rank));
  SmithForm f = smith_normal_form(a);
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    const BigInt& d = f.S(i, i);
    if (d == 0)
      throw InfiniteQuotient("rank of A is below the ambient rank");
    if (d > 1)
      g.factors_.push_back(d);
  }
  return g;
}

inline FinAbGroup FinAbGroup::from_cyclic(const std::vector<BigInt>& orders) {
  IntMatrix d(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] <= 0)
      throw DimensionMismatch("cyclic factor orders must be positive");
    d(i, i) = orders[i];
  }
  return quotient_structure(d, orders.size());
}

// Row Hermite normal form; zero rows dropped. Pivots positive, entries above a
// pivot reduced into [0, pivot).
inline IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      BigInt best;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (p == m || abs(h(i, c)) < best)) {
          best = abs(h(i, c));
          p = i;
        }
      if (p == m)
        break;
      h.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0)
          continue;
        BigInt q = h(i, c) / h(r, c);
        h.add_row(i, r, -q);
        if (h(i, c) != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (r >= m || h(r, c) == 0)
      continue;
    if (h(r, c) < 0)
      h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = h(i, c) / h(r, c);
      if (h(i, c) - q * h(r, c) < 0)
        q -= 1;
      if (q != 0)
        h.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = h(i, j);
  return out;
}

// Sublattice of Z^ambient_rank, stored by its canonical HNF basis so that
// lattice equality is basis equality.
class Lattice {
public:
  Lattice() = default;
  Lattice(std::size_t ambient_rank, const IntMatrix& generators) : ambient_(ambient_rank) {
    if (generators.rows() > 0 && generators.cols() != ambient_rank)
      throw DimensionMismatch("lattice generators");
    basis_ = generators.rows() ? hermite_normal_form(generators) : IntMatrix(0, ambient_rank);
  }

  static Lattice full(std::size_t n) { return Lattice(n, IntMatrix::identity(n)); }
  static Lattice zero(std::size_t n) { return Lattice(n, IntMatrix(0, n)); }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  // Integer coefficients c with c * basis = v, if they exist.
  std::optional<std::vector<BigInt>> coordinates(const std::vector<BigInt>& v) const {
    if (v.size() != ambient_)
      throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                              " vs ambient rank " + std::to_string(ambient_));
    std::vector<BigInt> rest = v;
    std::vector<BigInt> coeffs(rank());
    std::size_t col = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      while (basis_(i, col) == 0) {
        if (rest[col] != 0)
          return std::nullopt;
        ++col;
      }
      if (rest[col] % basis_(i, col) != 0)
        return std::nullopt;
      coeffs[i] = rest[col] / basis_(i, col);
      for (std::size_t j = col; j < ambient_; ++j)
        rest[j] -= coeffs[i] * basis_(i, j);
    }
    for (const auto& x : rest)
      if (x != 0)
        return std::nullopt;
    return coeffs;
  }

  bool contains(const std::vector<BigInt>& v) const { return coordinates(v).has_value(); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

inline bool lattice_member(const Lattice& l, const std::vector<BigInt>& v) { return l.contains(v); }

// {v : v * A = 0}, saturated by construction.
inline Lattice saturated_kernel(const IntMatrix& a) {
  const std::size_t m = a.rows();
  if (a.cols() == 0)
    return Lattice::full(m);
  SmithForm f = smith_normal_form(a);
  std::size_t rank = 0;
  while (rank < std::min(m, a.cols()) && f.S(rank, rank) != 0)
    ++rank;
  IntMatrix k(m - rank, m);
  for (std::size_t i = rank; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      k(i - rank, j) = f.P(i, j);
  return Lattice(m, k);
}

// Y ∩ (Q-span of the rows of a): the saturation of the row lattice.
inline Lattice saturation(const IntMatrix& a, std::size_t ambient_rank) {
  if (a.rows() == 0)
    return Lattice::zero(ambient_rank);
  Lattice perp = saturated_kernel(a.transpose());
  if (perp.rank() == 0)
    return Lattice::full(ambient_rank);
  return saturated_kernel(perp.basis().transpose());
}

} // namespace ssverify

#endif // SSVERIFY_LATTICE_HPP_
