#ifndef SSVERIFY_TORUS_HPP_
#define SSVERIFY_TORUS_HPP_

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace ssverify {

// Integer polynomial, coefficient of x^i at index i; no trailing zeros except for 0.
using Poly = std::vector<BigInt>;

inline void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0)
    p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] += a[i] * b[j];
  poly_trim(c);
  return c;
}

// Division by a monic polynomial; returns the quotient if the remainder is zero.
inline std::optional<Poly> poly_exact_div(Poly a, const Poly& monic) {
  poly_trim(a);
  const std::size_t db = monic.size() - 1;
  if (a.size() - 1 < db)
    return std::nullopt;
  Poly q(a.size() - db, BigInt(0));
  for (std::size_t k = a.size(); k-- > db;) {
    BigInt c = a[k];
    q[k - db] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j)
        a[k - db + j] -= c * monic[j];
  }
  for (std::size_t k = 0; k < db; ++k)
    if (a[k] != 0)
      return std::nullopt;
  return q;
}

inline BigInt poly_eval(const Poly& p, const BigInt& x) {
  BigInt v = 0;
  for (std::size_t k = p.size(); k-- > 0;)
    v = v * x + p[k];
  return v;
}

inline std::int64_t euler_phi(std::int64_t m) {
  std::int64_t r = m;
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0)
        m /= p;
      r -= r / p;
    }
  if (m > 1)
    r -= r / m;
  return r;
}

// m-th cyclotomic polynomial from x^m - 1 = prod_{d | m} Phi_d.
inline Poly cyclotomic(int m) {
  static std::map<int, Poly> cache;
  static std::recursive_mutex lock;
  std::lock_guard<std::recursive_mutex> guard(lock);
  auto it = cache.find(m);
  if (it != cache.end())
    return it->second;
  Poly p(m + 1, BigInt(0));
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0)
      p = *poly_exact_div(p, cyclotomic(d));
  cache[m] = p;
  return p;
}

// Characteristic polynomial det(x I - A) by Faddeev-LeVerrier, exact over Z.
inline Poly charpoly(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n)
    throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  Poly c(n + 1, BigInt(0));
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix am = a * m;
    for (std::size_t i = 0; i < n; ++i)
      am(i, i) += c[n - k + 1];
    m = am;
    IntMatrix t = a * m;
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      tr += t(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

// Multiset of cyclotomic factors: m -> multiplicity.
struct CycloFactorization {
  std::map<int, int> factors;

  int degree() const {
    int d = 0;
    for (const auto& [m, e] : factors)
      d += static_cast<int>(euler_phi(m)) * e;
    return d;
  }
  int multiplicity(int m) const {
    auto it = factors.find(m);
    return it == factors.end() ? 0 : it->second;
  }
  bool uses_only(std::initializer_list<int> ms) const {
    for (const auto& [m, e] : factors)
      if (std::find(ms.begin(), ms.end(), m) == ms.end())
        return false;
    return true;
  }
  BigInt evaluate(const BigInt& q) const {
    BigInt v = 1;
    for (const auto& [m, e] : factors) {
      BigInt f = poly_eval(cyclotomic(m), q);
      for (int k = 0; k < e; ++k)
        v *= f;
    }
    return v;
  }
  // Order of any finite-order matrix with this characteristic polynomial
  // (when semisimple): lcm of the indices.
  std::int64_t index_lcm() const {
    std::int64_t l = 1;
    for (const auto& [m, e] : factors)
      l = std::lcm(l, static_cast<std::int64_t>(m));
    return l;
  }

  friend bool operator==(const CycloFactorization& a, const CycloFactorization& b) { return a.factors == b.factors; }
  friend bool operator<(const CycloFactorization& a, const CycloFactorization& b) { return a.factors < b.factors; }
};

// "(q-1)", "(q^2-q+1)", ... for Phi_m(q).
inline std::string cyclotomic_text(int m) {
  Poly p = cyclotomic(m);
  std::string s;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (p[k] == 0)
      continue;
    BigInt c = p[k];
    if (!s.empty() || c < 0)
      s += c < 0 ? "-" : "+";
    BigInt ac = abs(c);
    if (ac != 1 || k == 0)
      s += ac.str();
    if (k >= 1)
      s += "q";
    if (k >= 2)
      s += "^" + std::to_string(k);
  }
  return "(" + s + ")";
}

// Factors sorted by index, joined by '*'; the empty product is "1".
inline std::string order_polynomial_text(const CycloFactorization& f) {
  if (f.factors.empty())
    return "1";
  std::string s;
  for (const auto& [m, e] : f.factors) {
    if (!s.empty())
      s += "*";
    s += cyclotomic_text(m);
    if (e > 1)
      s += "^" + std::to_string(e);
  }
  return s;
}

inline CycloFactorization cyclo_factor_poly(Poly p) {
  CycloFactorization f;
  const int n = static_cast<int>(p.size()) - 1;
  // phi(m) >= sqrt(m/2), so indices beyond 2 n^2 cannot occur
  const int limit = std::max(2, 2 * n * n);
  for (int m = 1; m <= limit && p.size() > 1; ++m) {
    if (euler_phi(m) > n)
      continue;
    Poly c = cyclotomic(m);
    for (;;) {
      auto q = poly_exact_div(p, c);
      if (!q)
        break;
      p = *q;
      ++f.factors[m];
    }
  }
  if (p.size() != 1 || p[0] != 1)
    throw NotFiniteOrder("characteristic polynomial has a non-cyclotomic factor");
  return f;
}

inline CycloFactorization cyclo_factor(const IntMatrix& phi) { return cyclo_factor_poly(charpoly(phi)); }

// Multiplicative order of an integer matrix, if finite.
inline std::optional<std::int64_t> matrix_order(const IntMatrix& phi) {
  CycloFactorization f;
  try {
    f = cyclo_factor(phi);
  } catch (const NotFiniteOrder&) {
    return std::nullopt;
  }
  const std::int64_t bound = f.index_lcm();
  const IntMatrix id = IntMatrix::identity(phi.rows());
  IntMatrix p = phi;
  for (std::int64_t k = 1; k <= bound; ++k) {
    if (p == id)
      return k;
    p = p * phi;
  }
  return std::nullopt; // cyclotomic but not semisimple (unipotent part)
}

inline IntMatrix matrix_poly(const Poly& p, const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix r(n, n);
  for (std::size_t k = p.size(); k-- > 0;) {
    r = r * a;
    for (std::size_t i = 0; i < n; ++i)
      r(i, i) += p[k];
  }
  return r;
}

// A torus S with Y(S) = lattice and F = q * phi; phi acts on column vectors of
// coordinates with respect to lattice.basis() rows.
class TwistedTorus {
public:
  TwistedTorus() = default;
  TwistedTorus(Lattice lattice, IntMatrix phi) : lattice_(std::move(lattice)), phi_(std::move(phi)) {
    if (phi_.rows() != lattice_.rank() || phi_.cols() != lattice_.rank())
      throw DimensionMismatch("phi must be square of the lattice rank");
    if (lattice_.rank() > 0 && !matrix_order(phi_))
      throw NotFiniteOrder("phi does not have finite order");
  }
  explicit TwistedTorus(IntMatrix phi) : TwistedTorus(Lattice::full(phi.rows()), std::move(phi)) {}

  const Lattice& lattice() const { return lattice_; }
  const IntMatrix& phi() const { return phi_; }
  std::size_t dim() const { return lattice_.rank(); }

private:
  Lattice lattice_;
  IntMatrix phi_;
};

inline CycloFactorization cyclo_factor(const TwistedTorus& t) {
  if (t.dim() == 0)
    return {};
  return cyclo_factor(t.phi());
}

inline std::string order_polynomial_text(const TwistedTorus& t) { return order_polynomial_text(cyclo_factor(t)); }

// S^F = Y / (q phi - 1) Y.
inline FinAbGroup fixed_structure(const TwistedTorus& t, const BigInt& q) {
  const std::size_t n = t.dim();
  if (n == 0)
    return FinAbGroup();
  IntMatrix a = q * t.phi();
  for (std::size_t i = 0; i < n; ++i)
    a(i, i) -= 1;
  return quotient_structure(a.transpose(), n);
}

// Unique maximal Phi_m-subtorus: the saturated kernel of Phi_m(phi).
inline TwistedTorus sylow_phi_subtorus(const TwistedTorus& t, int m) {
  if (m < 1)
    throw DimensionMismatch("cyclotomic index must be positive");
  const Lattice& lat = t.lattice();
  const std::size_t n = t.dim();
  const std::size_t amb = lat.ambient_rank();
  if (n == 0)
    return t;
  IntMatrix pm = matrix_poly(cyclotomic(m), t.phi());
  Lattice k = saturated_kernel(pm.transpose()); // coordinates v with Phi_m(phi) v = 0
  if (k.rank() == 0)
    return TwistedTorus(Lattice::zero(amb), IntMatrix(0, 0));
  Lattice sub(amb, k.basis() * lat.basis());
  const std::size_t r = sub.rank();
  IntMatrix phi(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto c = lat.coordinates(sub.basis().row(i));
    std::vector<BigInt> img = t.phi().apply(*c);
    std::vector<BigInt> amb_img(amb, BigInt(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < amb; ++a)
        amb_img[a] += img[j] * lat.basis()(j, a);
    auto d = sub.coordinates(amb_img);
    if (!d)
      throw DimensionMismatch("Phi_m-kernel is not phi-stable");
    for (std::size_t j = 0; j < r; ++j)
      phi(j, i) = (*d)[j];
  }
  return TwistedTorus(sub, phi);
}

// The six isomorphism types of S^F for dim S = 2.
inline std::set<FinAbGroup> dim2_allowed_groups(const BigInt& q) {
  return {
      FinAbGroup::from_cyclic({q - 1, q - 1}),
      FinAbGroup::from_cyclic({q - 1, q + 1}),
      FinAbGroup::from_cyclic({q + 1, q + 1}),
      FinAbGroup::from_cyclic({q * q - 1}),
      FinAbGroup::from_cyclic({q * q + q + 1}),
      FinAbGroup::from_cyclic({q * q - q + 1}),
  };
}

// All finite-order phi in GL2(Z) with entries in [-bound, bound].
inline std::vector<IntMatrix> finite_order_gl2(int bound = 2) {
  std::vector<IntMatrix> out;
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        for (int d = -bound; d <= bound; ++d) {
          const int det = a * d - b * c;
          if (det != 1 && det != -1)
            continue;
          IntMatrix m{{a, b}, {c, d}};
          if (matrix_order(m))
            out.push_back(m);
        }
  return out;
}

struct Dim2SurveyEntry {
  IntMatrix phi;
  CycloFactorization factors;
  FinAbGroup structure;
  bool allowed = false;
};

struct Dim2Survey {
  BigInt q;
  std::vector<Dim2SurveyEntry> entries;
  std::set<FinAbGroup> structures;
  bool all_allowed = true;
};

inline Dim2Survey dim2_survey(const BigInt& q, int bound = 2) {
  Dim2Survey s;
  s.q = q;
  const auto allowed = dim2_allowed_groups(q);
  for (const IntMatrix& phi : finite_order_gl2(bound)) {
    TwistedTorus t(phi);
    Dim2SurveyEntry e{phi, cyclo_factor(t), fixed_structure(t, q), false};
    e.allowed = allowed.count(e.structure) > 0;
    s.all_allowed = s.all_allowed && e.allowed;
    s.structures.insert(e.structure);
    s.entries.push_back(std::move(e));
  }
  return s;
}

} // namespace ssverify

#endif // SSVERIFY_TORUS_HPP_
