#ifndef SSVERIFY_MATRIX_HPP_
#define SSVERIFY_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace ssverify {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense row-major matrix. T is BigInt for lattice work, std::int64_t on the
// hot Weyl-group paths, Rational for solving.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw DimensionMismatch("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  template <class U>
  static Matrix from_rows(const std::vector<std::vector<U>>& rows, std::size_t cols = 0) {
    if (!rows.empty())
      cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = T(rows[i][j]);
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    if (v.size() != cols_)
      throw DimensionMismatch("set_row");
    std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
  }
  void append_row(const std::vector<T>& v) {
    if (rows_ == 0 && cols_ == 0)
      cols_ = v.size();
    if (v.size() != cols_)
      throw DimensionMismatch("append_row");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += k * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(i, j) = -(*this)(i, j);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        m(i, j) = U((*this)(i, j));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionMismatch("matrix sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionMismatch("matrix difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& k, Matrix a) {
    for (auto& x : a.data_)
      x *= k;
    return a;
  }

  // Matrix times column vector.
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_)
      throw DimensionMismatch("matrix-vector product");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_)
      return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_)
      return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  const std::vector<T>& data() const { return data_; }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i)
      out.push_back(row(i));
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using SmallMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;

inline std::int64_t to_int64(const BigInt& x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN))
    throw Overflow("value does not fit in 64 bits");
  return static_cast<std::int64_t>(x);
}

inline SmallMatrix to_small(const IntMatrix& m) {
  SmallMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      s(i, j) = to_int64(m(i, j));
  return s;
}

inline IntMatrix to_big(const SmallMatrix& m) { return m.cast<BigInt>(); }

// Exact inverse over Q; throws DimensionMismatch if singular or non-square.
inline RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n)
    throw DimensionMismatch("inverse of non-square matrix");
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0)
      ++p;
    if (p == n)
      throw DimensionMismatch("singular matrix");
    m.swap_rows(p, c);
    inv.swap_rows(p, c);
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0)
        continue;
      const Rational k = -m(i, c);
      m.add_row(i, c, k);
      inv.add_row(i, c, k);
    }
  }
  return inv;
}

// Converts a rational matrix known to be integral.
inline IntMatrix to_integral(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1)
        throw DimensionMismatch("matrix is not integral");
      out(i, j) = numerator(m(i, j));
    }
  return out;
}

// Rank over Q by fraction-free elimination.
template <class T>
std::size_t rank_of(const Matrix<T>& a) {
  IntMatrix m = a.template cast<BigInt>();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0)
      ++p;
    if (p == m.rows())
      continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j)
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

// Same as rank_of for small matrices; uses 128-bit Bareiss and falls back to
// BigInt if an intermediate minor leaves the 64-bit range.
inline std::size_t rank_small(const SmallMatrix& original) {
  SmallMatrix m = original;
  std::size_t r = 0;
  __int128 prev = 1;
  constexpr __int128 limit = static_cast<__int128>(1) << 62;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0)
      ++p;
    if (p == m.rows())
      continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        __int128 v = (static_cast<__int128>(m(r, c)) * m(i, j) -
                      static_cast<__int128>(m(i, c)) * m(r, j)) / prev;
        if (v >= limit || v <= -limit)
          return rank_of(original);
        m(i, j) = static_cast<std::int64_t>(v);
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

inline BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0)
    a = -a;
  if (b < 0)
    b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

} // namespace ssverify

#endif // SSVERIFY_MATRIX_HPP_
