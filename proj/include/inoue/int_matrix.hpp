#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "inoue/errors.hpp"

namespace inoue {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using Vec2 = std::array<Int, 2>;

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline bool is_even(const Int& a) { return a % 2 == 0; }

/// Dense integer matrix with exact entries. Row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMat(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw PreconditionError("ragged matrix literal");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Int>& data() const noexcept { return data_; }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntVec column(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
  }

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMat operator+(IntMat a, const IntMat& b) {
    check_same_shape(a, b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend IntMat operator-(IntMat a, const IntMat& b) {
    check_same_shape(a, b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend IntMat operator-(IntMat a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend IntMat operator*(const Int& s, IntMat a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product: inner dimensions differ");
    IntMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend IntVec operator*(const IntMat& a, const IntVec& v) {
    if (a.cols_ != v.size()) throw PreconditionError("matrix-vector product: size mismatch");
    IntVec out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }
  friend Vec2 operator*(const IntMat& a, const Vec2& v) {
    if (a.rows_ != 2 || a.cols_ != 2) throw PreconditionError("expected a 2x2 matrix");
    return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  static void check_same_shape(const IntMat& a, const IntMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Row vector times matrix.
inline Vec2 row_times(const Vec2& row, const IntMat& m) {
  return {row[0] * m(0, 0) + row[1] * m(1, 0), row[0] * m(0, 1) + row[1] * m(1, 1)};
}

inline Int dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

/// det of the 2x2 matrix with rows a, b.
inline Int det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Exact determinant (fraction-free Bareiss elimination).
inline Int det(const IntMat& m) {
  if (!m.square()) throw PreconditionError("det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  IntMat a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline Int trace(const IntMat& m) {
  Int t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

/// Characteristic polynomial det(xI - m), coefficients from x^n down to x^0 (Faddeev-LeVerrier).
inline std::vector<Int> charpoly(const IntMat& m) {
  if (!m.square()) throw PreconditionError("charpoly of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Int> c(n + 1);
  c[0] = 1;
  IntMat mk = IntMat::identity(n);  // M_k
  for (std::size_t k = 1; k <= n; ++k) {
    IntMat am = m * mk;
    c[k] = -trace(am) / Int(k);
    mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[k];
  }
  return c;
}

/// Adjugate (transpose of the cofactor matrix); m * adj(m) = det(m) I.
inline IntMat adjugate(const IntMat& m) {
  if (!m.square()) throw PreconditionError("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  IntMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMat minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Int cof = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

inline bool is_unimodular(const IntMat& m) {
  if (!m.square()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

/// Inverse of a unimodular matrix (exact, integral).
inline IntMat inverse_unimodular(const IntMat& m) {
  Int d = det(m);
  if (d != 1 && d != -1) throw PreconditionError("matrix is not unimodular: det = " + d.str());
  return d * adjugate(m);
}

inline IntMat power(const IntMat& m, long long e) {
  IntMat base = e < 0 ? inverse_unimodular(m) : m;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  IntMat acc = IntMat::identity(m.rows());
  while (k) {
    if (k & 1ULL) acc = acc * base;
    k >>= 1ULL;
    if (k) base = base * base;
  }
  return acc;
}

inline IntMat from_vector(std::size_t rows, std::size_t cols, const IntVec& v) {
  if (v.size() != rows * cols) throw PreconditionError("from_vector: size mismatch");
  IntMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

inline IntVec to_vector(const IntMat& m) { return m.data(); }

inline std::ostream& operator<<(std::ostream& os, const IntMat& m) { return os << m.str(); }

inline bool fits_int64(const Int& x) {
  return x <= Int(std::numeric_limits<std::int64_t>::max()) && x >= Int(std::numeric_limits<std::int64_t>::min());
}

}  // namespace inoue
