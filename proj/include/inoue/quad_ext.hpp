#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "inoue/int_matrix.hpp"

namespace inoue {

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  Int s = boost::multiprecision::sqrt(n);
  return s * s == n;
}

/// Exact element q + s*sqrt(D) of the real quadratic field Q(sqrt(D)).
/// D is carried as given (not reduced to its square-free part); two operands
/// must share the same D unless one of them is rational (s = 0).
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rat q, Rat s, Int D) : q_(std::move(q)), s_(std::move(s)), D_(std::move(D)) {
    if (D_ <= 0 || is_perfect_square(D_)) throw PreconditionError("QuadExt: D must be a positive non-square");
  }
  /// Rational element living in Q(sqrt(D)).
  static QuadExt rational(Rat q, Int D) { return QuadExt(std::move(q), Rat(0), std::move(D)); }
  static QuadExt sqrt_of(Int D) { return QuadExt(Rat(0), Rat(1), std::move(D)); }

  const Rat& rational_part() const noexcept { return q_; }
  const Rat& surd_part() const noexcept { return s_; }
  const Int& D() const noexcept { return D_; }
  bool is_rational() const { return s_ == 0; }
  bool is_zero() const { return q_ == 0 && s_ == 0; }

  QuadExt conj() const { return QuadExt(q_, -s_, D_, Unchecked{}); }
  /// Field norm q^2 - s^2 D.
  Rat norm() const { return q_ * q_ - s_ * s_ * Rat(D_); }

  /// Exact sign of the real embedding with sqrt(D) > 0.
  int sign() const {
    int sq = q_ > 0 ? 1 : (q_ < 0 ? -1 : 0);
    int ss = s_ > 0 ? 1 : (s_ < 0 ? -1 : 0);
    if (ss == 0) return sq;
    if (sq == 0 || sq == ss) return ss;
    return q_ * q_ > s_ * s_ * Rat(D_) ? sq : ss;
  }

  double to_double() const {
    return q_.convert_to<double>() + s_.convert_to<double>() * std::sqrt(D_.convert_to<double>());
  }

  QuadExt inverse() const {
    if (is_zero()) throw PreconditionError("QuadExt: inverse of zero");
    Rat n = norm();
    return QuadExt(q_ / n, -s_ / n, D_, Unchecked{});
  }

  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    return QuadExt(a.q_ + b.q_, a.s_ + b.s_, common_D(a, b), Unchecked{});
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) {
    return QuadExt(a.q_ - b.q_, a.s_ - b.s_, common_D(a, b), Unchecked{});
  }
  friend QuadExt operator-(const QuadExt& a) { return QuadExt(-a.q_, -a.s_, a.D_, Unchecked{}); }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    Int D = common_D(a, b);
    return QuadExt(a.q_ * b.q_ + a.s_ * b.s_ * Rat(D), a.q_ * b.s_ + a.s_ * b.q_, D, Unchecked{});
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }
  friend QuadExt operator*(const Rat& k, const QuadExt& a) { return QuadExt(k * a.q_, k * a.s_, a.D_, Unchecked{}); }
  friend QuadExt operator*(const QuadExt& a, const Rat& k) { return k * a; }
  friend QuadExt operator+(const QuadExt& a, const Rat& k) { return QuadExt(a.q_ + k, a.s_, a.D_, Unchecked{}); }
  friend QuadExt operator-(const QuadExt& a, const Rat& k) { return QuadExt(a.q_ - k, a.s_, a.D_, Unchecked{}); }

  QuadExt& operator+=(const QuadExt& b) { return *this = *this + b; }
  QuadExt& operator-=(const QuadExt& b) { return *this = *this - b; }
  QuadExt& operator*=(const QuadExt& b) { return *this = *this * b; }

  // Values compare as real numbers; elements of different fields are never equal
  // unless both are rational.
  friend bool operator==(const QuadExt& a, const QuadExt& b) {
    if (a.s_ == 0 && b.s_ == 0) return a.q_ == b.q_;
    return a.D_ == b.D_ && a.q_ == b.q_ && a.s_ == b.s_;
  }
  friend bool operator<(const QuadExt& a, const QuadExt& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadExt& a, const QuadExt& b) { return (a - b).sign() > 0; }

  /// Human-readable form with the square factor of D pulled out, e.g. "3/2 + 1/2*sqrt(5)".
  std::string str() const {
    Int k = 1, d0 = D_;
    for (Int f = 2; f * f <= d0; ++f)
      while (d0 % (f * f) == 0) {
        d0 /= f * f;
        k *= f;
      }
    Rat s = s_ * Rat(k);
    std::ostringstream os;
    if (s == 0) {
      os << q_;
      return os.str();
    }
    if (q_ != 0) os << q_ << (s > 0 ? " + " : " - ");
    else if (s < 0) os << "-";
    Rat as = s < 0 ? Rat(-s) : s;
    if (as != 1) os << as << "*";
    os << "sqrt(" << d0 << ")";
    return os.str();
  }

 private:
  struct Unchecked {};
  QuadExt(Rat q, Rat s, Int D, Unchecked) : q_(std::move(q)), s_(std::move(s)), D_(std::move(D)) {}

  static Int common_D(const QuadExt& a, const QuadExt& b) {
    if (a.D_ == b.D_) return a.D_;
    if (b.s_ == 0) return a.D_;
    if (a.s_ == 0) return b.D_;
    throw PreconditionError("QuadExt: operands live in different fields");
  }

  Rat q_{0};
  Rat s_{0};
  Int D_{5};
};

using QVec2 = std::array<QuadExt, 2>;

inline QuadExt qdot(const QVec2& a, const QVec2& b) { return a[0] * b[0] + a[1] * b[1]; }

/// Integer row vector times a column of field elements.
inline QuadExt qdot(const Vec2& row, const QVec2& col) {
  return Rat(row[0]) * col[0] + Rat(row[1]) * col[1];
}

inline QuadExt qdet(const QVec2& a, const QVec2& b) { return a[0] * b[1] - a[1] * b[0]; }

inline QVec2 operator*(const IntMat& m, const QVec2& v) {
  if (m.rows() != 2 || m.cols() != 2) throw PreconditionError("expected a 2x2 matrix");
  return {Rat(m(0, 0)) * v[0] + Rat(m(0, 1)) * v[1], Rat(m(1, 0)) * v[0] + Rat(m(1, 1)) * v[1]};
}

inline QVec2 operator*(const QuadExt& k, const QVec2& v) { return {k * v[0], k * v[1]}; }
inline QVec2 operator+(const QVec2& a, const QVec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline QVec2 operator-(const QVec2& a, const QVec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

/// Solve m x = rhs exactly for an invertible 2x2 integer matrix.
inline QVec2 solve2(const IntMat& m, const QVec2& rhs) {
  Int d = det(m);
  if (d == 0) throw PreconditionError("solve2: singular matrix");
  Rat inv = Rat(1) / Rat(d);
  return {inv * (Rat(m(1, 1)) * rhs[0] - Rat(m(0, 1)) * rhs[1]),
          inv * (Rat(m(0, 0)) * rhs[1] - Rat(m(1, 0)) * rhs[0])};
}

}  // namespace inoue
