#pragma once

#include "shadowing/rational.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace shadowing {

/// Exact element a + b*sqrt(5) of the field Q[sqrt 5].
///
/// Ordering is decided exactly: the sign of a + b*sqrt(5) follows from the
/// signs of a and b, and when they disagree from comparing a^2 with 5 b^2
/// (never equal for b != 0 since sqrt(5) is irrational).
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational rational_part, Rational sqrt5_part = 0);
  QuadraticNumber(long value) : a_(value), b_(0) {}
  QuadraticNumber(int value) : a_(value), b_(0) {}

  static QuadraticNumber sqrt5() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadraticNumber conjugate() const { return {a_, -b_}; }
  /// a^2 - 5 b^2, the field norm.
  Rational norm() const { return a_ * a_ - 5 * b_ * b_; }

  /// Exact floor, computed with integer square roots and a final sign test.
  Integer floor() const;
  /// Value reduced into [0, 1).
  QuadraticNumber frac() const;

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber l, const QuadraticNumber& r) { return l += r; }
  friend QuadraticNumber operator-(QuadraticNumber l, const QuadraticNumber& r) { return l -= r; }
  friend QuadraticNumber operator*(QuadraticNumber l, const QuadraticNumber& r) { return l *= r; }
  friend QuadraticNumber operator/(QuadraticNumber l, const QuadraticNumber& r) { return l /= r; }
  QuadraticNumber operator-() const { return {-a_, -b_}; }

  friend bool operator==(const QuadraticNumber& l, const QuadraticNumber& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend std::strong_ordering operator<=>(const QuadraticNumber& l, const QuadraticNumber& r);

  double to_double() const;

 private:
  Rational a_;
  Rational b_;
};

QuadraticNumber abs(const QuadraticNumber& x);
QuadraticNumber pow(const QuadraticNumber& x, std::int64_t exponent);

/// "a/b+c/d*s5"; a negative sqrt(5) coefficient is written "a/b-c/d*s5".
std::string to_string(const QuadraticNumber& x);
QuadraticNumber parse_quadratic(std::string_view text);

namespace golden {

/// (1 + sqrt 5) / 2.
inline QuadraticNumber phi() { return {Rational(1, 2), Rational(1, 2)}; }
/// Expanding eigenvalue (3 + sqrt 5) / 2 of the cat matrix.
inline QuadraticNumber lambda() { return {Rational(3, 2), Rational(1, 2)}; }
/// Contracting eigenvalue (3 - sqrt 5) / 2 = 1 / lambda.
inline QuadraticNumber lambda_inv() { return {Rational(3, 2), Rational(-1, 2)}; }

}  // namespace golden

}  // namespace shadowing
