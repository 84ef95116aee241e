#pragma once

#include "shadowing/quadratic.hpp"
#include "shadowing/random.hpp"
#include "shadowing/system.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace shadowing {

/// Vector in the plane over Q[sqrt 5]; used for lifted torus differences.
struct Vec2 {
  QuadraticNumber x;
  QuadraticNumber y;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const QuadraticNumber& s, const Vec2& v) { return {s * v.x, s * v.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

QuadraticNumber sup_norm(const Vec2& v);

/// Integer 2x2 matrix with arbitrary precision entries.
struct IntMatrix2 {
  std::array<Integer, 4> e;  // row major

  Vec2 operator*(const Vec2& v) const;
};

namespace cat {

/// Rows (2,1),(1,1); determinant 1, eigenvalues (3 +- sqrt 5)/2.
Vec2 apply(const Vec2& v);
/// Rows (1,-1),(-1,2).
Vec2 apply_inv(const Vec2& v);
/// A^n for any integer n, from Fibonacci numbers.
IntMatrix2 power(std::int64_t n);

/// Eigenvector (1, (sqrt5 - 1)/2) for lambda.
Vec2 unstable_direction();
/// Eigenvector (1, -(sqrt5 + 1)/2) for 1/lambda.
Vec2 stable_direction();

/// Coefficient a in v = a * unstable_direction() + b * stable_direction().
QuadraticNumber unstable_coefficient(const Vec2& v);
QuadraticNumber stable_coefficient(const Vec2& v);

struct Split {
  Vec2 stable;
  Vec2 unstable;
};

/// Exact decomposition v = stable + unstable along the eigenlines.
Split stable_unstable_split(const Vec2& v);

/// Operator norm, in the sup norm, of either eigenprojection: lambda / sqrt 5.
QuadraticNumber projection_constant();

}  // namespace cat

/// Point of the torus with both coordinates reduced into [0, 1).
struct ToralPoint {
  QuadraticNumber x;
  QuadraticNumber y;

  ToralPoint() = default;
  ToralPoint(QuadraticNumber px, QuadraticNumber py);

  friend bool operator==(const ToralPoint&, const ToralPoint&) = default;
};

/// Representative of (a - b) mod Z^2 with coordinates in (-1/2, 1/2].
Vec2 lift_difference(const ToralPoint& a, const ToralPoint& b);
ToralPoint translate(const ToralPoint& p, const Vec2& v);

/// Cat map (x, y) -> (2x + y, x + y) mod 1 with the sup metric on the torus.
class ToralSystem {
 public:
  using Point = ToralPoint;
  using Distance = QuadraticNumber;

  /// Largest operating radius for linear reasoning: three-Lipschitz steps
  /// cannot wrap around the torus below it.
  static Distance linear_regime_radius() { return Rational(1, 6); }
  static Distance default_alpha() { return Rational(1, 8); }

  explicit ToralSystem(Distance alpha = default_alpha());

  std::string name() const { return "toral"; }

  Point apply(const Point& p) const;
  Point apply_inv(const Point& p) const;
  Point iterate(const Point& p, std::int64_t n) const;

  Distance dist(const Point& p, const Point& q) const;
  bool same(const Point& p, const Point& q) const { return p == q; }

  Distance alpha() const { return alpha_; }
  int lipschitz() const { return 3; }
  Distance diameter() const { return Rational(1, 2); }
  /// alpha / C_p: below it both decay chains of one_jump_shadow stay under alpha.
  Distance one_jump_threshold() const;

  /// Local product point x + v_s where lift(y - x) = v_s + v_u.
  /// Throws std::domain_error when d(x, y) >= one_jump_threshold().
  Point one_jump_shadow(const Point& x, const Point& y) const;

  TailBound<Distance> tail_sup(const Point& p, const Point& q, TailSide side, const Distance& bound) const;

  std::string format_point(const Point& p) const;
  Point parse_point(std::string_view text) const;
  static std::string format_distance(const Distance& d) { return to_string(d); }
  static double approx(const Distance& d) { return d.to_double(); }

  Point random_point(Rng& rng) const;
  /// A point q with 0 < d(p, q) < scale (scale <= 1/2).
  Point perturb(const Point& p, const Distance& scale, Rng& rng) const;

 private:
  Distance alpha_;
};

}  // namespace shadowing
