#include "shadowing/toral.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shadowing {

QuadraticNumber sup_norm(const Vec2& v) { return std::max(abs(v.x), abs(v.y)); }

Vec2 IntMatrix2::operator*(const Vec2& v) const {
  const QuadraticNumber a{Rational(e[0])}, b{Rational(e[1])}, c{Rational(e[2])}, d{Rational(e[3])};
  return {a * v.x + b * v.y, c * v.x + d * v.y};
}

namespace cat {

Vec2 apply(const Vec2& v) { return {2 * v.x + v.y, v.x + v.y}; }

Vec2 apply_inv(const Vec2& v) { return {v.x - v.y, -v.x + 2 * v.y}; }

IntMatrix2 power(std::int64_t n) {
  // A^n = [[F(2n+1), F(2n)], [F(2n), F(2n-1)]];  A^-n = [[F(2n-1), -F(2n)], [-F(2n), F(2n+1)]].
  const std::int64_t k = n < 0 ? -n : n;
  Integer f_lo, f_mid, f_hi;
  if (k == 0) return IntMatrix2{{Integer(1), Integer(0), Integer(0), Integer(1)}};
  mpz_fib2_ui(f_mid.get_mpz_t(), f_lo.get_mpz_t(), static_cast<unsigned long>(2 * k));
  f_hi = f_mid + f_lo;
  if (n > 0) return IntMatrix2{{f_hi, f_mid, f_mid, f_lo}};
  return IntMatrix2{{f_lo, Integer(-f_mid), Integer(-f_mid), f_hi}};
}

Vec2 unstable_direction() { return {QuadraticNumber(1), QuadraticNumber(Rational(-1, 2), Rational(1, 2))}; }

Vec2 stable_direction() { return {QuadraticNumber(1), QuadraticNumber(Rational(-1, 2), Rational(-1, 2))}; }

QuadraticNumber unstable_coefficient(const Vec2& v) {
  // a = (v2 + phi v1) / sqrt5
  return (v.y + golden::phi() * v.x) / QuadraticNumber::sqrt5();
}

QuadraticNumber stable_coefficient(const Vec2& v) { return v.x - unstable_coefficient(v); }

Split stable_unstable_split(const Vec2& v) {
  const QuadraticNumber a = unstable_coefficient(v);
  Split s;
  s.unstable = a * unstable_direction();
  s.stable = v - s.unstable;
  return s;
}

QuadraticNumber projection_constant() { return {Rational(1, 2), Rational(3, 10)}; }

}  // namespace cat

ToralPoint::ToralPoint(QuadraticNumber px, QuadraticNumber py) : x(px.frac()), y(py.frac()) {}

namespace {

QuadraticNumber centred(const QuadraticNumber& d) {
  QuadraticNumber r = d.frac();
  if (r > QuadraticNumber(Rational(1, 2))) r -= QuadraticNumber(1);
  return r;
}

QuadraticNumber circle_dist(const QuadraticNumber& a, const QuadraticNumber& b) {
  const QuadraticNumber d = abs(a - b);
  const QuadraticNumber wrap = QuadraticNumber(1) - d;
  return std::min(d, wrap);
}

}  // namespace

Vec2 lift_difference(const ToralPoint& a, const ToralPoint& b) { return {centred(a.x - b.x), centred(a.y - b.y)}; }

ToralPoint translate(const ToralPoint& p, const Vec2& v) { return {p.x + v.x, p.y + v.y}; }

ToralSystem::ToralSystem(Distance alpha) : alpha_(std::move(alpha)) {
  if (alpha_.sign() <= 0 || alpha_ > linear_regime_radius()) {
    throw std::invalid_argument("toral expansivity constant must lie in (0, 1/6]");
  }
}

ToralSystem::Point ToralSystem::apply(const Point& p) const { return {2 * p.x + p.y, p.x + p.y}; }

ToralSystem::Point ToralSystem::apply_inv(const Point& p) const { return {p.x - p.y, -p.x + 2 * p.y}; }

ToralSystem::Point ToralSystem::iterate(const Point& p, std::int64_t n) const {
  if (n == 0) return p;
  if (n == 1) return apply(p);
  if (n == -1) return apply_inv(p);
  const Vec2 v = cat::power(n) * Vec2{p.x, p.y};
  return {v.x, v.y};
}

ToralSystem::Distance ToralSystem::dist(const Point& p, const Point& q) const {
  return std::max(circle_dist(p.x, q.x), circle_dist(p.y, q.y));
}

ToralSystem::Distance ToralSystem::one_jump_threshold() const { return alpha_ / cat::projection_constant(); }

ToralSystem::Point ToralSystem::one_jump_shadow(const Point& x, const Point& y) const {
  const Vec2 v = lift_difference(y, x);
  if (sup_norm(v) >= one_jump_threshold()) {
    throw std::domain_error("one-jump shadow requested beyond the certified threshold");
  }
  return translate(x, cat::stable_unstable_split(v).stable);
}

TailBound<QuadraticNumber> ToralSystem::tail_sup(const Point& p, const Point& q, TailSide side,
                                                 const Distance& bound) const {
  TailBound<QuadraticNumber> out;
  const Vec2 v = lift_difference(q, p);
  const cat::Split split = cat::stable_unstable_split(v);
  // On the right the unstable part must vanish, on the left the stable part.
  const Vec2& growing = side == TailSide::Right ? split.unstable : split.stable;
  const Vec2& decaying = side == TailSide::Right ? split.stable : split.unstable;
  const QuadraticNumber lam = golden::lambda();
  if (growing.is_zero()) {
    out.sup = sup_norm(v) * golden::lambda_inv();
    out.reason = std::string(side == TailSide::Right ? "unstable" : "stable") + " component vanishes exactly";
    if (*out.sup > bound) out.escape_time = 1;
    return out;
  }
  out.reason = std::string(side == TailSide::Right ? "unstable" : "stable") + " component is nonzero";
  const QuadraticNumber g = sup_norm(growing);
  const QuadraticNumber s = sup_norm(decaying);
  QuadraticNumber up = lam;
  QuadraticNumber down = golden::lambda_inv();
  for (std::int64_t m = 1; m <= 4096; ++m) {
    if (up * g - down * s > bound) {
      out.escape_time = m;
      break;
    }
    up *= lam;
    down *= golden::lambda_inv();
  }
  return out;
}

std::string ToralSystem::format_point(const Point& p) const {
  return "x=" + to_string(p.x) + ", y=" + to_string(p.y);
}

ToralSystem::Point ToralSystem::parse_point(std::string_view text) const {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("toral point needs 'x=..., y=...'");
  auto field = [](std::string_view part, char name) {
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    if (part.size() < 2 || part[0] != name || part[1] != '=') {
      throw std::invalid_argument(std::string("toral point field must start with ") + name + "=");
    }
    return parse_quadratic(part.substr(2));
  };
  const QuadraticNumber x = field(text.substr(0, comma), 'x');
  const QuadraticNumber y = field(text.substr(comma + 1), 'y');
  const QuadraticNumber zero(0), one(1);
  if (x < zero || x >= one || y < zero || y >= one) {
    throw std::invalid_argument("toral point coordinates must lie in [0, 1)");
  }
  return {x, y};
}

ToralSystem::Point ToralSystem::random_point(Rng& rng) const {
  constexpr std::int64_t kDen = std::int64_t{1} << 20;
  return {QuadraticNumber(ratio(uniform_int(rng, 0, kDen - 1), kDen)),
          QuadraticNumber(ratio(uniform_int(rng, 0, kDen - 1), kDen))};
}

ToralSystem::Point ToralSystem::perturb(const Point& p, const Distance& scale, Rng& rng) const {
  if (scale.sign() <= 0) throw std::invalid_argument("perturbation scale must be positive");
  const QuadraticNumber radius = std::min(scale, diameter());
  constexpr std::int64_t kDen = std::int64_t{1} << 16;
  Rational rx(0), ry(0);
  while (rx == 0 && ry == 0) {
    rx = ratio(uniform_int(rng, -(kDen - 1), kDen - 1), kDen);
    ry = ratio(uniform_int(rng, -(kDen - 1), kDen - 1), kDen);
  }
  return translate(p, Vec2{radius * QuadraticNumber(rx), radius * QuadraticNumber(ry)});
}

}  // namespace shadowing
