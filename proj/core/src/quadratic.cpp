#include "shadowing/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace shadowing {

namespace {

int sign_q(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

int sign_z(const Integer& z) { return mpz_sgn(z.get_mpz_t()); }

/// Sign of x + y*sqrt(5) for integers.
int sign_of(const Integer& x, const Integer& y) {
  const int sx = sign_z(x);
  const int sy = sign_z(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const Integer xx = x * x;
  const Integer yy = 5 * y * y;
  return xx > yy ? sx : sy;
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational rational_part, Rational sqrt5_part)
    : a_(std::move(rational_part)), b_(std::move(sqrt5_part)) {
  a_.canonicalize();
  b_.canonicalize();
}

int QuadraticNumber::sign() const {
  const int sa = sign_q(a_);
  const int sb = sign_q(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational aa = a_ * a_;
  const Rational bb = 5 * b_ * b_;
  return aa > bb ? sa : sb;
}

Integer QuadraticNumber::floor() const {
  // a + b sqrt5 = (X + Y sqrt5) / D with integers and D > 0.
  const Integer d = a_.get_den() * b_.get_den();
  const Integer x = a_.get_num() * b_.get_den();
  const Integer y = b_.get_num() * a_.get_den();
  Integer t;
  if (sign_z(y) == 0) {
    t = 0;
  } else {
    Integer root;
    const Integer radicand = 5 * y * y;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    t = sign_z(y) > 0 ? root : Integer(-root - 1);
  }
  // X + Y sqrt5 lies in [X + t, X + t + 1), strictly inside when Y != 0.
  Integer k;
  const Integer base = x + t;
  mpz_fdiv_q(k.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t());
  const Integer next = (k + 1) * d;
  if (sign_of(x - next, y) >= 0) return k + 1;
  return k;
}

QuadraticNumber QuadraticNumber::frac() const { return {a_ - Rational(floor()), b_}; }

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  Rational a = a_ * o.a_ + 5 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  const Rational n = o.norm();
  if (n == 0) throw std::domain_error("division by zero in Q[sqrt5]");
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const QuadraticNumber& l, const QuadraticNumber& r) {
  const int s = (l - r).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QuadraticNumber::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(5.0); }

QuadraticNumber abs(const QuadraticNumber& x) { return x.sign() < 0 ? -x : x; }

QuadraticNumber pow(const QuadraticNumber& x, std::int64_t exponent) {
  if (exponent < 0) return pow(QuadraticNumber(1) / x, -exponent);
  QuadraticNumber result(1);
  QuadraticNumber base = x;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

std::string to_string(const QuadraticNumber& x) {
  const Rational& b = x.sqrt5_part();
  std::string out = to_string(x.rational_part());
  if (b < 0) {
    out += "-" + to_string(Rational(-b));
  } else {
    out += "+" + to_string(b);
  }
  return out + "*s5";
}

QuadraticNumber parse_quadratic(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  constexpr std::string_view kSuffix = "*s5";
  if (text.size() < kSuffix.size() || text.substr(text.size() - kSuffix.size()) != kSuffix) {
    return {parse_rational(text), Rational(0)};
  }
  text.remove_suffix(kSuffix.size());
  // The split is the last sign that is not at the start and not right after '+'.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != '+' && text[i - 1] != '-' && text[i - 1] != '^') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {Rational(0), parse_rational(text)};
  const Rational a = parse_rational(text.substr(0, split));
  std::string_view tail = text.substr(split);
  bool negative = false;
  if (tail.front() == '-') negative = true;
  tail.remove_prefix(1);
  Rational b = parse_rational(tail);
  if (negative) b = -b;
  return {a, b};
}

}  // namespace shadowing
