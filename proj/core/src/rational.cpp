#include "shadowing/rational.hpp"

#include <stdexcept>

namespace shadowing {

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational pow2(std::int64_t exponent) {
  Integer one = 1;
  Integer scaled;
  if (exponent >= 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    return Rational(scaled);
  }
  mpz_mul_2exp(scaled.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
  Rational out(Integer(1), scaled);
  out.canonicalize();
  return out;
}

namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (!(c >= '0' && c <= '9') && !(i == 0 && c == '-')) {
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
  }
  if (s == "-" || s.empty()) throw std::invalid_argument("malformed integer literal: " + std::string(text));
  return Integer(s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    if (text.substr(0, caret) != "2") throw std::invalid_argument("only powers of 2 are accepted: " + std::string(text));
    const Integer e = parse_integer(text.substr(caret + 1));
    if (!e.fits_slong_p()) throw std::invalid_argument("exponent out of range");
    return pow2(e.get_si());
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    const bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    const Integer w = whole.empty() ? Integer(0) : parse_integer(whole);
    const Integer f = frac.empty() ? Integer(0) : parse_integer(frac);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational out(w * scale + f, scale);
    out.canonicalize();
    return negative ? Rational(-out) : out;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

std::int64_t dyadic_floor_exponent(const Rational& value) {
  if (value <= 0) throw std::invalid_argument("dyadic exponent of a nonpositive value");
  std::int64_t e = 0;
  while (pow2(-e) > value) ++e;
  return e;
}

Rational largest_power_of_two_at_most(const Rational& value) {
  if (value <= 0) throw std::invalid_argument("power of two below a nonpositive value");
  std::int64_t e = 0;
  if (value >= 1) {
    while (pow2(e + 1) <= value) ++e;
    return pow2(e);
  }
  return pow2(-dyadic_floor_exponent(value));
}

}  // namespace shadowing
