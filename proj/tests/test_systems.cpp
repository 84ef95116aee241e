#include "doctest.h"

#include "shadowing/shift.hpp"
#include "shadowing/tails.hpp"
#include "shadowing/toral.hpp"

using namespace shadowing;

namespace {

// Scans coordinates directly; K is far beyond any core or period used here.
Rational brute_shift_dist(const ShiftPoint& p, const ShiftPoint& q, std::int64_t K = 400) {
  for (std::int64_t r = 0; r <= K; ++r) {
    if (p.at(r) != q.at(r) || p.at(-r) != q.at(-r)) return pow2(-r);
  }
  return Rational(0);
}

ShiftPoint word_point(const std::string& left, const std::string& core, const std::string& right, std::int64_t o) {
  return ShiftPoint(parse_word(left), parse_word(core), parse_word(right), o);
}

QuadraticNumber q(std::int64_t n, std::int64_t d) { return QuadraticNumber(ratio(n, d)); }

}  // namespace

TEST_CASE("shift point coordinates and normalisation") {
  const ShiftPoint p = word_point("01", "110", "1", 1);
  CHECK(p.at(-1) == 1);  // core starts at coordinate -1
  CHECK(p.at(0) == 1);
  CHECK(p.at(1) == 0);
  CHECK(p.at(2) == 1);
  CHECK(p.at(-2) == 1);  // L.back() sits just before the core
  CHECK(p.at(-3) == 0);
  const ShiftSystem sys;
  CHECK(sys.same(ShiftPoint({0, 0}, {0, 0, 0}, {0}, 5), ShiftPoint::constant(0)));
  CHECK(ShiftPoint({0, 0}, {0, 0, 0}, {0}, 5) == ShiftPoint::constant(0));
  CHECK(ShiftPoint({0, 1}, {}, {0, 1}, 3) == ShiftPoint({0, 1}, {}, {0, 1}, 1));
}

TEST_CASE("shift apply and inverse") {
  const ShiftSystem sys;
  const ShiftPoint zero = ShiftPoint::constant(0);
  CHECK(sys.same(sys.apply(zero), zero));
  const ShiftPoint alt({0, 1}, {}, {0, 1}, 0);
  CHECK(!sys.same(sys.apply(alt), alt));
  CHECK(sys.same(sys.apply(sys.apply(alt)), alt));
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const ShiftPoint p = sys.random_point(rng);
    CHECK(sys.same(sys.apply_inv(sys.apply(p)), p));
    CHECK(sys.same(sys.apply(sys.apply_inv(p)), p));
    if (i < 300) {
      const ShiftPoint a = sys.apply(p);
      for (std::int64_t k = -20; k <= 20; ++k) CHECK(a.at(k) == p.at(k + 1));
    }
  }
}

TEST_CASE("shift metric examples") {
  const ShiftSystem sys;
  const ShiftPoint zero = ShiftPoint::constant(0);
  CHECK(sys.dist(zero, zero) == 0);
  CHECK(sys.dist(zero, zero.with_symbol(3, 1)) == Rational(1, 8));
  CHECK(sys.dist(zero, zero.with_symbol(-3, 1)) == Rational(1, 8));
  CHECK(sys.dist(zero, zero.with_symbol(0, 1)) == 1);
  // Same core, right periods 01 and 011: tails disagree within lcm 6 of the core end.
  const ShiftPoint a = word_point("0", "1011", "01", 0);
  const ShiftPoint b = word_point("0", "1011", "011", 0);
  CHECK(sys.dist(a, b) == brute_shift_dist(a, b));
  CHECK(sys.dist(a, b) > 0);
  // Periods 01 and 0101 are the same sequence.
  CHECK(sys.dist(word_point("0", "1", "01", 0), word_point("0", "1", "0101", 0)) == 0);
}

TEST_CASE("shift metric agrees with a coordinate scan on random points") {
  const ShiftSystem sys(3);
  Rng rng(5);
  for (int i = 0; i < 3000; ++i) {
    const ShiftPoint p = sys.random_point(rng);
    const ShiftPoint q = i % 3 == 0 ? sys.perturb(p, pow2(-uniform_int(rng, 0, 12)), rng) : sys.random_point(rng);
    const Rational d = sys.dist(p, q);
    CHECK(d == brute_shift_dist(p, q));
    CHECK(d == sys.dist(q, p));
    CHECK((d == 0) == sys.same(p, q));
  }
}

TEST_CASE("shift metric is an ultrametric and the shift is 2-Lipschitz") {
  const ShiftSystem sys;
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const ShiftPoint p = sys.random_point(rng);
    const ShiftPoint q = sys.perturb(p, pow2(-uniform_int(rng, 0, 6)), rng);
    const ShiftPoint r = sys.perturb(q, pow2(-uniform_int(rng, 0, 6)), rng);
    CHECK(sys.dist(p, r) <= std::max(sys.dist(p, q), sys.dist(q, r)));
    CHECK(sys.dist(sys.apply(p), sys.apply(q)) <= 2 * sys.dist(p, q));
    CHECK(sys.dist(sys.apply_inv(p), sys.apply_inv(q)) <= 2 * sys.dist(p, q));
  }
}

TEST_CASE("shift perturbation stays strictly below the scale") {
  const ShiftSystem sys;
  Rng rng(9);
  for (int i = 0; i < 2000; ++i) {
    const ShiftPoint p = sys.random_point(rng);
    const Rational scale = pow2(-uniform_int(rng, 0, 20)) * Rational(3, 2);
    const ShiftPoint q = sys.perturb(p, scale, rng);
    CHECK(sys.dist(p, q) > 0);
    CHECK(sys.dist(p, q) < scale);
  }
}

TEST_CASE("shift text form round-trips and checks the alphabet") {
  const ShiftSystem sys(3);
  Rng rng(10);
  for (int i = 0; i < 500; ++i) {
    const ShiftPoint p = sys.random_point(rng);
    CHECK(sys.parse_point(sys.format_point(p)) == p);
  }
  CHECK(ShiftSystem().format_point(word_point("01", "", "1", 0)) == "L:01 C: R:1 O:0");
  CHECK_THROWS(ShiftSystem(2).parse_point("L:0 C:2 R:1 O:0"));
  CHECK_THROWS(ShiftSystem(2).parse_point("L:0 C:1 R:1"));
  CHECK_THROWS(ShiftSystem(17));
}

TEST_CASE("shift one-jump shadow") {
  const ShiftSystem sys;
  const ShiftPoint x = ShiftPoint::constant(0);
  CHECK(sys.same(sys.one_jump_shadow(x, x), x));
  // y = ...111.1 000... agrees with x on coordinates >= -1? No: on >= 0 only.
  const ShiftPoint y = word_point("1", "", "0", 0);  // 1 at every k < 0
  const ShiftPoint z = sys.one_jump_shadow(x, y);
  for (std::int64_t k = -30; k <= 30; ++k) CHECK(z.at(k) == (k < 0 ? 1 : 0));
  CHECK(sys.dist(z, x) == Rational(1, 2));  // error at 0
}

TEST_CASE("shift one-jump error profile") {
  const ShiftSystem sys;
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const ShiftPoint x = sys.random_point(rng);
    // y differs from x exactly at -1 (and maybe further out), agrees at 0
    ShiftPoint y = x.with_symbol(-1, static_cast<Symbol>(1 - x.at(-1)));
    const bool also_plus_one = i % 2 == 0;
    if (also_plus_one) y = y.with_symbol(1, static_cast<Symbol>(1 - x.at(1)));
    y = y.with_symbol(uniform_int(rng, 3, 9), static_cast<Symbol>(uniform_int(rng, 0, 1)));
    const ShiftPoint z = sys.one_jump_shadow(x, y);
    for (std::int64_t n = 0; n <= 12; ++n) {
      CHECK(sys.dist(sys.iterate(z, n), sys.iterate(x, n)) == pow2(-(n + 1)));
    }
    for (std::int64_t n = -12; n < 0; ++n) {
      const Rational d = sys.dist(sys.iterate(z, n), sys.iterate(y, n));
      CHECK(d <= pow2(-(-n + 1)));
      if (also_plus_one) CHECK(d == pow2(-(-n + 1)));
    }
  }
}

TEST_CASE("shift tail bounds are exact") {
  const ShiftSystem sys;
  Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    const ShiftPoint p = sys.random_point(rng);
    const ShiftPoint q = i % 4 == 0 ? p : sys.perturb(p, pow2(-uniform_int(rng, 0, 5)), rng);
    for (TailSide side : {TailSide::Left, TailSide::Right}) {
      const auto tb = sys.tail_sup(p, q, side, Rational(1, 4));
      REQUIRE(tb.sup);
      Rational brute(0);
      const int dir = side == TailSide::Right ? 1 : -1;
      for (std::int64_t m = 1; m <= 60; ++m) {
        brute = std::max(brute, sys.dist(sys.iterate(p, dir * m), sys.iterate(q, dir * m)));
      }
      CHECK(*tb.sup == brute);
      CHECK(tb.escape_time.has_value() == (brute > Rational(1, 4)));
    }
  }
}

// ---- cat map ---------------------------------------------------------------

TEST_CASE("cat map examples") {
  const ToralSystem sys;
  const ToralPoint origin(QuadraticNumber(0), QuadraticNumber(0));
  CHECK(sys.apply(origin) == origin);
  CHECK(sys.apply(ToralPoint(q(1, 2), q(1, 2))) == ToralPoint(q(1, 2), q(0, 1)));
  CHECK(sys.apply_inv(ToralPoint(q(1, 2), q(0, 1))) == ToralPoint(q(1, 2), q(1, 2)));
  CHECK(ToralPoint(q(5, 4), q(-1, 4)) == ToralPoint(q(1, 4), q(3, 4)));
}

TEST_CASE("cat map inverse and powers") {
  const ToralSystem sys;
  Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    const ToralPoint p = sys.random_point(rng);
    CHECK(sys.apply_inv(sys.apply(p)) == p);
    CHECK(sys.apply(sys.apply_inv(p)) == p);
  }
  const ToralPoint p = sys.random_point(rng);
  ToralPoint stepped = p;
  for (int n = 1; n <= 25; ++n) {
    stepped = sys.apply(stepped);
    CHECK(sys.iterate(p, n) == stepped);
  }
  stepped = p;
  for (int n = 1; n <= 25; ++n) {
    stepped = sys.apply_inv(stepped);
    CHECK(sys.iterate(p, -n) == stepped);
  }
  const IntMatrix2 m = cat::power(7), mi = cat::power(-7);
  const Vec2 e1{QuadraticNumber(1), QuadraticNumber(0)};
  CHECK(mi * (m * e1) == e1);
}

TEST_CASE("torus metric") {
  const ToralSystem sys;
  CHECK(sys.dist(ToralPoint(q(0, 1), q(0, 1)), ToralPoint(q(3, 4), q(0, 1))) == q(1, 4));
  CHECK(sys.dist(ToralPoint(q(1, 3), q(1, 5)), ToralPoint(q(1, 3), q(1, 5))) == q(0, 1));
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const ToralPoint a = sys.random_point(rng), b = sys.random_point(rng), c = sys.random_point(rng);
    CHECK(sys.dist(a, c) <= sys.dist(a, b) + sys.dist(b, c));
    CHECK(sys.dist(a, b) == sys.dist(b, a));
    CHECK(sys.dist(a, b) <= q(1, 2));
  }
}

TEST_CASE("cat map is 3-Lipschitz below the wrap radius") {
  const ToralSystem sys;
  Rng rng(25);
  for (int i = 0; i < 2000; ++i) {
    const ToralPoint p = sys.random_point(rng);
    const ToralPoint r = sys.perturb(p, q(1, 6), rng);
    REQUIRE(sys.dist(p, r) < q(1, 6));
    CHECK(sys.dist(sys.apply(p), sys.apply(r)) <= 3 * sys.dist(p, r));
    CHECK(sys.dist(sys.apply_inv(p), sys.apply_inv(r)) <= 3 * sys.dist(p, r));
  }
}

TEST_CASE("stable and unstable split") {
  const Vec2 zero{QuadraticNumber(0), QuadraticNumber(0)};
  CHECK(cat::stable_unstable_split(zero).stable.is_zero());
  CHECK(cat::stable_unstable_split(zero).unstable.is_zero());
  const Vec2 u = cat::unstable_direction(), s = cat::stable_direction();
  CHECK(cat::apply(u) == golden::lambda() * u);
  CHECK(cat::apply(s) == golden::lambda_inv() * s);
  const Vec2 on_u = q(3, 7) * u;
  CHECK(cat::stable_unstable_split(on_u).stable.is_zero());
  CHECK(cat::stable_unstable_split(on_u).unstable == on_u);
  // (1,0): solve a u + b s = (1,0) by hand, a = phi/sqrt5, b = 1 - a.
  const Vec2 e1{QuadraticNumber(1), QuadraticNumber(0)};
  const auto split = cat::stable_unstable_split(e1);
  const QuadraticNumber a = golden::phi() / QuadraticNumber::sqrt5();
  CHECK(split.unstable == a * u);
  CHECK(split.stable == (QuadraticNumber(1) - a) * s);
  CHECK(split.stable + split.unstable == e1);
  CHECK(cat::apply(split.unstable) == golden::lambda() * split.unstable);
  CHECK(cat::apply(split.stable) == golden::lambda_inv() * split.stable);
}

TEST_CASE("projection constant is the sup-norm operator norm of both projections") {
  const QuadraticNumber cp = cat::projection_constant();
  CHECK(cp == golden::lambda() / QuadraticNumber::sqrt5());
  const Vec2 pp{QuadraticNumber(1), QuadraticNumber(1)}, pm{QuadraticNumber(1), QuadraticNumber(-1)};
  CHECK(sup_norm(cat::stable_unstable_split(pp).unstable) == cp);
  CHECK(sup_norm(cat::stable_unstable_split(pm).stable) == cp);
  Rng rng(27);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 v{q(uniform_int(rng, -1000, 1000), 1000), q(uniform_int(rng, -1000, 1000), 1000)};
    const auto split = cat::stable_unstable_split(v);
    CHECK(split.stable + split.unstable == v);
    CHECK(sup_norm(split.unstable) <= cp * sup_norm(v));
    CHECK(sup_norm(split.stable) <= cp * sup_norm(v));
  }
}

TEST_CASE("cat one-jump shadow") {
  const ToralSystem sys;
  Rng rng(29);
  const ToralPoint x = sys.random_point(rng);
  CHECK(sys.one_jump_shadow(x, x) == x);
  const Vec2 s = q(1, 100) * cat::stable_direction();
  const Vec2 u = q(1, 100) * cat::unstable_direction();
  CHECK(sys.one_jump_shadow(x, translate(x, s)) == translate(x, s));
  CHECK(sys.one_jump_shadow(x, translate(x, u)) == x);
  CHECK_THROWS_AS(sys.one_jump_shadow(x, translate(x, Vec2{q(1, 8), q(0, 1)})), std::domain_error);
}

TEST_CASE("cat one-jump shadow decay chains") {
  const ToralSystem sys;
  const QuadraticNumber lam = golden::lambda();
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const ToralPoint x = sys.random_point(rng);
    const ToralPoint y = sys.perturb(x, sys.one_jump_threshold(), rng);
    const ToralPoint w = sys.one_jump_shadow(x, y);
    const auto split = cat::stable_unstable_split(lift_difference(y, x));
    for (int n = 0; n <= 15; ++n) {
      const QuadraticNumber d = sys.dist(sys.iterate(w, n), sys.iterate(x, n));
      CHECK(d == sup_norm(split.stable) * pow(lam, -n));
      CHECK(d < sys.alpha());
    }
    for (int n = -15; n < 0; ++n) {
      const QuadraticNumber d = sys.dist(sys.iterate(w, n), sys.iterate(y, n));
      CHECK(d == sup_norm(split.unstable) * pow(lam, n));
      CHECK(d < sys.alpha());
    }
  }
}

TEST_CASE("toral text form round-trips and validates the range") {
  const ToralSystem sys;
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const ToralPoint p = sys.perturb(sys.random_point(rng), cat::projection_constant() / 100, rng);
    CHECK(sys.parse_point(sys.format_point(p)) == p);
  }
  CHECK(sys.format_point(ToralPoint(q(1, 2), q(1, 4))) == "x=1/2+0/1*s5, y=1/4+0/1*s5");
  CHECK_THROWS(sys.parse_point("x=1, y=0"));
  CHECK_THROWS(sys.parse_point("x=1/2"));
  CHECK_THROWS(ToralSystem(QuadraticNumber(ratio(1, 5))));
}

TEST_CASE("toral tail certification") {
  const ToralSystem sys;
  Rng rng(35);
  const ToralPoint p = sys.random_point(rng);
  const auto same = sys.tail_sup(p, p, TailSide::Right, q(1, 1000000));
  REQUIRE(same.sup);
  CHECK(*same.sup == 0);

  // purely stable difference on the right: geometric decay
  const Vec2 vs = q(1, 200) * cat::stable_direction();
  const ToralPoint ps = translate(p, vs);
  const auto right = sys.tail_sup(p, ps, TailSide::Right, q(1, 100));
  REQUIRE(right.sup);
  CHECK(*right.sup == sup_norm(vs) * golden::lambda_inv());
  for (int m = 1; m <= 20; ++m) CHECK(sys.dist(sys.iterate(p, m), sys.iterate(ps, m)) <= *right.sup);
  // the same difference grows to the left
  const auto left = sys.tail_sup(p, ps, TailSide::Left, q(1, 100));
  CHECK(!left.sup);
  REQUIRE(left.escape_time);

  // unstable difference and small bound: not certified, horizon reported
  const Vec2 vu = q(1, 10000) * cat::unstable_direction();
  const ToralPoint pu = translate(p, vu);
  const auto bad = sys.tail_sup(p, pu, TailSide::Right, q(1, 100));
  CHECK(!bad.sup);
  REQUIRE(bad.escape_time);
  const std::int64_t m = *bad.escape_time;
  CHECK(sys.dist(sys.iterate(p, m), sys.iterate(pu, m)) > q(1, 100));
  CHECK(sys.dist(sys.iterate(p, m - 1), sys.iterate(pu, m - 1)) <= q(1, 100));

  // mixed difference: lower bound from growth minus decay
  const ToralPoint pm = translate(p, vs + vu);
  const auto mixed = sys.tail_sup(p, pm, TailSide::Right, q(1, 50));
  REQUIRE(mixed.escape_time);
  CHECK(sys.dist(sys.iterate(p, *mixed.escape_time), sys.iterate(pm, *mixed.escape_time)) > q(1, 50));
}

TEST_CASE("tail certification helper on pseudo-orbits") {
  const ToralSystem sys;
  Rng rng(37);
  const ToralPoint p = sys.random_point(rng);
  using Orbit = PseudoOrbit<ToralSystem>;
  const Orbit a = Orbit::orbit(sys, p, 0);
  CHECK(certify_tail_equal_orbit(a, a, Window(-3, 3), q(1, 1000000), TailSide::Left));
  CHECK(certify_tail_equal_orbit(a, a, Window(-3, 3), q(1, 1000000), TailSide::Right));
  const Orbit b = Orbit::orbit(sys, translate(p, q(1, 200) * cat::stable_direction()), 0);
  CHECK(certify_tail_equal_orbit(a, b, Window(-3, 3), q(1, 100), TailSide::Right));
  CHECK(!certify_tail_equal_orbit(a, b, Window(-3, 3), q(1, 100), TailSide::Left));
  const Orbit c = Orbit::orbit(sys, translate(p, q(1, 10000) * cat::unstable_direction()), 0);
  CHECK(!certify_tail_equal_orbit(a, c, Window(-3, 3), q(1, 100), TailSide::Right));
}
