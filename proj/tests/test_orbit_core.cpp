#include "doctest.h"

#include "shadowing/generate.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/shift.hpp"
#include "shadowing/toral.hpp"

#include <map>

using namespace shadowing;

namespace {

using ShiftOrbit = PseudoOrbit<ShiftSystem>;
using ToralOrbit = PseudoOrbit<ToralSystem>;

// Entries by explicit stepping from the nearest block start, one index at a time.
template <class S>
typename S::Point stepped_entry(const PseudoOrbit<S>& xi, std::int64_t n) {
  const S& sys = xi.system();
  std::size_t i = 0;
  for (std::size_t b = 0; b < xi.blocks().size(); ++b) {
    if (b == 0 || xi.block_start(b) <= n) i = b;
  }
  auto p = xi.blocks()[i].seed;
  std::int64_t at = xi.block_start(i);
  while (at < n) { p = sys.apply(p); ++at; }
  while (at > n) { p = sys.apply_inv(p); --at; }
  return p;
}

ShiftOrbit three_jumps() {
  const ShiftSystem sys;
  const ShiftPoint a = ShiftPoint::constant(0);
  const ShiftPoint b = ShiftPoint::constant(1);
  return ShiftOrbit(sys, {{a, 3}, {b, 2}, {a, 4}, {b, 1}}, -2);
}

}  // namespace

TEST_CASE("block layout and entries") {
  const ShiftOrbit xi = three_jumps();
  CHECK(xi.base_index() == -2);
  CHECK(xi.block_start(1) == 1);
  CHECK(xi.block_start(2) == 3);
  CHECK(xi.block_start(3) == 7);
  CHECK(xi.jump_count() == 3);
  const std::vector<std::int64_t> expected_jumps{1, 3, 7};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(xi.jump_positions()[i].index == expected_jumps[i]);
    CHECK(xi.jump_positions()[i].size == 1);
  }
  CHECK(*xi.first_jump() == 1);
  CHECK(*xi.last_jump() == 7);
  CHECK(*xi.max_jump() == 1);
  CHECK(xi.entry_at(-1000) == ShiftPoint::constant(0));
  CHECK(xi.entry_at(2) == ShiftPoint::constant(1));
  CHECK(xi.entry_at(6) == ShiftPoint::constant(0));
  CHECK(xi.entry_at(1000) == ShiftPoint::constant(1));
  CHECK(!xi.is_pseudo_orbit(Rational(1)));
  CHECK(xi.is_pseudo_orbit(Rational(2)));
}

TEST_CASE("boundaries without a jump are merged") {
  const ShiftSystem sys;
  Rng rng(1);
  const ShiftPoint p = sys.random_point(rng);
  const ShiftOrbit xi(sys, {{p, 4}, {sys.iterate(p, 4), 2}, {sys.iterate(p, 6), 1}}, 0);
  CHECK(xi.is_orbit());
  CHECK(xi.blocks().size() == 1);
  CHECK(!xi.first_jump());
  CHECK(!xi.max_jump());
  CHECK(xi.is_pseudo_orbit(Rational(0)));
  CHECK_THROWS_AS(ShiftOrbit(sys, {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(ShiftOrbit(sys, {{p, 0}}, 0), std::invalid_argument);
}

TEST_CASE("entry_at matches stepping, near and far from block starts") {
  const ToralSystem tsys;
  const ShiftSystem ssys(3);
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto xs = generate_pseudo_orbit(ssys, t % 5, Rational(1, 16), GapRange{1, 6}, rng);
    const auto xt = generate_pseudo_orbit(tsys, t % 4, cat::projection_constant() / 1000, GapRange{1, 6}, rng);
    for (std::int64_t n = -40; n <= 40; ++n) {
      CHECK(xs.entry_at(n) == stepped_entry(xs, n));
      CHECK(xt.entry_at(n) == stepped_entry(xt, n));
    }
    for (std::int64_t n : {-250, 250}) {
      CHECK(xs.entry_at(n) == stepped_entry(xs, n));
      CHECK(xt.entry_at(n) == stepped_entry(xt, n));
    }
    const Window w(-30, 30);
    const auto es = xs.entries(w);
    const auto et = xt.entries(w);
    for (std::int64_t n = w.lo; n <= w.hi; ++n) {
      CHECK(es[n - w.lo] == xs.entry_at(n));
      CHECK(et[n - w.lo] == xt.entry_at(n));
    }
  }
}

TEST_CASE("jump positions are exactly where the orbit rule fails") {
  const ShiftSystem sys;
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t k = t % 7;
    const auto xi = generate_pseudo_orbit(sys, k, pow2(-4), GapRange{1, 5}, rng);
    REQUIRE(xi.jump_count() == static_cast<std::size_t>(k));
    std::map<std::int64_t, Rational> found;
    for (std::int64_t n = -60; n <= 60; ++n) {
      const auto arrival = sys.apply(xi.entry_at(n - 1));
      if (!sys.same(arrival, xi.entry_at(n))) found[n] = sys.dist(arrival, xi.entry_at(n));
    }
    REQUIRE(found.size() == xi.jump_count());
    std::size_t i = 0;
    for (const auto& [n, d] : found) {
      CHECK(xi.jump_positions()[i].index == n);
      CHECK(xi.jump_positions()[i].size == d);
      CHECK(d < pow2(-4));
      ++i;
    }
  }
}

TEST_CASE("splice takes each side of the cut") {
  const ShiftSystem sys;
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto a = generate_pseudo_orbit(sys, t % 4, pow2(-3), GapRange{1, 5}, rng);
    const auto b = generate_pseudo_orbit(sys, (t + 1) % 4, pow2(-3), GapRange{1, 5}, rng);
    const std::int64_t cut = uniform_int(rng, -12, 12);
    const auto c = splice(a, b, cut);
    for (std::int64_t n = -40; n <= 40; ++n) CHECK(c.entry_at(n) == (n < cut ? a.entry_at(n) : b.entry_at(n)));
    // splicing a sequence with itself is the identity
    const auto same = splice(a, a, cut);
    for (std::int64_t n = -40; n <= 40; ++n) CHECK(same.entry_at(n) == a.entry_at(n));
    CHECK(same.jump_count() == a.jump_count());
  }
}

TEST_CASE("replacing a segment with an orbit piece") {
  const ShiftSystem sys;
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto xi = generate_pseudo_orbit(sys, 1 + t % 5, pow2(-3), GapRange{1, 4}, rng);
    const std::int64_t a = uniform_int(rng, -8, 8);
    const std::int64_t len = uniform_int(rng, 1, 10);
    const auto r = replace_segment_with_orbit(xi, a, len);
    for (std::int64_t n = -40; n <= 40; ++n) {
      if (n >= a && n < a + len) CHECK(r.entry_at(n) == sys.iterate(xi.entry_at(a), n - a));
      else CHECK(r.entry_at(n) == xi.entry_at(n));
    }
    // no jumps remain strictly inside the replaced segment
    for (const auto& j : r.jump_positions()) CHECK(!(j.index > a && j.index < a + len));
  }
  CHECK_THROWS(replace_segment_with_orbit(three_jumps(), 0, 0));
}

TEST_CASE("sup distance agrees with a direct loop") {
  const ToralSystem sys;
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto a = generate_pseudo_orbit(sys, t % 4, cat::projection_constant() / 200, GapRange{1, 4}, rng);
    const auto b = generate_pseudo_orbit(sys, (t + 2) % 4, cat::projection_constant() / 200, GapRange{1, 4}, rng);
    const Window w(uniform_int(rng, -10, 0), uniform_int(rng, 0, 10));
    const auto res = sup_distance_detail(a, b, w, true);
    QuadraticNumber best(0);
    std::int64_t where = w.lo;
    bool first = true;
    for (std::int64_t n = w.lo; n <= w.hi; ++n) {
      const QuadraticNumber d = sys.dist(a.entry_at(n), b.entry_at(n));
      CHECK(res.per_index[n - w.lo] == d);
      if (first || d > best) { best = d; where = n; first = false; }
    }
    CHECK(res.value == best);
    CHECK(res.argmax == where);
    CHECK(sup_distance(a, b, w) == best);
    CHECK(sup_distance(a, a, w) == 0);
  }
}

TEST_CASE("reindexing commutes with entries and is invertible") {
  const ShiftSystem sys;
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto xi = generate_pseudo_orbit(sys, t % 6, pow2(-3), GapRange{1, 5}, rng);
    const std::int64_t k = uniform_int(rng, -20, 20);
    const auto moved = xi.shift_index(k);
    for (std::int64_t n = -30; n <= 30; ++n) CHECK(moved.entry_at(n + k) == xi.entry_at(n));
    REQUIRE(moved.jump_count() == xi.jump_count());
    for (std::size_t i = 0; i < xi.jump_count(); ++i) {
      CHECK(moved.jump_positions()[i].index == xi.jump_positions()[i].index + k);
      CHECK(moved.jump_positions()[i].size == xi.jump_positions()[i].size);
    }
    const auto back = moved.shift_index(-k);
    CHECK(to_text(back) == to_text(xi));
  }
}

TEST_CASE("text form round-trips for both systems") {
  const ShiftSystem ssys;
  const ToralSystem tsys;
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto xs = generate_pseudo_orbit(ssys, t % 5, pow2(-4), GapRange{1, 8}, rng);
    const auto xt = generate_pseudo_orbit(tsys, t % 4, cat::projection_constant() / 500, GapRange{1, 8}, rng);
    const auto rs = from_text(to_text(xs), ssys);
    const auto rt = from_text(to_text(xt), tsys);
    CHECK(to_text(rs) == to_text(xs));
    CHECK(to_text(rt) == to_text(xt));
    for (std::int64_t n = -20; n <= 20; ++n) {
      CHECK(rs.entry_at(n) == xs.entry_at(n));
      CHECK(rt.entry_at(n) == xt.entry_at(n));
    }
  }
  CHECK(to_text(three_jumps()) ==
        "base -2\nL:0 C: R:0 O:0 3\nL:1 C: R:1 O:0 2\nL:0 C: R:0 O:0 4\nL:1 C: R:1 O:0 1\n");
  CHECK_THROWS(from_text("L:0 C: R:0 O:0 3\n", ssys));
  CHECK_THROWS(from_text("", ssys));
  CHECK_THROWS(from_text("base 0\nL:0C:R:0\n", ssys));
}

TEST_CASE("generator is deterministic and honours the requested shape") {
  const ShiftSystem sys;
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    Rng r1(seed), r2(seed);
    for (int k = 0; k <= 8; ++k) {
      const auto a = generate_pseudo_orbit(sys, k, pow2(-5), GapRange{2, 3}, r1);
      const auto b = generate_pseudo_orbit(sys, k, pow2(-5), GapRange{2, 3}, r2);
      CHECK(to_text(a) == to_text(b));
      CHECK(a.jump_count() == static_cast<std::size_t>(k));
      CHECK(a.is_pseudo_orbit(pow2(-5)));
      for (std::size_t i = 1; i < a.jump_count(); ++i) {
        const auto gap = a.jump_positions()[i].index - a.jump_positions()[i - 1].index;
        CHECK(gap >= 2);
        CHECK(gap <= 3);
      }
    }
  }
  Rng rng(1);
  CHECK_THROWS(generate_pseudo_orbit(sys, -1, pow2(-5), GapRange{}, rng));
  CHECK_THROWS(generate_pseudo_orbit(sys, 2, pow2(-5), GapRange{3, 2}, rng));
}
