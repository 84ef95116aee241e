#pragma once

#include "shadowing/random.hpp"
#include "shadowing/rational.hpp"
#include "shadowing/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shadowing {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

/// Eventually periodic bi-infinite sequence  ...LLL C RRR...
///
/// Coordinate k lives at position p = k + offset relative to the start of the
/// core. Positions [0, |C|) read the core, positions >= |C| read R
/// periodically starting with R[0], and positions < 0 read L periodically
/// ending with L.back() at position -1. The shift only changes the offset.
class ShiftPoint {
 public:
  ShiftPoint(Word left_period, Word core, Word right_period, std::int64_t offset);

  static ShiftPoint constant(Symbol s) { return {{s}, {}, {s}, 0}; }

  /// z_k = left_k for k < lo, middle[k - lo] on [lo, lo + |middle|), right_k after.
  static ShiftPoint assemble(const ShiftPoint& left, std::int64_t lo, const Word& middle,
                             const ShiftPoint& right);
  /// z_k = left_k for k < cut and right_k for k >= cut.
  static ShiftPoint glue(const ShiftPoint& left, std::int64_t cut, const ShiftPoint& right) {
    return assemble(left, cut, {}, right);
  }

  Symbol at(std::int64_t k) const;
  ShiftPoint shifted(std::int64_t n) const;
  ShiftPoint with_symbol(std::int64_t k, Symbol s) const;

  const Word& left_period() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right_period() const { return right_; }
  std::int64_t offset() const { return offset_; }

  std::int64_t core_begin() const { return -offset_; }
  std::int64_t core_end() const { return -offset_ + static_cast<std::int64_t>(core_.size()); }
  Symbol max_symbol() const;

  /// Structural equality of the normalised representation. Use
  /// ShiftSystem::same for sequence equality.
  friend bool operator==(const ShiftPoint&, const ShiftPoint&) = default;

 private:
  void normalize();

  Word left_;
  Word core_;
  Word right_;
  std::int64_t offset_ = 0;
};

/// Index of the first coordinate, walking from `from` in direction `step`
/// (+1 or -1), at which x and y differ. Runs in time proportional to core
/// lengths and periods, not to |from|.
std::optional<std::int64_t> first_difference(const ShiftPoint& x, const ShiftPoint& y, std::int64_t from,
                                             int step);

std::string format_word(const Word& w);
Word parse_word(std::string_view text);

/// Full shift on m symbols with d(x, y) = 2^-min{|n| : x_n != y_n}.
class ShiftSystem {
 public:
  using Point = ShiftPoint;
  using Distance = Rational;

  explicit ShiftSystem(int alphabet_size = 2);

  int alphabet_size() const { return m_; }
  std::string name() const { return "shift(" + std::to_string(m_) + ")"; }

  Point apply(const Point& p) const { return p.shifted(1); }
  Point apply_inv(const Point& p) const { return p.shifted(-1); }
  Point iterate(const Point& p, std::int64_t n) const { return p.shifted(n); }

  Distance dist(const Point& p, const Point& q) const;
  bool same(const Point& p, const Point& q) const;
  /// -log2 d(p, q), i.e. the smallest |k| with p_k != q_k; empty if equal.
  std::optional<std::int64_t> agreement_radius(const Point& p, const Point& q) const;

  /// d <= 1/2 at every time forces equality coordinatewise.
  Distance alpha() const { return Rational(1, 2); }
  int lipschitz() const { return 2; }
  Distance diameter() const { return Rational(1); }
  /// Jumps strictly below this are alpha-shadowed by one_jump_shadow.
  Distance one_jump_threshold() const { return Rational(1, 2); }

  /// Shadow of (..., T^-1 y, x, T x, ...): past from y, future from x.
  Point one_jump_shadow(const Point& x, const Point& y) const { return ShiftPoint::glue(y, 0, x); }

  /// Exact sup over m >= 1 of d(T^{+-m} p, T^{+-m} q). `bound` only feeds
  /// the escape time reported when the sup is not below it.
  TailBound<Distance> tail_sup(const Point& p, const Point& q, TailSide side, const Distance& bound) const;

  std::string format_point(const Point& p) const;
  Point parse_point(std::string_view text) const;
  static std::string format_distance(const Distance& d) { return to_string(d); }
  static double approx(const Distance& d) { return to_double(d); }

  Point random_point(Rng& rng) const;
  /// A point q with 0 < d(p, q) < scale, differing from p only far out.
  Point perturb(const Point& p, const Distance& scale, Rng& rng) const;

 private:
  void check_alphabet(const Point& p) const;

  int m_;
};

}  // namespace shadowing
