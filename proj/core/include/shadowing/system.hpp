#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace shadowing {

/// Inclusive index range [lo, hi] over which bi-infinite claims are checked
/// explicitly. Everything outside is handled by tail certificates.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  Window() = default;
  Window(std::int64_t l, std::int64_t h);

  bool contains(std::int64_t n) const { return lo <= n && n <= hi; }
  std::int64_t size() const { return hi - lo + 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

inline Window::Window(std::int64_t l, std::int64_t h) : lo(l), hi(h) {
  if (lo > hi) {
    // normalise rather than reject: callers build windows from min/max pairs
    std::swap(lo, hi);
  }
}

enum class TailSide { Left, Right };

inline const char* to_string(TailSide side) { return side == TailSide::Left ? "left" : "right"; }

/// Outcome of bounding sup_{m >= 1} d(T^{+-m} p, T^{+-m} q) for two true orbits.
template <class Distance>
struct TailBound {
  std::optional<Distance> sup;              // sound upper bound when certified
  std::optional<std::int64_t> escape_time;  // first m at which the bound is known to fail
  std::string reason;

  bool certified() const { return sup.has_value(); }
};

/// A concrete invertible map with an exact metric. Points and distances are
/// exact values; nothing in the shadowing machinery uses floating point.
template <class S>
concept DynamicalSystem = requires(const S& sys, const typename S::Point& p, std::int64_t n,
                                   std::string_view text, TailSide side, const typename S::Distance& d) {
  typename S::Point;
  typename S::Distance;
  { sys.apply(p) } -> std::same_as<typename S::Point>;
  { sys.apply_inv(p) } -> std::same_as<typename S::Point>;
  { sys.iterate(p, n) } -> std::same_as<typename S::Point>;
  { sys.dist(p, p) } -> std::same_as<typename S::Distance>;
  { sys.same(p, p) } -> std::same_as<bool>;
  { sys.alpha() } -> std::convertible_to<typename S::Distance>;
  { sys.lipschitz() } -> std::convertible_to<int>;
  { sys.diameter() } -> std::convertible_to<typename S::Distance>;
  { sys.one_jump_threshold() } -> std::convertible_to<typename S::Distance>;
  { sys.one_jump_shadow(p, p) } -> std::same_as<typename S::Point>;
  { sys.tail_sup(p, p, side, d) } -> std::same_as<TailBound<typename S::Distance>>;
  { sys.format_point(p) } -> std::same_as<std::string>;
  { sys.parse_point(text) } -> std::same_as<typename S::Point>;
  { S::format_distance(std::declval<const typename S::Distance&>()) } -> std::same_as<std::string>;
  { S::approx(std::declval<const typename S::Distance&>()) } -> std::same_as<double>;
  { sys.name() } -> std::convertible_to<std::string>;
};

}  // namespace shadowing
