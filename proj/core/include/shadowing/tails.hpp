#pragma once

#include "shadowing/pseudo_orbit.hpp"

#include <optional>
#include <string>

namespace shadowing {

/// Sound bound for the distance between two pseudo-orbits outside a window.
template <class Distance>
struct TailEvidence {
  TailSide side = TailSide::Right;
  std::optional<Distance> sup;  // bound on sup over the tail; empty if not certified
  std::optional<std::int64_t> escape_index;
  std::string reason;
};

/// Smallest window containing `w` whose outside consists of true orbits for
/// both pseudo-orbits: no jump at an index <= lo or > hi.
template <DynamicalSystem S>
Window tail_safe_window(const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta, Window w) {
  for (const auto* p : {&xi, &eta}) {
    if (auto f = p->first_jump()) w.lo = std::min(w.lo, *f - 1);
    if (auto l = p->last_jump()) w.hi = std::max(w.hi, *l);
  }
  return w;
}

/// Bounds sup of d(entry_xi(n), entry_eta(n)) over n beyond the window on
/// one side. Both pseudo-orbits must be true orbits there.
template <DynamicalSystem S>
TailEvidence<typename S::Distance> tail_evidence(const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta,
                                                 const Window& w, TailSide side,
                                                 const typename S::Distance& bound) {
  TailEvidence<typename S::Distance> out;
  out.side = side;
  const Window safe = tail_safe_window(xi, eta, w);
  if (safe != w) {
    out.reason = "a jump lies beyond the window";
    return out;
  }
  const std::int64_t edge = side == TailSide::Right ? w.hi : w.lo;
  const auto tb = xi.system().tail_sup(xi.entry_at(edge), eta.entry_at(edge), side, bound);
  out.sup = tb.sup;
  out.reason = tb.reason;
  if (tb.escape_time) out.escape_index = side == TailSide::Right ? edge + *tb.escape_time : edge - *tb.escape_time;
  return out;
}

/// True only with a sound certificate that the two pseudo-orbits stay within
/// `bound` beyond the window on the given side. Never unsoundly true.
template <DynamicalSystem S>
bool certify_tail_equal_orbit(const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta, const Window& w,
                              const typename S::Distance& bound, TailSide side) {
  const auto ev = tail_evidence(xi, eta, w, side, bound);
  return ev.sup.has_value() && *ev.sup <= bound;
}

/// Window sweep plus both tails: the full bi-infinite comparison.
template <DynamicalSystem S>
struct ShadowCheck {
  using Distance = typename S::Distance;
  Window window;
  Distance window_sup;
  std::int64_t argmax = 0;
  TailEvidence<Distance> left;
  TailEvidence<Distance> right;
  std::vector<Distance> per_index;

  /// Sound sup over all of Z, when both tails are certified.
  std::optional<Distance> global_sup() const {
    if (!left.sup || !right.sup) return std::nullopt;
    return std::max({window_sup, *left.sup, *right.sup});
  }
  bool strictly_below(const Distance& bound) const {
    const auto g = global_sup();
    return g && *g < bound;
  }
  bool at_most(const Distance& bound) const {
    const auto g = global_sup();
    return g && *g <= bound;
  }
};

template <DynamicalSystem S>
ShadowCheck<S> compare_pseudo_orbits(const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta, Window w,
                                     const typename S::Distance& bound, bool keep_table = false) {
  w = tail_safe_window(xi, eta, w);
  auto sweep = sup_distance_detail(xi, eta, w, keep_table);
  ShadowCheck<S> out{w, std::move(sweep.value), sweep.argmax, {}, {}, std::move(sweep.per_index)};
  out.left = tail_evidence(xi, eta, w, TailSide::Left, bound);
  out.right = tail_evidence(xi, eta, w, TailSide::Right, bound);
  return out;
}

}  // namespace shadowing
