#pragma once

#include "shadowing/constants.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/tails.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowing {

/// One of the four facts the gluing induction relies on failed when
/// re-checked on concrete values. Signals wrong constants, never bad input.
class ConstantsViolation : public std::runtime_error {
 public:
  ConstantsViolation(std::string condition, std::int64_t index, const std::string& what)
      : std::runtime_error("condition " + condition + " failed at index " + std::to_string(index) + ": " + what),
        condition_(std::move(condition)),
        index_(index) {}
  const std::string& condition() const { return condition_; }
  std::int64_t index() const { return index_; }

 private:
  std::string condition_;
  std::int64_t index_;
};

/// Input is not a pseudo-orbit at the scale the constants were built for.
class JumpSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Condition labels used in traces.
inline constexpr const char* kOneJump = "one-jump";              // one-jump delta-pseudo-orbits are alpha-shadowed
inline constexpr const char* kSharpen = "sharpen";               // alpha-close delta-pseudo-orbits are alpha/2-close
inline constexpr const char* kUniformWindow = "uniform-window";  // alpha-close on [0,2N] gives delta-close at N
inline constexpr const char* kSegment = "segment";               // rho-segments stay delta-close to their first orbit

/// One level of the induction, with every intermediate pseudo-orbit kept.
template <DynamicalSystem S>
struct GlueStep {
  using Distance = typename S::Distance;

  int depth = 0;
  std::size_t target_jumps = 0;
  std::int64_t reindex_shift = 0;  // target was shifted right by this much
  std::vector<std::string> conditions;

  // Base case (one jump): only `shadow_sup` is meaningful.
  bool base_case = false;
  Distance shadow_sup{};

  // Gluing step.
  std::size_t sub_target_jumps = 0;
  Distance segment_deviation{};  // max_{0..2N+1} d(T^n x_0, x_n) < delta
  Distance eta_sup{};            // y vs eta, < alpha/2
  Distance zeta_sup{};           // z vs zeta, < alpha/2
  Distance overlap_gap{};        // max_{0..2N} d(T^n y, T^n z) < alpha
  Distance centre_gap{};         // d(T^N y, T^N z) < delta
  Distance tau_sup{};            // w vs tau, < alpha/2
  Distance final_sup{};          // w vs target, < alpha
  std::optional<PseudoOrbit<S>> xi_prime, eta, zeta, tau;
};

template <DynamicalSystem S>
struct ShadowCertificate {
  using Point = typename S::Point;
  using Distance = typename S::Distance;

  std::string method;  // "inductive" or "direct"
  Point shadow_point;  // shadows target at index 0
  PseudoOrbit<S> target;
  Distance epsilon_claimed;
  Window window;
  Distance window_sup_error;
  std::int64_t window_argmax = 0;
  Distance error_at_zero;
  TailEvidence<Distance> left_tail;
  TailEvidence<Distance> right_tail;
  std::vector<GlueStep<S>> trace;
  std::int64_t reindex_shift = 0;
  std::vector<Distance> error_table;  // per index of `window`, optional
};

struct ShadowOptions {
  std::int64_t margin = 0;  // extra window width on each side
  bool keep_error_table = false;
  bool keep_intermediates = true;
};

/// [first jump - (2N+2+margin), last jump + (2N+2+margin)], always containing 0.
template <DynamicalSystem S>
Window default_window(const PseudoOrbit<S>& xi, std::int64_t N, std::int64_t margin) {
  const std::int64_t pad = 2 * N + 2 + margin;
  const std::int64_t first = xi.first_jump().value_or(0);
  const std::int64_t last = xi.last_jump().value_or(0);
  return Window(std::min<std::int64_t>(first - pad, 0), std::max<std::int64_t>(last + pad, 0));
}

template <DynamicalSystem S>
ShadowCertificate<S> make_certificate(std::string method, const typename S::Point& w, const PseudoOrbit<S>& target,
                                      const typename S::Distance& eps, Window window, bool keep_table) {
  const S& sys = target.system();
  const auto orbit = PseudoOrbit<S>::orbit(sys, w, 0);
  auto check = compare_pseudo_orbits(orbit, target, window, eps, keep_table);
  ShadowCertificate<S> cert{std::move(method),
                            w,
                            target,
                            eps,
                            check.window,
                            check.window_sup,
                            check.argmax,
                            sys.dist(w, target.entry_at(0)),
                            std::move(check.left),
                            std::move(check.right),
                            {},
                            0,
                            std::move(check.per_index)};
  return cert;
}

struct VerifyResult {
  bool ok = false;
  std::optional<std::int64_t> first_violation;
  std::string message;
};

/// Recomputes everything from the shadow point and the target: the window
/// sweep, the recorded sup, and both tail bounds.
template <DynamicalSystem S>
VerifyResult verify_certificate(const ShadowCertificate<S>& cert) {
  using D = typename S::Distance;
  VerifyResult out;
  const auto& target = cert.target;
  const S& sys = target.system();
  const Window safe = tail_safe_window(target, target, cert.window);
  if (safe != cert.window) {
    out.message = "window does not contain every jump";
    return out;
  }
  const auto orbit = PseudoOrbit<S>::orbit(sys, cert.shadow_point, 0);
  const auto a = orbit.entries(cert.window);
  const auto b = target.entries(cert.window);
  D sup = sys.dist(a[0], b[0]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    D d = sys.dist(a[i], b[i]);
    if (!(d < cert.epsilon_claimed) && !out.first_violation) {
      out.first_violation = cert.window.lo + static_cast<std::int64_t>(i);
    }
    if (d > sup) sup = std::move(d);
  }
  if (out.first_violation) {
    out.message = "distance reaches epsilon inside the window";
    return out;
  }
  if (sup != cert.window_sup_error) {
    out.message = "recorded window error does not match recomputation";
    return out;
  }
  for (TailSide side : {TailSide::Left, TailSide::Right}) {
    const auto ev = tail_evidence(orbit, target, cert.window, side, cert.epsilon_claimed);
    if (!ev.sup || !(*ev.sup < cert.epsilon_claimed)) {
      out.first_violation = ev.escape_index;
      out.message = std::string(to_string(side)) + " tail not certified below epsilon: " + ev.reason;
      return out;
    }
  }
  out.ok = true;
  out.message = "verified";
  return out;
}

namespace detail {

template <DynamicalSystem S>
struct InductionContext {
  const S& sys;
  const CertifiedConstants<typename S::Distance>& c;
  const ShadowOptions& opt;
  std::vector<GlueStep<S>>& trace;
};

template <DynamicalSystem S>
ShadowCheck<S> check_against(const InductionContext<S>& ctx, const typename S::Point& w,
                             const PseudoOrbit<S>& target, const typename S::Distance& bound) {
  const auto orbit = PseudoOrbit<S>::orbit(ctx.sys, w, 0);
  return compare_pseudo_orbits(orbit, target, default_window(target, ctx.c.N.value, ctx.opt.margin), bound);
}

template <DynamicalSystem S>
[[noreturn]] void fail(const char* condition, const ShadowCheck<S>& check, const std::string& what) {
  std::int64_t index = check.argmax;
  if (check.window_sup < check.left.sup.value_or(check.window_sup)) index = check.left.escape_index.value_or(check.window.lo - 1);
  if (check.window_sup < check.right.sup.value_or(check.window_sup)) index = check.right.escape_index.value_or(check.window.hi + 1);
  throw ConstantsViolation(condition, index, what);
}

/// Shadow for a pseudo-orbit with at most one jump, checked against alpha
/// and then against alpha/2.
template <DynamicalSystem S>
typename S::Point one_jump_point(const InductionContext<S>& ctx, const PseudoOrbit<S>& target,
                                 typename S::Distance* measured) {
  using D = typename S::Distance;
  if (target.jump_count() > 1) throw std::logic_error("one_jump_point called with several jumps");
  if (target.jump_count() == 0) {
    if (measured) *measured = D(0);
    return target.entry_at(0);
  }
  const std::int64_t j = *target.first_jump();
  const auto x = target.entry_at(j);
  const auto y = ctx.sys.apply(target.entry_at(j - 1));
  if (!(ctx.sys.dist(x, y) < ctx.c.delta.value)) {
    throw ConstantsViolation(kOneJump, j, "one-jump shadow requested for a jump that is not below delta");
  }
  const auto w = ctx.sys.iterate(ctx.sys.one_jump_shadow(x, y), -j);
  const auto check = check_against(ctx, w, target, ctx.c.alpha.value);
  if (!check.strictly_below(ctx.c.alpha.value)) fail(kOneJump, check, "one-jump shadow is not alpha-close");
  const D half = ctx.c.alpha.value / D(2);
  if (!check.strictly_below(half)) fail(kSharpen, check, "one-jump shadow is not alpha/2-close");
  if (measured) *measured = *check.global_sup();
  return w;
}

template <DynamicalSystem S>
typename S::Point shadow_recursive(const InductionContext<S>& ctx, const PseudoOrbit<S>& xi, int depth) {
  using D = typename S::Distance;
  using Orbit = PseudoOrbit<S>;
  const S& sys = ctx.sys;
  const std::size_t k = xi.jump_count();
  if (k == 0) return xi.entry_at(0);
  if (k == 1) {
    GlueStep<S> step;
    step.depth = depth;
    step.target_jumps = 1;
    step.base_case = true;
    step.conditions = {kOneJump, kSharpen};
    const auto w = one_jump_point(ctx, xi, &step.shadow_sup);
    ctx.trace.push_back(std::move(step));
    return w;
  }

  const std::int64_t N = ctx.c.N.value;
  const D& alpha = ctx.c.alpha.value;
  const D& delta = ctx.c.delta.value;
  const D half = alpha / D(2);

  // Move the last jump to the step from index 2N to 2N+1.
  const std::int64_t shift = 2 * N + 1 - *xi.last_jump();
  const Orbit target = xi.shift_index(shift);
  const auto x0 = target.entry_at(0);
  const auto x0_orbit = Orbit::orbit(sys, x0, 0);

  GlueStep<S> step;
  step.depth = depth;
  step.target_jumps = k;
  step.reindex_shift = shift;
  step.conditions = {kSegment, kOneJump, kSharpen, kUniformWindow};

  // Segment check: the first 2N+2 entries follow the orbit of x_0 to within delta.
  {
    const auto seg = sup_distance_detail(x0_orbit, target, Window(0, 2 * N + 1));
    if (!(seg.value < delta)) throw ConstantsViolation(kSegment, seg.argmax - shift, "segment drifted beyond delta");
    step.segment_deviation = seg.value;
  }

  const Orbit xi_prime = replace_segment_with_orbit(target, 0, 2 * N + 1);
  const Orbit eta = splice(target, x0_orbit, 0);
  const Orbit zeta = splice(x0_orbit, target, 2 * N + 1);
  if (eta.jump_count() >= k) throw std::logic_error("induction did not reduce the number of jumps");
  step.sub_target_jumps = eta.jump_count();

  const auto y = shadow_recursive(ctx, eta, depth + 1);
  {
    const auto check = check_against(ctx, y, eta, half);
    if (!check.strictly_below(half)) fail(kSharpen, check, "y is not alpha/2-close to eta");
    step.eta_sup = *check.global_sup();
  }
  const auto z = one_jump_point(ctx, zeta, &step.zeta_sup);

  // Uniform window: alpha-close on [0, 2N] must give delta-close at N.
  {
    const auto oy = Orbit::orbit(sys, y, 0);
    const auto oz = Orbit::orbit(sys, z, 0);
    const auto overlap = sup_distance_detail(oy, oz, Window(0, 2 * N));
    if (!(overlap.value < alpha)) {
      throw ConstantsViolation(kUniformWindow, overlap.argmax - shift, "orbits of y and z separate on [0, 2N]");
    }
    step.overlap_gap = overlap.value;
    step.centre_gap = sys.dist(sys.iterate(y, N), sys.iterate(z, N));
    if (!(step.centre_gap < delta)) {
      throw ConstantsViolation(kUniformWindow, N - shift, "orbits of y and z are not delta-close at N");
    }
  }

  const Orbit tau = splice(Orbit::orbit(sys, y, 0), Orbit::orbit(sys, z, 0), N);
  const auto w = one_jump_point(ctx, tau, &step.tau_sup);
  {
    const auto check = check_against(ctx, w, target, alpha);
    if (!check.strictly_below(alpha)) fail(kSharpen, check, "glued shadow is not alpha-close to the target");
    step.final_sup = *check.global_sup();
  }
  if (ctx.opt.keep_intermediates) {
    step.xi_prime = xi_prime;
    step.eta = eta;
    step.zeta = zeta;
    step.tau = tau;
  }
  ctx.trace.push_back(std::move(step));
  // w shadows target(n) = xi(n - shift), so T^shift w shadows xi at index 0.
  return sys.iterate(w, shift);
}

}  // namespace detail

/// Gluing induction on the number of jumps. Every fact it relies on is
/// re-checked on the concrete values; a failed check raises
/// ConstantsViolation. The resulting point eps-shadows xi.
template <DynamicalSystem S>
ShadowCertificate<S> inductive_shadow(const CertifiedConstants<typename S::Distance>& c, const PseudoOrbit<S>& xi,
                                      const ShadowOptions& opt = {}) {
  if (!xi.is_pseudo_orbit(c.rho.value)) {
    throw JumpSizeError("pseudo-orbit has a jump of size " + S::format_distance(*xi.max_jump()) +
                        ", not below rho = " + S::format_distance(c.rho.value));
  }
  std::vector<GlueStep<S>> trace;
  const detail::InductionContext<S> ctx{xi.system(), c, opt, trace};
  const auto w = detail::shadow_recursive(ctx, xi, 0);
  auto cert = make_certificate<S>("inductive", w, xi, c.epsilon.value, default_window(xi, c.N.value, opt.margin),
                                  opt.keep_error_table);
  cert.trace = std::move(trace);
  if (!cert.trace.empty()) cert.reindex_shift = cert.trace.back().reindex_shift;
  const auto verdict = verify_certificate(cert);
  if (!verdict.ok) {
    throw ConstantsViolation(kSharpen, verdict.first_violation.value_or(0),
                             "shadow is alpha-close but not eps-close: " + verdict.message);
  }
  return cert;
}

}  // namespace shadowing
