#pragma once

#include "shadowing/constants.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/random.hpp"
#include "shadowing/tails.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shadowing {

template <class Distance>
struct SharpenResult {
  bool ok = false;
  std::optional<Distance> sup;  // global sup when both tails are certified
  std::optional<std::int64_t> violation;
};

/// Checks, rather than assumes, that two alpha-close pseudo-orbits are in
/// fact alpha/2-close over the whole line (window sweep plus tails).
template <DynamicalSystem S>
SharpenResult<typename S::Distance> sharpen_check(const CertifiedConstants<typename S::Distance>& c,
                                                  const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta, Window w) {
  using D = typename S::Distance;
  const D half = c.alpha.value / D(2);
  auto check = compare_pseudo_orbits(xi, eta, w, half, true);
  SharpenResult<D> out;
  out.sup = check.global_sup();
  for (std::size_t i = 0; i < check.per_index.size(); ++i) {
    if (!(check.per_index[i] < half)) {
      out.violation = check.window.lo + static_cast<std::int64_t>(i);
      return out;
    }
  }
  for (const auto* t : {&check.left, &check.right}) {
    if (!t->sup || !(*t->sup < half)) {
      out.violation = t->escape_index.value_or(t->side == TailSide::Left ? check.window.lo - 1 : check.window.hi + 1);
      return out;
    }
  }
  out.ok = true;
  return out;
}

// ---- falsification of the semi-expansivity constant ------------------------

/// Two pseudo-orbits that agree except for one excursion: eta leaves the
/// orbit of xi by a jump, rides along a nearby orbit for `length` steps and
/// jumps back.
template <DynamicalSystem S>
struct Excursion {
  PseudoOrbit<S> xi;
  PseudoOrbit<S> eta;
  std::int64_t length = 0;
};

Excursion<ShiftSystem> random_excursion(const ShiftSystem& sys, const Rational& delta, Rng& rng);
Excursion<ToralSystem> random_excursion(const ToralSystem& sys, const QuadraticNumber& delta, Rng& rng);

template <DynamicalSystem S>
struct FalsifyWitness {
  std::int64_t trial = 0;
  PseudoOrbit<S> xi;
  PseudoOrbit<S> eta;
  std::int64_t index = 0;  // a time with d >= eps
  typename S::Distance distance;
};

template <class Distance>
struct FalsifyTrial {
  std::int64_t index = 0;
  bool admissible = false;
  std::optional<Distance> sup;  // global sup of the pair, when admissible
};

template <DynamicalSystem S>
struct FalsifyReport {
  std::int64_t trials = 0;
  std::int64_t admissible = 0;  // pairs that passed the delta and alpha filters
  std::optional<FalsifyWitness<S>> witness;
  std::vector<FalsifyTrial<typename S::Distance>> log;  // filled on request
};

/// Searches excursion pairs of delta-pseudo-orbits that stay alpha-close
/// (checked exactly, tails included) for a time where they are eps apart.
/// Trial i draws from its own stream, so the reported witness is the one
/// with the smallest trial index and does not depend on scheduling.
template <DynamicalSystem S>
FalsifyReport<S> semiexp_falsify(const S& sys, const typename S::Distance& delta, const typename S::Distance& eps,
                                 std::int64_t trials, std::uint64_t seed, bool keep_log = false) {
  FalsifyReport<S> report;
  const auto alpha = sys.alpha();
  for (std::int64_t t = 0; t < trials; ++t) {
    ++report.trials;
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    const auto ex = random_excursion(sys, delta, rng);
    if (keep_log) report.log.push_back({t, false, std::nullopt});
    if (!ex.xi.is_pseudo_orbit(delta) || !ex.eta.is_pseudo_orbit(delta)) continue;
    const Window w(-2, ex.length + 1);
    const auto check = compare_pseudo_orbits(ex.xi, ex.eta, w, alpha, true);
    const auto sup = check.global_sup();
    if (!sup || *sup > alpha) continue;
    ++report.admissible;
    if (keep_log) report.log.back() = {t, true, *sup};
    if (*sup >= eps) {
      std::int64_t index = check.argmax;
      for (std::size_t i = 0; i < check.per_index.size(); ++i) {
        if (check.per_index[i] >= eps) {
          index = check.window.lo + static_cast<std::int64_t>(i);
          break;
        }
      }
      report.witness = FalsifyWitness<S>{t, ex.xi, ex.eta, index, *sup};
      return report;
    }
  }
  return report;
}

// ---- audits of the constant formulas --------------------------------------

struct AuditReport {
  std::int64_t cases = 0;
  std::int64_t exceptions = 0;
  std::string worst;  // largest measured quantity, exact text
};

/// Every pair of words of length 2N+1 on coordinates -N..N, with tails that
/// differ everywhere beyond N: coordinate-0 agreement at all |n| <= N must
/// force d <= 2^-(N+1) < eps for uniform_N(eps) = N, eps = 2^-N.
AuditReport audit_uniform_N_shift(std::int64_t N);

/// Exact reachability on difference patterns in a window of radius W: two
/// 2^-m-pseudo-orbits that stay 1/2-close never differ on |k| <= m, so
/// they are 2^-(m+1)-close. Fails (exceptions > 0) if some bi-infinite
/// pattern path has a difference inside that band.
AuditReport audit_delta_shift(std::int64_t m, std::int64_t W);

/// Random pairs of toral orbits that are alpha-close on |n| <= N, sampled
/// near the boundary of that condition; each must be eps-close at 0.
AuditReport audit_uniform_N_toral(const ToralSystem& sys, const QuadraticNumber& eps, std::int64_t samples,
                                  std::uint64_t seed);

/// Random rho-pseudo-orbit segments of length 2N+2 must stay within delta
/// of the orbit of their first entry.
template <DynamicalSystem S>
AuditReport audit_segments(const S& sys, const typename S::Distance& delta, std::int64_t N,
                           const typename S::Distance& rho, std::int64_t count, std::uint64_t seed) {
  AuditReport out;
  typename S::Distance worst(0);
  for (std::int64_t t = 0; t < count; ++t) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    const auto x0 = sys.random_point(rng);
    auto xn = x0;
    auto orbit = x0;
    for (std::int64_t n = 1; n <= 2 * N + 1; ++n) {
      xn = sys.apply(xn);
      if (uniform_int(rng, 0, 3) != 0) xn = sys.perturb(xn, rho, rng);
      orbit = sys.apply(orbit);
      const auto d = sys.dist(orbit, xn);
      if (d > worst) worst = d;
      if (!(d < delta)) ++out.exceptions;
    }
    ++out.cases;
  }
  out.worst = S::format_distance(worst);
  return out;
}

}  // namespace shadowing
