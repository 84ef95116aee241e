#pragma once

#include "shadowing/shift.hpp"
#include "shadowing/toral.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowing {

enum class Provenance { Formula, Exhaustion, Sweep };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Formula: return "formula";
    case Provenance::Exhaustion: return "exhaustion";
    case Provenance::Sweep: return "sweep";
  }
  return "?";
}

template <class Value>
struct Derived {
  Value value;
  Provenance provenance = Provenance::Formula;
  std::string derivation;
};

/// The constant chain used by the gluing induction:
///   alpha  expansivity constant of the system,
///   delta  jumps below it are alpha-shadowed in one step, and alpha-close
///          delta-pseudo-orbits are alpha/2- and epsilon-close,
///   N      alpha-closeness on |n| <= N forces distance < delta at the centre,
///   rho    a rho-pseudo-orbit segment of length 2N+2 stays delta-close to
///          the orbit of its first point.
template <class Distance>
struct CertifiedConstants {
  Derived<Distance> epsilon;
  Derived<Distance> alpha;
  Derived<Distance> delta;
  Derived<std::int64_t> N;
  Derived<Distance> rho;
  Distance one_jump_threshold;
  std::vector<std::string> checks;

  /// rho <= delta <= alpha/2 < alpha, all positive, N >= 0.
  void validate() const {
    const Distance zero(0);
    if (!(epsilon.value > zero && alpha.value > zero && delta.value > zero && rho.value > zero)) {
      throw std::logic_error("certified constants must be positive");
    }
    if (N.value < 0) throw std::logic_error("window radius N must be nonnegative");
    if (rho.value > delta.value) throw std::logic_error("constant chain violated: rho > delta");
    if (delta.value > alpha.value) throw std::logic_error("constant chain violated: delta > alpha");
    if (Distance(2) * delta.value > alpha.value) throw std::logic_error("constant chain violated: delta > alpha/2");
    if (delta.value > one_jump_threshold) throw std::logic_error("delta exceeds the one-jump threshold");
    for (const auto* d : {&epsilon.derivation, &alpha.derivation, &delta.derivation, &N.derivation,
                          &rho.derivation}) {
      if (d->empty()) throw std::logic_error("every constant needs a recorded derivation");
    }
  }
};

// ---- full shift -----------------------------------------------------------

/// Largest power of two <= eps. Two alpha-close delta-pseudo-orbits then
/// agree on coordinates -m..m+1 at every time (delta = 2^-m), so they stay
/// within delta/2 < eps.
Rational delta_semiexp(const ShiftSystem& sys, const Rational& eps);
/// Smallest N >= 0 with 2^-N <= eps: agreement on |k| <= N gives d <= 2^-(N+1) < eps.
std::int64_t uniform_N(const ShiftSystem& sys, const Rational& eps);
/// delta * 2^-(2N+1): errors at most double per step in the ultrametric.
Rational rho_for(const ShiftSystem& sys, const Rational& delta, std::int64_t N);

// ---- cat map --------------------------------------------------------------

/// eps (lambda - 1) / (2 C_p (lambda + 1)); bounded solution of the linear
/// difference equation driven by jump differences below 2 delta.
QuadraticNumber delta_semiexp(const ToralSystem& sys, const QuadraticNumber& eps);
/// Smallest N >= 0 with 2 C_p alpha lambda^-N < eps.
std::int64_t uniform_N(const ToralSystem& sys, const QuadraticNumber& eps);
/// delta (L - 1) / (L^(2N+2) - 1) with L = 3.
QuadraticNumber rho_for(const ToralSystem& sys, const QuadraticNumber& delta, std::int64_t N);

/// Generic Lipschitz telescoping bound delta (L - 1) / (L^(2N+2) - 1).
Rational generic_rho(const Rational& delta, int lipschitz, std::int64_t N);

/// Derives the whole chain for target distance eps. The provenance tag of
/// alpha is supplied by the caller (exhaustion for the shift, sweep for the
/// cat map); the others are formulas with their inputs recorded.
template <class System>
CertifiedConstants<typename System::Distance> derive_constants(const System& sys,
                                                               const typename System::Distance& eps,
                                                               Provenance alpha_provenance,
                                                               std::string alpha_derivation) {
  using D = typename System::Distance;
  if (!(eps > D(0))) throw std::invalid_argument("epsilon must be positive");
  CertifiedConstants<D> c;
  c.epsilon = {eps, Provenance::Formula, "target shadowing distance (input)"};
  c.alpha = {sys.alpha(), alpha_provenance, std::move(alpha_derivation)};
  c.one_jump_threshold = sys.one_jump_threshold();

  const D half_alpha = sys.alpha() / D(2);
  const D d_eps = delta_semiexp(sys, eps);
  const D d_half = delta_semiexp(sys, half_alpha);
  D delta = std::min({d_eps, d_half, c.one_jump_threshold, half_alpha});
  c.delta = {delta, Provenance::Formula,
             "min(delta_semiexp(eps)=" + System::format_distance(d_eps) +
                 ", delta_semiexp(alpha/2)=" + System::format_distance(d_half) +
                 ", one_jump_threshold=" + System::format_distance(c.one_jump_threshold) +
                 ", alpha/2=" + System::format_distance(half_alpha) + ")"};

  const std::int64_t n = uniform_N(sys, delta);
  c.N = {n, Provenance::Formula, "uniform_N(delta)"};
  c.rho = {rho_for(sys, delta, n), Provenance::Formula,
           "rho_for(delta, N) with L=" + std::to_string(sys.lipschitz())};
  c.validate();
  return c;
}

}  // namespace shadowing
