#pragma once

#include "shadowing/shadow.hpp"
#include "shadowing/shift.hpp"
#include "shadowing/toral.hpp"

#include <stdexcept>

namespace shadowing {

/// The jump corrections left the linear regime of the torus.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Diagonal sequence w_k = (entry k)_0. With all jumps below 2^-m the error
/// is at most 2^-(m+1) at every index.
ShadowCertificate<ShiftSystem> direct_shadow(const PseudoOrbit<ShiftSystem>& xi, const Rational& eps_claimed,
                                             Window window, bool keep_table = false);

/// Bounded solution of d_n = A d_{n-1} - e_n, where e_n is the lifted jump
/// at index n: the unstable part of d_0 sums the future jumps pulled back,
/// the stable part sums the past jumps pushed forward. w = entry(0) + d_0.
/// Throws RegimeError if some |e_n| or |d_n| exceeds 1/6.
ShadowCertificate<ToralSystem> direct_shadow(const PseudoOrbit<ToralSystem>& xi, const QuadraticNumber& eps_claimed,
                                             Window window, bool keep_table = false);

/// Correction d_0 alone, exposed for tests.
Vec2 toral_correction(const PseudoOrbit<ToralSystem>& xi);

}  // namespace shadowing

namespace shadowing {

template <DynamicalSystem S>
struct CrossValidation {
  using Distance = typename S::Distance;
  ShadowCertificate<S> inductive;
  ShadowCertificate<S> direct;
  bool inductive_verified = false;
  bool direct_verified = false;
  Distance gap;           // d(w_ind, w_dir)
  Distance triangle;      // err_ind(0) + err_dir(0)
  bool triangle_ok = false;

  bool ok() const { return inductive_verified && direct_verified && triangle_ok; }
};

/// Runs both constructions on xi and checks them against each other.
template <DynamicalSystem S>
CrossValidation<S> cross_validate(const CertifiedConstants<typename S::Distance>& c, const PseudoOrbit<S>& xi,
                                  const ShadowOptions& opt = {}) {
  auto ind = inductive_shadow(c, xi, opt);
  auto dir = direct_shadow(xi, c.epsilon.value, ind.window, opt.keep_error_table);
  const S& sys = xi.system();
  auto gap = sys.dist(ind.shadow_point, dir.shadow_point);
  auto tri = ind.error_at_zero + dir.error_at_zero;
  const bool iv = verify_certificate(ind).ok;
  const bool dv = verify_certificate(dir).ok;
  const bool tok = gap <= tri;
  return CrossValidation<S>{std::move(ind), std::move(dir), iv, dv, std::move(gap), std::move(tri), tok};
}

}  // namespace shadowing
