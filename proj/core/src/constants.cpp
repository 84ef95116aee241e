#include "shadowing/constants.hpp"

namespace shadowing {

namespace {

void require_positive(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
}

void require_positive(const QuadraticNumber& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
}

}  // namespace

Rational delta_semiexp(const ShiftSystem&, const Rational& eps) {
  require_positive(eps);
  return largest_power_of_two_at_most(eps);
}

std::int64_t uniform_N(const ShiftSystem&, const Rational& eps) {
  require_positive(eps);
  std::int64_t n = 0;
  while (pow2(-n) > eps) ++n;
  return n;
}

Rational rho_for(const ShiftSystem&, const Rational& delta, std::int64_t N) {
  if (delta <= 0 || N < 0) throw std::invalid_argument("rho_for needs delta > 0 and N >= 0");
  return delta * pow2(-(2 * N + 1));
}

Rational generic_rho(const Rational& delta, int lipschitz, std::int64_t N) {
  if (delta <= 0 || N < 0 || lipschitz < 2) throw std::invalid_argument("generic_rho needs delta > 0, N >= 0, L >= 2");
  Integer power = 1;
  for (std::int64_t i = 0; i < 2 * N + 2; ++i) power *= lipschitz;
  return delta * ratio(Integer(lipschitz - 1), power - 1);
}

QuadraticNumber delta_semiexp(const ToralSystem&, const QuadraticNumber& eps) {
  require_positive(eps);
  const QuadraticNumber lam = golden::lambda();
  return eps * (lam - 1) / (2 * cat::projection_constant() * (lam + 1));
}

std::int64_t uniform_N(const ToralSystem& sys, const QuadraticNumber& eps) {
  require_positive(eps);
  QuadraticNumber reach = 2 * cat::projection_constant() * sys.alpha();
  std::int64_t n = 0;
  while (reach >= eps) {
    reach *= golden::lambda_inv();
    ++n;
  }
  return n;
}

QuadraticNumber rho_for(const ToralSystem& sys, const QuadraticNumber& delta, std::int64_t N) {
  if (delta.sign() <= 0 || N < 0) throw std::invalid_argument("rho_for needs delta > 0 and N >= 0");
  return delta * QuadraticNumber(generic_rho(Rational(1), sys.lipschitz(), N));
}

}  // namespace shadowing
