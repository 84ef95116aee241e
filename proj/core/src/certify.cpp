#include "shadowing/certify.hpp"

#include <algorithm>
#include <vector>

namespace shadowing {

Excursion<ShiftSystem> random_excursion(const ShiftSystem& sys, const Rational&, Rng& rng) {
  using Orbit = PseudoOrbit<ShiftSystem>;
  const ShiftPoint x = sys.random_point(rng);
  const std::int64_t length = uniform_int(rng, 1, 16);
  const std::int64_t c = uniform_int(rng, -12, 16);
  const auto step = static_cast<Symbol>(uniform_int(rng, 1, sys.alphabet_size() - 1));
  const ShiftPoint moved = x.with_symbol(c, static_cast<Symbol>((x.at(c) + step) % sys.alphabet_size()));
  Orbit eta(sys, {{sys.apply_inv(x), 1}, {moved, length}, {sys.iterate(x, length), 1}}, -1);
  return {Orbit::orbit(sys, x, 0), std::move(eta), length};
}

Excursion<ToralSystem> random_excursion(const ToralSystem& sys, const QuadraticNumber& delta, Rng& rng) {
  using Orbit = PseudoOrbit<ToralSystem>;
  constexpr std::int64_t kGrid = 1 << 12;
  const ToralPoint x = sys.random_point(rng);
  const std::int64_t length = uniform_int(rng, 1, 12);
  const QuadraticNumber sigma = delta * QuadraticNumber(ratio(2 * uniform_int(rng, -kGrid, kGrid), 3 * kGrid));
  const QuadraticNumber mu = delta * QuadraticNumber(ratio(uniform_int(rng, -kGrid, kGrid), kGrid));
  // stable part decays while riding, unstable part grows back to size |mu|
  const Vec2 v = sigma * cat::stable_direction() + (pow(golden::lambda(), -length) * mu) * cat::unstable_direction();
  Orbit eta(sys, {{sys.apply_inv(x), 1}, {translate(x, v), length}, {sys.iterate(x, length), 1}}, -1);
  return {Orbit::orbit(sys, x, 0), std::move(eta), length};
}

AuditReport audit_uniform_N_shift(std::int64_t N) {
  if (N < 0 || N > 6) throw std::invalid_argument("shift uniform_N exhaustion supports 0 <= N <= 6");
  AuditReport out;
  const ShiftSystem sys;
  const Rational eps = pow2(-N);
  if (uniform_N(sys, eps) != N) ++out.exceptions;
  const std::uint32_t bits = static_cast<std::uint32_t>(2 * N + 1);
  const std::uint32_t words = 1u << bits;
  // bit i is coordinate i - N; outside the window the tails differ everywhere
  std::int64_t worst = 0;  // smallest agreement radius seen among close pairs, as exponent
  bool any = false;
  for (std::uint32_t a = 0; a < words; ++a) {
    for (std::uint32_t b = 0; b < words; ++b) {
      const std::uint32_t diff = a ^ b;
      ++out.cases;
      bool close = true;
      for (std::int64_t n = -N; n <= N && close; ++n) close = ((diff >> (n + N)) & 1u) == 0;
      if (!close) continue;
      std::int64_t radius = N + 1;
      for (std::int64_t r = 0; r <= N; ++r) {
        if (((diff >> (N + r)) & 1u) || ((diff >> (N - r)) & 1u)) {
          radius = r;
          break;
        }
      }
      if (!(pow2(-radius) <= pow2(-(N + 1)) && pow2(-radius) < eps)) ++out.exceptions;
      if (!any || radius < worst) worst = radius;
      any = true;
    }
  }
  // Small N: the same statement through the exact point representation.
  if (N <= 2) {
    auto point = [&](std::uint32_t w, Symbol tail) {
      Word core(bits);
      for (std::uint32_t i = 0; i < bits; ++i) core[i] = static_cast<Symbol>((w >> i) & 1u);
      return ShiftPoint({tail}, core, {tail}, N);
    };
    for (std::uint32_t a = 0; a < words; ++a) {
      for (std::uint32_t b = 0; b < words; ++b) {
        const ShiftPoint x = point(a, 0), y = point(b, 1);
        bool close = true;
        for (std::int64_t n = -N; n <= N && close; ++n) close = sys.dist(sys.iterate(x, n), sys.iterate(y, n)) <= sys.alpha();
        if (close && !(sys.dist(x, y) <= pow2(-(N + 1)))) ++out.exceptions;
      }
    }
  }
  out.worst = any ? to_string(pow2(-worst)) : "none";
  return out;
}

AuditReport audit_delta_shift(std::int64_t m, std::int64_t W) {
  if (m < 1 || W < m || W > 12) throw std::invalid_argument("delta exhaustion needs 1 <= m <= W <= 12");
  const std::uint32_t bits = static_cast<std::uint32_t>(2 * W + 1);
  const std::uint32_t states = 1u << bits;
  // near band |k| <= m sits at bits W-m .. W+m
  const std::uint32_t near = ((1u << (2 * m + 1)) - 1u) << (W - m);
  const std::uint32_t zero_bit = 1u << W;
  auto key = [&](std::uint32_t p) { return p & near; };
  auto key_next = [&](std::uint32_t p) { return (p >> 1) & near; };

  std::vector<char> alive(states, 0);
  for (std::uint32_t p = 0; p < states; ++p) alive[p] = (p & zero_bit) == 0;
  std::vector<char> has_key(states, 0), has_next(states, 0);
  for (bool changed = true; changed;) {
    changed = false;
    std::fill(has_key.begin(), has_key.end(), 0);
    std::fill(has_next.begin(), has_next.end(), 0);
    for (std::uint32_t p = 0; p < states; ++p) {
      if (!alive[p]) continue;
      has_key[key(p)] = 1;
      has_next[key_next(p)] = 1;
    }
    for (std::uint32_t p = 0; p < states; ++p) {
      if (alive[p] && (!has_key[key_next(p)] || !has_next[key(p)])) {
        alive[p] = 0;
        changed = true;
      }
    }
  }
  AuditReport out;
  std::int64_t radius = W + 1;
  for (std::uint32_t p = 0; p < states; ++p) {
    if (!alive[p]) continue;
    ++out.cases;
    if (p & near) ++out.exceptions;
    for (std::int64_t r = 0; r <= W; ++r) {
      if (((p >> (W + r)) & 1u) || ((p >> (W - r)) & 1u)) {
        radius = std::min(radius, r);
        break;
      }
    }
  }
  out.worst = to_string(pow2(-radius));
  return out;
}

AuditReport audit_uniform_N_toral(const ToralSystem& sys, const QuadraticNumber& eps, std::int64_t samples,
                                  std::uint64_t seed) {
  AuditReport out;
  const std::int64_t N = uniform_N(sys, eps);
  const QuadraticNumber reach = sys.alpha() * pow(golden::lambda(), -N);
  constexpr std::int64_t kGrid = 1 << 12;
  QuadraticNumber worst(0);
  for (std::int64_t t = 0; t < samples; ++t) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    const ToralPoint x = sys.random_point(rng);
    const QuadraticNumber sigma = reach * QuadraticNumber(ratio(3 * uniform_int(rng, -kGrid, kGrid), 2 * kGrid)) /
                                  golden::phi();
    const QuadraticNumber mu = reach * QuadraticNumber(ratio(3 * uniform_int(rng, -kGrid, kGrid), 2 * kGrid));
    const ToralPoint y = translate(x, sigma * cat::stable_direction() + mu * cat::unstable_direction());
    bool close = true;
    for (std::int64_t n = -N; n <= N && close; ++n) close = sys.dist(sys.iterate(x, n), sys.iterate(y, n)) <= sys.alpha();
    if (!close) continue;
    ++out.cases;
    const QuadraticNumber d = sys.dist(x, y);
    if (d > worst) worst = d;
    if (!(d < eps)) ++out.exceptions;
  }
  out.worst = to_string(worst);
  return out;
}

}  // namespace shadowing
