#include "shadowing/direct.hpp"

namespace shadowing {

ShadowCertificate<ShiftSystem> direct_shadow(const PseudoOrbit<ShiftSystem>& xi, const Rational& eps_claimed,
                                             Window window, bool keep_table) {
  ShiftPoint w = xi.entry_at(0);
  if (!xi.is_orbit()) {
    const std::int64_t first = *xi.first_jump();
    const std::int64_t last = *xi.last_jump();
    // Coordinates before `first` come from the first block, from `last` on
    // from the last one; in between each coordinate is read off its entry.
    const ShiftPoint left = xi.entry_at(first - 1).shifted(-(first - 1));
    const ShiftPoint right = xi.entry_at(last).shifted(-last);
    Word middle;
    middle.reserve(static_cast<std::size_t>(last - first));
    const auto mids = xi.entries(Window(first, last));
    for (std::size_t i = 0; i + 1 < mids.size(); ++i) middle.push_back(mids[i].at(0));
    w = ShiftPoint::assemble(left, first, middle, right);
  }
  return make_certificate<ShiftSystem>("direct", w, xi, eps_claimed, window, keep_table);
}

namespace {

QuadraticNumber power_of_lambda(std::int64_t n) { return pow(golden::lambda(), n); }

}  // namespace

Vec2 toral_correction(const PseudoOrbit<ToralSystem>& xi) {
  const ToralSystem& sys = xi.system();
  const QuadraticNumber cap = ToralSystem::linear_regime_radius();
  Vec2 d0{QuadraticNumber(0), QuadraticNumber(0)};
  for (const auto& jump : xi.jump_positions()) {
    const std::int64_t j = jump.index;
    const Vec2 e = lift_difference(xi.entry_at(j), sys.apply(xi.entry_at(j - 1)));
    if (sup_norm(e) > cap) throw RegimeError("jump at index " + std::to_string(j) + " leaves the linear regime");
    const cat::Split split = cat::stable_unstable_split(e);
    if (j >= 1) {
      d0 = d0 + power_of_lambda(-j) * split.unstable;
    } else {
      d0 = d0 - power_of_lambda(j) * split.stable;
    }
  }
  return d0;
}

ShadowCertificate<ToralSystem> direct_shadow(const PseudoOrbit<ToralSystem>& xi, const QuadraticNumber& eps_claimed,
                                             Window window, bool keep_table) {
  const ToralSystem& sys = xi.system();
  const QuadraticNumber cap = ToralSystem::linear_regime_radius();
  Vec2 d = toral_correction(xi);
  if (!xi.is_orbit()) {
    // d_n = A d_{n-1} - e_n across the jump range; beyond it |d_n| only decays.
    const std::int64_t first = std::min<std::int64_t>(*xi.first_jump() - 1, 0);
    const std::int64_t last = std::max<std::int64_t>(*xi.last_jump(), 0);
    const auto xs = xi.entries(Window(first - 1, last));
    auto jump_at = [&](std::int64_t n) {
      const auto i = static_cast<std::size_t>(n - (first - 1));
      const ToralPoint image = sys.apply(xs[i - 1]);
      if (image == xs[i]) return Vec2{QuadraticNumber(0), QuadraticNumber(0)};
      return lift_difference(xs[i], image);
    };
    auto check = [&](const Vec2& v, std::int64_t n) {
      if (sup_norm(v) > cap) throw RegimeError("correction leaves the linear regime at index " + std::to_string(n));
    };
    Vec2 dn = d;
    for (std::int64_t n = 0; n > first; --n) {
      dn = cat::apply_inv(dn + jump_at(n));
      check(dn, n - 1);
    }
    dn = d;
    for (std::int64_t n = 1; n <= last; ++n) {
      dn = cat::apply(dn) - jump_at(n);
      check(dn, n);
    }
  }
  if (sup_norm(d) > cap) throw RegimeError("correction at index 0 leaves the linear regime");
  const ToralPoint w = translate(xi.entry_at(0), d);
  return make_certificate<ToralSystem>("direct", w, xi, eps_claimed, window, keep_table);
}

}  // namespace shadowing
