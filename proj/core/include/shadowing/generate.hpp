#pragma once

#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/random.hpp"

#include <cstdint>
#include <stdexcept>

namespace shadowing {

struct GapRange {
  std::int64_t min = 1;
  std::int64_t max = 8;
};

/// Pseudo-orbit with exactly k jumps, each of size in (0, scale). The first
/// jump lands at a random index near 0 and later ones follow after gaps
/// drawn from `gaps`. Everything is driven by rng, so a fixed seed gives a
/// fixed pseudo-orbit.
template <DynamicalSystem S>
PseudoOrbit<S> generate_pseudo_orbit(const S& sys, std::int64_t k, const typename S::Distance& scale, GapRange gaps,
                                     Rng& rng) {
  using Orbit = PseudoOrbit<S>;
  if (k < 0) throw std::invalid_argument("jump count must be nonnegative");
  if (gaps.min < 1 || gaps.max < gaps.min) throw std::invalid_argument("jump gaps must satisfy 1 <= min <= max");
  auto seed = sys.random_point(rng);
  if (k == 0) return Orbit::orbit(sys, seed, 0);

  const std::int64_t first = uniform_int(rng, -gaps.max, gaps.max);
  std::vector<typename Orbit::Block> blocks;
  blocks.push_back({seed, 1});
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t len = i + 1 == k ? 1 : uniform_int(rng, gaps.min, gaps.max);
    const auto arrival = sys.iterate(blocks.back().seed, blocks.back().length);
    blocks.push_back({sys.perturb(arrival, scale, rng), len});
  }
  Orbit out(sys, std::move(blocks), first - 1);
  if (out.jump_count() != static_cast<std::size_t>(k) || !out.is_pseudo_orbit(scale)) {
    throw std::runtime_error("could not place " + std::to_string(k) + " jumps below the requested scale");
  }
  return out;
}

}  // namespace shadowing
