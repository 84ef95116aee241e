#pragma once

#include <cstdint>
#include <random>

namespace shadowing {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]. Written out instead of using
/// std::uniform_int_distribution so that streams are identical across
/// standard libraries.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return lo + static_cast<std::int64_t>(draw % span);
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

/// Derives an independent stream for trial `index` from a campaign seed.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace shadowing
