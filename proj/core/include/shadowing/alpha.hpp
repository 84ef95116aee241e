#pragma once

#include "shadowing/rational.hpp"
#include "shadowing/shift.hpp"

#include <cstdint>

namespace shadowing {

struct AlphaSweepReport {
  bool certified = false;
  std::int64_t cells_checked = 0;
  std::int64_t cells_refined = 0;
  std::int64_t max_escape_time = 0;  // largest |n| needed to expel a cell
  Rational failing_cell_lo_x, failing_cell_lo_y;  // set when certification fails
};

/// Sound check that `candidate` is an expansivity constant of the cat map.
///
/// The square [-a, a]^2 of lifted differences is cut into grid x grid
/// rational cells (refined adaptively). Every cell not inside the inner box
/// [-a/2, a/2]^2 must be mapped entirely outside [-a, a]^2 by some A^n,
/// 0 < |n| <= horizon, using exact corner bounds of the integer matrix A^n.
/// Then a difference that stays a-close for |n| <= horizon is a/2-close, and
/// by linearity a difference that stays a-close forever is zero. Requires
/// 0 < candidate <= 1/6 so lifts follow the linear dynamics.
AlphaSweepReport alpha_sweep_toral(const Rational& candidate, std::int64_t horizon, std::int64_t grid);

bool alpha_certify_toral(const Rational& candidate, std::int64_t horizon = 12, std::int64_t grid = 64);

/// Largest 2^-k <= 1/8 that passes the sweep (1/8 itself when it does).
Rational certified_toral_alpha(std::int64_t horizon = 12, std::int64_t grid = 64);

struct ShiftAlphaReport {
  bool certified = false;
  std::int64_t pairs_checked = 0;
};

/// Coordinate-forcing argument for alpha = 1/2 on the full shift: for every
/// pair of words of length 2R+1 over the alphabet, distance <= 1/2 at every
/// shift |n| <= R holds exactly when the words agree everywhere.
ShiftAlphaReport alpha_check_shift(const ShiftSystem& sys, std::int64_t radius);

}  // namespace shadowing
