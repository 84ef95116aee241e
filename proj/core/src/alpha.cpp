#include "shadowing/alpha.hpp"

#include "shadowing/toral.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

namespace shadowing {

namespace {

struct Cell {
  Rational x0, x1, y0, y1;
};

/// Range of p*x + q*y over the box, exact (extremes sit at corners).
std::pair<Rational, Rational> linear_range(const Integer& p, const Integer& q, const Cell& c) {
  const std::array<Rational, 4> corners = {p * c.x0 + q * c.y0, p * c.x0 + q * c.y1, p * c.x1 + q * c.y0,
                                           p * c.x1 + q * c.y1};
  return {*std::min_element(corners.begin(), corners.end()), *std::max_element(corners.begin(), corners.end())};
}

bool outside_ball(const IntMatrix2& m, const Cell& c, const Rational& a) {
  for (int row = 0; row < 2; ++row) {
    const auto [lo, hi] = linear_range(m.e[2 * row], m.e[2 * row + 1], c);
    if (lo > a || hi < -a) return true;
  }
  return false;
}

bool inside_inner(const Cell& c, const Rational& half) {
  return c.x0 >= -half && c.x1 <= half && c.y0 >= -half && c.y1 <= half;
}

}  // namespace

AlphaSweepReport alpha_sweep_toral(const Rational& candidate, std::int64_t horizon, std::int64_t grid) {
  if (candidate <= 0) throw std::invalid_argument("candidate alpha must be positive");
  if (candidate > Rational(1, 6)) throw std::invalid_argument("candidate alpha exceeds the linear-regime cap 1/6");
  if (horizon < 1 || grid < 2) throw std::invalid_argument("sweep needs horizon >= 1 and grid >= 2");

  std::vector<IntMatrix2> powers;
  std::vector<std::int64_t> times;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    for (std::int64_t t : {n, -n}) {
      powers.push_back(cat::power(t));
      times.push_back(n);
    }
  }

  AlphaSweepReport report;
  const Rational a = candidate;
  const Rational half = a / 2;
  const Rational step = 2 * a / grid;
  constexpr int kMaxDepth = 6;

  // Depth-first with explicit stack; each entry is a cell and its depth.
  std::vector<std::pair<Cell, int>> stack;
  for (std::int64_t i = 0; i < grid; ++i) {
    for (std::int64_t j = 0; j < grid; ++j) {
      const Rational x0 = -a + step * i;
      const Rational y0 = -a + step * j;
      stack.push_back({Cell{x0, x0 + step, y0, y0 + step}, 0});
    }
  }
  while (!stack.empty()) {
    auto [cell, depth] = stack.back();
    stack.pop_back();
    ++report.cells_checked;
    if (inside_inner(cell, half)) continue;
    bool expelled = false;
    for (std::size_t k = 0; k < powers.size(); ++k) {
      if (outside_ball(powers[k], cell, a)) {
        report.max_escape_time = std::max(report.max_escape_time, times[k]);
        expelled = true;
        break;
      }
    }
    if (expelled) continue;
    if (depth >= kMaxDepth) {
      report.failing_cell_lo_x = cell.x0;
      report.failing_cell_lo_y = cell.y0;
      return report;
    }
    ++report.cells_refined;
    const Rational mx = (cell.x0 + cell.x1) / 2;
    const Rational my = (cell.y0 + cell.y1) / 2;
    stack.push_back({Cell{cell.x0, mx, cell.y0, my}, depth + 1});
    stack.push_back({Cell{mx, cell.x1, cell.y0, my}, depth + 1});
    stack.push_back({Cell{cell.x0, mx, my, cell.y1}, depth + 1});
    stack.push_back({Cell{mx, cell.x1, my, cell.y1}, depth + 1});
  }
  report.certified = true;
  return report;
}

bool alpha_certify_toral(const Rational& candidate, std::int64_t horizon, std::int64_t grid) {
  return alpha_sweep_toral(candidate, horizon, grid).certified;
}

Rational certified_toral_alpha(std::int64_t horizon, std::int64_t grid) {
  Rational candidate(1, 8);
  for (int k = 0; k < 16; ++k) {
    if (alpha_certify_toral(candidate, horizon, grid)) return candidate;
    candidate /= 2;
  }
  throw std::runtime_error("no dyadic expansivity constant could be certified for the cat map");
}

ShiftAlphaReport alpha_check_shift(const ShiftSystem& sys, std::int64_t radius) {
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  const auto len = static_cast<std::size_t>(2 * radius + 1);
  const int m = sys.alphabet_size();
  std::int64_t words = 1;
  for (std::size_t i = 0; i < len; ++i) words *= m;
  if (words > (1 << 8)) throw std::invalid_argument("alphabet/radius too large for pairwise exhaustion");

  auto decode = [&](std::int64_t code) {
    Word w(len);
    for (auto& s : w) {
      s = static_cast<Symbol>(code % m);
      code /= m;
    }
    return ShiftPoint({0}, w, {0}, radius);
  };
  std::vector<ShiftPoint> points;
  points.reserve(static_cast<std::size_t>(words));
  for (std::int64_t c = 0; c < words; ++c) points.push_back(decode(c));

  ShiftAlphaReport report;
  const Rational a = sys.alpha();
  for (std::int64_t i = 0; i < words; ++i) {
    for (std::int64_t j = 0; j < words; ++j) {
      bool close = true;
      for (std::int64_t n = -radius; n <= radius && close; ++n) {
        close = sys.dist(sys.iterate(points[i], n), sys.iterate(points[j], n)) <= a;
      }
      ++report.pairs_checked;
      if (close != (i == j)) return report;
    }
  }
  report.certified = true;
  return report;
}

}  // namespace shadowing
