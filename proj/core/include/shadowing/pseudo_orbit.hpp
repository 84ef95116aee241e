#pragma once

#include "shadowing/system.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowing {

/// Bi-infinite pseudo-orbit with finitely many jumps.
///
/// Block i covers indices [start_i, start_{i+1}) with entries T^j(seed_i).
/// The first block also extends to -infinity by backward iteration and the
/// last block to +infinity by forward iteration, so the only possible jumps
/// are at block starts. Boundaries where the orbit does not actually jump
/// are merged on construction, hence jump_count() == blocks().size() - 1.
template <DynamicalSystem S>
class PseudoOrbit {
 public:
  using Point = typename S::Point;
  using Distance = typename S::Distance;

  struct Block {
    Point seed;
    std::int64_t length = 1;
  };

  struct Jump {
    std::int64_t index;  // T(entry(index - 1)) != entry(index)
    Distance size;
  };

  PseudoOrbit(S system, std::vector<Block> blocks, std::int64_t base_index);

  /// Pure orbit with entry(index) == p.
  static PseudoOrbit orbit(const S& system, const Point& p, std::int64_t index = 0) {
    return PseudoOrbit(system, {Block{p, 1}}, index);
  }

  const S& system() const { return system_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::int64_t base_index() const { return base_; }
  std::int64_t block_start(std::size_t i) const { return starts_[i]; }

  Point entry_at(std::int64_t n) const;
  /// Entries over w, computed by stepping instead of per-index powers.
  std::vector<Point> entries(const Window& w) const;

  const std::vector<Jump>& jump_positions() const { return jumps_; }
  std::size_t jump_count() const { return jumps_.size(); }
  bool is_orbit() const { return jumps_.empty(); }
  std::optional<std::int64_t> first_jump() const;
  std::optional<std::int64_t> last_jump() const;
  std::optional<Distance> max_jump() const;
  /// Every jump strictly below delta.
  bool is_pseudo_orbit(const Distance& delta) const;

  /// Same entries moved k indices to the right: entry'(n) = entry(n - k).
  PseudoOrbit shift_index(std::int64_t k) const;

 private:
  std::size_t block_of(std::int64_t n) const;

  S system_;
  std::vector<Block> blocks_;
  std::int64_t base_;
  std::vector<std::int64_t> starts_;
  std::vector<Jump> jumps_;
};

template <DynamicalSystem S>
PseudoOrbit<S>::PseudoOrbit(S system, std::vector<Block> blocks, std::int64_t base_index)
    : system_(std::move(system)), base_(base_index) {
  if (blocks.empty()) throw std::invalid_argument("pseudo-orbit needs at least one block");
  for (const auto& b : blocks) {
    if (b.length < 1) throw std::invalid_argument("pseudo-orbit block lengths must be positive");
  }
  std::int64_t start = base_;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) {
      const Block& prev = blocks_.back();
      const std::int64_t prev_start = starts_.back();
      const Point arrival = system_.iterate(prev.seed, start - prev_start);
      if (system_.same(arrival, blocks[i].seed)) {
        blocks_.back().length += blocks[i].length;
        start += blocks[i].length;
        continue;
      }
      jumps_.push_back(Jump{start, system_.dist(arrival, blocks[i].seed)});
    }
    blocks_.push_back(blocks[i]);
    starts_.push_back(start);
    start += blocks[i].length;
  }
}

template <DynamicalSystem S>
std::size_t PseudoOrbit<S>::block_of(std::int64_t n) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), n);
  if (it == starts_.begin()) return 0;
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

template <DynamicalSystem S>
typename PseudoOrbit<S>::Point PseudoOrbit<S>::entry_at(std::int64_t n) const {
  const std::size_t i = block_of(n);
  return system_.iterate(blocks_[i].seed, n - starts_[i]);
}

template <DynamicalSystem S>
std::vector<typename PseudoOrbit<S>::Point> PseudoOrbit<S>::entries(const Window& w) const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(w.size()));
  std::size_t i = block_of(w.lo);
  out.push_back(entry_at(w.lo));
  for (std::int64_t n = w.lo + 1; n <= w.hi; ++n) {
    if (i + 1 < starts_.size() && starts_[i + 1] == n) {
      ++i;
      out.push_back(blocks_[i].seed);
    } else {
      out.push_back(system_.apply(out.back()));
    }
  }
  return out;
}

template <DynamicalSystem S>
std::optional<std::int64_t> PseudoOrbit<S>::first_jump() const {
  if (jumps_.empty()) return std::nullopt;
  return jumps_.front().index;
}

template <DynamicalSystem S>
std::optional<std::int64_t> PseudoOrbit<S>::last_jump() const {
  if (jumps_.empty()) return std::nullopt;
  return jumps_.back().index;
}

template <DynamicalSystem S>
std::optional<typename PseudoOrbit<S>::Distance> PseudoOrbit<S>::max_jump() const {
  if (jumps_.empty()) return std::nullopt;
  Distance m = jumps_.front().size;
  for (const auto& j : jumps_) m = std::max(m, j.size);
  return m;
}

template <DynamicalSystem S>
bool PseudoOrbit<S>::is_pseudo_orbit(const Distance& delta) const {
  return std::all_of(jumps_.begin(), jumps_.end(), [&](const Jump& j) { return j.size < delta; });
}

template <DynamicalSystem S>
PseudoOrbit<S> PseudoOrbit<S>::shift_index(std::int64_t k) const {
  PseudoOrbit out = *this;
  out.base_ += k;
  for (auto& s : out.starts_) s += k;
  for (auto& j : out.jumps_) j.index += k;
  return out;
}

/// Entries of `before` for n < cut and of `after` for n >= cut.
template <DynamicalSystem S>
PseudoOrbit<S> splice(const PseudoOrbit<S>& before, const PseudoOrbit<S>& after, std::int64_t cut) {
  using Block = typename PseudoOrbit<S>::Block;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
  std::vector<Block> blocks;
  auto take = [&](const PseudoOrbit<S>& src, std::int64_t lo, std::int64_t hi) {
    const auto& bs = src.blocks();
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::int64_t from = i == 0 ? kNegInf : src.block_start(i);
      const std::int64_t to = i + 1 == bs.size() ? kInf : src.block_start(i + 1);
      const std::int64_t u = std::max(from, lo);
      const std::int64_t v = std::min(to, hi);
      if (u >= v) continue;
      const std::int64_t len = v == kInf ? 1 : v - u;
      blocks.push_back(Block{src.entry_at(u), len});
    }
  };
  const std::int64_t start = std::min(before.base_index(), cut - 1);
  take(before, start, cut);
  take(after, cut, kInf);
  return PseudoOrbit<S>(before.system(), std::move(blocks), start);
}

/// Entries on [a, a + len) replaced by the orbit segment T^{n-a}(entry(a)).
template <DynamicalSystem S>
PseudoOrbit<S> replace_segment_with_orbit(const PseudoOrbit<S>& xi, std::int64_t a, std::int64_t len) {
  if (len < 1) throw std::invalid_argument("segment length must be positive");
  const auto segment = PseudoOrbit<S>::orbit(xi.system(), xi.entry_at(a), a);
  return splice(splice(xi, segment, a), xi, a + len);
}

template <class Distance>
struct SupResult {
  Distance value;
  std::int64_t argmax = 0;
  std::vector<Distance> per_index;  // filled only on request
};

/// max over n in w of d(entry_xi(n), entry_eta(n)), with the first index
/// attaining it.
template <DynamicalSystem S>
SupResult<typename S::Distance> sup_distance_detail(const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta,
                                                    const Window& w, bool keep_table = false) {
  const auto a = xi.entries(w);
  const auto b = eta.entries(w);
  const S& sys = xi.system();
  SupResult<typename S::Distance> out{sys.dist(a[0], b[0]), w.lo, {}};
  if (keep_table) out.per_index.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto d = i == 0 ? out.value : sys.dist(a[i], b[i]);
    if (d > out.value) {
      out.value = d;
      out.argmax = w.lo + static_cast<std::int64_t>(i);
    }
    if (keep_table) out.per_index.push_back(std::move(d));
  }
  return out;
}

template <DynamicalSystem S>
typename S::Distance sup_distance(const PseudoOrbit<S>& xi, const PseudoOrbit<S>& eta, const Window& w) {
  return sup_distance_detail(xi, eta, w).value;
}

/// Text form: a "base <n>" line, then one "<seed-spec> <length>" line per block.
template <DynamicalSystem S>
void write_pseudo_orbit(std::ostream& os, const PseudoOrbit<S>& xi) {
  os << "base " << xi.base_index() << '\n';
  for (const auto& b : xi.blocks()) os << xi.system().format_point(b.seed) << ' ' << b.length << '\n';
}

template <DynamicalSystem S>
std::string to_text(const PseudoOrbit<S>& xi) {
  std::ostringstream os;
  write_pseudo_orbit(os, xi);
  return os.str();
}

template <DynamicalSystem S>
PseudoOrbit<S> read_pseudo_orbit(std::istream& is, const S& system) {
  using Block = typename PseudoOrbit<S>::Block;
  std::string line;
  std::optional<std::int64_t> base;
  std::vector<Block> blocks;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!base) {
      if (line.rfind("base ", 0) != 0) throw std::invalid_argument("pseudo-orbit text must start with 'base <n>'");
      base = std::stoll(line.substr(5));
      continue;
    }
    const auto space = line.find_last_of(' ');
    if (space == std::string::npos) throw std::invalid_argument("block line needs '<seed> <length>': " + line);
    blocks.push_back(Block{system.parse_point(line.substr(0, space)), std::stoll(line.substr(space + 1))});
  }
  if (!base) throw std::invalid_argument("missing 'base' line");
  return PseudoOrbit<S>(system, std::move(blocks), *base);
}

template <DynamicalSystem S>
PseudoOrbit<S> from_text(const std::string& text, const S& system) {
  std::istringstream is(text);
  return read_pseudo_orbit(is, system);
}

}  // namespace shadowing
