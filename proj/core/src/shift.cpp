#include "shadowing/shift.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace shadowing {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return w;
}

enum class Region { Left, Core, Right };

Region region_of(const ShiftPoint& p, std::int64_t k) {
  if (k < p.core_begin()) return Region::Left;
  if (k < p.core_end()) return Region::Core;
  return Region::Right;
}

std::int64_t period_of(const ShiftPoint& p, Region r) {
  return static_cast<std::int64_t>(r == Region::Left ? p.left_period().size() : p.right_period().size());
}

}  // namespace

ShiftPoint::ShiftPoint(Word left_period, Word core, Word right_period, std::int64_t offset)
    : left_(std::move(left_period)), core_(std::move(core)), right_(std::move(right_period)), offset_(offset) {
  if (left_.empty() || right_.empty()) throw std::invalid_argument("shift point periods must be nonempty");
  normalize();
}

void ShiftPoint::normalize() {
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  while (!core_.empty() && core_.back() == right_.back()) {
    core_.pop_back();
    std::rotate(right_.rbegin(), right_.rbegin() + 1, right_.rend());
  }
  std::size_t absorbed = 0;
  while (absorbed < core_.size() && core_[absorbed] == left_.front()) {
    std::rotate(left_.begin(), left_.begin() + 1, left_.end());
    ++absorbed;
  }
  if (absorbed > 0) {
    core_.erase(core_.begin(), core_.begin() + static_cast<std::ptrdiff_t>(absorbed));
    offset_ -= static_cast<std::int64_t>(absorbed);
  }
  if (core_.empty() && left_ == right_) {
    offset_ = floor_mod(offset_, static_cast<std::int64_t>(right_.size()));
  }
}

Symbol ShiftPoint::at(std::int64_t k) const {
  const std::int64_t p = k + offset_;
  const auto n = static_cast<std::int64_t>(core_.size());
  if (p < 0) return left_[static_cast<std::size_t>(floor_mod(p, static_cast<std::int64_t>(left_.size())))];
  if (p < n) return core_[static_cast<std::size_t>(p)];
  return right_[static_cast<std::size_t>(floor_mod(p - n, static_cast<std::int64_t>(right_.size())))];
}

ShiftPoint ShiftPoint::shifted(std::int64_t n) const {
  ShiftPoint out = *this;
  out.offset_ += n;
  if (out.core_.empty() && out.left_ == out.right_) {
    out.offset_ = floor_mod(out.offset_, static_cast<std::int64_t>(out.right_.size()));
  }
  return out;
}

ShiftPoint ShiftPoint::assemble(const ShiftPoint& left, std::int64_t lo, const Word& middle,
                                const ShiftPoint& right) {
  const std::int64_t mid_end = lo + static_cast<std::int64_t>(middle.size());
  const std::int64_t start = std::min(lo, left.core_begin());
  const std::int64_t end = std::max(mid_end, right.core_end());
  auto value = [&](std::int64_t k) -> Symbol {
    if (k < lo) return left.at(k);
    if (k < mid_end) return middle[static_cast<std::size_t>(k - lo)];
    return right.at(k);
  };
  Word core;
  core.reserve(static_cast<std::size_t>(end - start));
  for (std::int64_t k = start; k < end; ++k) core.push_back(value(k));
  Word lp(left.left_.size());
  for (std::size_t i = 0; i < lp.size(); ++i) {
    lp[i] = left.at(start - static_cast<std::int64_t>(lp.size()) + static_cast<std::int64_t>(i));
  }
  Word rp(right.right_.size());
  for (std::size_t i = 0; i < rp.size(); ++i) rp[i] = right.at(end + static_cast<std::int64_t>(i));
  return ShiftPoint(std::move(lp), std::move(core), std::move(rp), -start);
}

ShiftPoint ShiftPoint::with_symbol(std::int64_t k, Symbol s) const {
  return assemble(*this, k, Word{s}, *this);
}

Symbol ShiftPoint::max_symbol() const {
  Symbol m = 0;
  for (const Word* w : {&left_, &core_, &right_}) {
    for (Symbol s : *w) m = std::max(m, s);
  }
  return m;
}

std::optional<std::int64_t> first_difference(const ShiftPoint& x, const ShiftPoint& y, std::int64_t from,
                                             int step) {
  if (step != 1 && step != -1) throw std::invalid_argument("step must be +1 or -1");
  const std::int64_t bounds[] = {x.core_begin(), x.core_end(), y.core_begin(), y.core_end()};
  std::int64_t k = from;
  while (true) {
    // [k, seg_last] in walking order keeps both points inside one region each.
    std::optional<std::int64_t> seg_last;
    if (step > 0) {
      for (std::int64_t b : bounds) {
        if (b > k && (!seg_last || b - 1 < *seg_last)) seg_last = b - 1;
      }
    } else {
      for (std::int64_t b : bounds) {
        if (b <= k && (!seg_last || b > *seg_last)) seg_last = b;
      }
    }
    const Region rx = region_of(x, k);
    const Region ry = region_of(y, k);
    const bool both_periodic = rx != Region::Core && ry != Region::Core;
    std::int64_t budget = std::numeric_limits<std::int64_t>::max();
    if (seg_last) budget = (step > 0 ? *seg_last - k : k - *seg_last) + 1;
    if (both_periodic) budget = std::min(budget, std::lcm(period_of(x, rx), period_of(y, ry)));
    for (std::int64_t i = 0; i < budget; ++i) {
      const std::int64_t j = k + step * i;
      if (x.at(j) != y.at(j)) return j;
    }
    if (!seg_last) return std::nullopt;
    k = *seg_last + step;
  }
}

std::string format_word(const Word& w) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(kDigits[s & 0xf]);
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      w.push_back(static_cast<Symbol>(c - '0'));
    } else if (c >= 'a' && c <= 'f') {
      w.push_back(static_cast<Symbol>(c - 'a' + 10));
    } else {
      throw std::invalid_argument("bad symbol in word: " + std::string(text));
    }
  }
  return w;
}

ShiftSystem::ShiftSystem(int alphabet_size) : m_(alphabet_size) {
  if (m_ < 2 || m_ > 16) throw std::invalid_argument("alphabet size must be in [2, 16]");
}

std::optional<std::int64_t> ShiftSystem::agreement_radius(const Point& p, const Point& q) const {
  const auto fwd = first_difference(p, q, 0, 1);
  if (fwd && *fwd == 0) return 0;
  const auto bwd = first_difference(p, q, -1, -1);
  if (!fwd && !bwd) return std::nullopt;
  if (!fwd) return -*bwd;
  if (!bwd) return *fwd;
  return std::min(*fwd, -*bwd);
}

Rational ShiftSystem::dist(const Point& p, const Point& q) const {
  const auto r = agreement_radius(p, q);
  if (!r) return Rational(0);
  return pow2(-*r);
}

bool ShiftSystem::same(const Point& p, const Point& q) const { return !agreement_radius(p, q).has_value(); }

TailBound<Rational> ShiftSystem::tail_sup(const Point& p, const Point& q, TailSide side,
                                           const Rational& bound) const {
  TailBound<Rational> out;
  if (side == TailSide::Right) {
    if (auto beyond = first_difference(p, q, 1, 1)) {
      out.sup = Rational(1);
      out.escape_time = *beyond;
      out.reason = "coordinates differ at " + std::to_string(*beyond) + " > 0";
      return out;
    }
    if (auto last = first_difference(p, q, 0, -1)) {
      out.sup = pow2(-(1 - *last));
      out.reason = "last difference at " + std::to_string(*last);
      if (*out.sup > bound) out.escape_time = 1;
    } else {
      out.sup = Rational(0);
      out.reason = "identical sequences";
    }
    return out;
  }
  if (auto beyond = first_difference(p, q, -1, -1)) {
    out.sup = Rational(1);
    out.escape_time = -*beyond;
    out.reason = "coordinates differ at " + std::to_string(*beyond) + " < 0";
    return out;
  }
  if (auto first = first_difference(p, q, 0, 1)) {
    out.sup = pow2(-(1 + *first));
    out.reason = "first difference at " + std::to_string(*first);
    if (*out.sup > bound) out.escape_time = 1;
  } else {
    out.sup = Rational(0);
    out.reason = "identical sequences";
  }
  return out;
}

std::string ShiftSystem::format_point(const Point& p) const {
  std::ostringstream os;
  os << "L:" << format_word(p.left_period()) << " C:" << format_word(p.core())
     << " R:" << format_word(p.right_period()) << " O:" << p.offset();
  return os.str();
}

ShiftSystem::Point ShiftSystem::parse_point(std::string_view text) const {
  std::optional<Word> l, c, r;
  std::optional<std::int64_t> o;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || tok[1] != ':') throw std::invalid_argument("bad shift point field: " + tok);
    const std::string_view body = std::string_view(tok).substr(2);
    switch (tok[0]) {
      case 'L': l = parse_word(body); break;
      case 'C': c = parse_word(body); break;
      case 'R': r = parse_word(body); break;
      case 'O': o = std::stoll(std::string(body)); break;
      default: throw std::invalid_argument("bad shift point field: " + tok);
    }
  }
  if (!l || !c || !r || !o) throw std::invalid_argument("shift point needs L:, C:, R: and O: fields");
  Point p(*l, *c, *r, *o);
  check_alphabet(p);
  return p;
}

void ShiftSystem::check_alphabet(const Point& p) const {
  if (p.max_symbol() >= m_) throw std::invalid_argument("symbol outside the alphabet");
}

ShiftSystem::Point ShiftSystem::random_point(Rng& rng) const {
  auto word = [&](std::int64_t lo, std::int64_t hi) {
    Word w(static_cast<std::size_t>(uniform_int(rng, lo, hi)));
    for (auto& s : w) s = static_cast<Symbol>(uniform_int(rng, 0, m_ - 1));
    return w;
  };
  Word l = word(1, 3);
  Word c = word(0, 8);
  Word r = word(1, 3);
  const std::int64_t o = uniform_int(rng, 0, static_cast<std::int64_t>(c.size()));
  return Point(std::move(l), std::move(c), std::move(r), o);
}

ShiftSystem::Point ShiftSystem::perturb(const Point& p, const Distance& scale, Rng& rng) const {
  if (scale <= 0) throw std::invalid_argument("perturbation scale must be positive");
  // d(p, q) = 2^-r < scale needs r > -log2(scale).
  std::int64_t r = 0;
  while (pow2(-r) >= scale) ++r;
  const std::int64_t radius = r + uniform_int(rng, 0, 3);
  Point q = p;
  const std::int64_t k = coin(rng) ? radius : -radius;
  const auto current = p.at(k);
  const auto shift = static_cast<Symbol>(uniform_int(rng, 1, m_ - 1));
  q = q.with_symbol(k, static_cast<Symbol>((current + shift) % m_));
  // occasional extra differences further out
  const auto extra = uniform_int(rng, 0, 2);
  for (std::int64_t i = 0; i < extra; ++i) {
    const std::int64_t kk = (coin(rng) ? 1 : -1) * (radius + uniform_int(rng, 1, 6));
    q = q.with_symbol(kk, static_cast<Symbol>(uniform_int(rng, 0, m_ - 1)));
  }
  return q;
}

}  // namespace shadowing
