#include "l1lb/interval_label.hpp"

#include <algorithm>
#include <string>

#include "l1lb/error.hpp"

namespace l1lb {

IntervalLabel::IntervalLabel(std::uint64_t length) : length_(length) {}

IntervalLabel::IntervalLabel(std::uint64_t length, std::vector<Interval> ones)
    : length_(length) {
  std::erase_if(ones, [](const Interval& iv) { return iv.begin >= iv.end; });
  std::sort(ones.begin(), ones.end(),
            [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
  for (const Interval& iv : ones) {
    if (iv.end > length_) {
      throw InvalidArgument("interval [" + std::to_string(iv.begin) + "," +
                            std::to_string(iv.end) + ") exceeds label length " +
                            std::to_string(length_));
    }
    if (!ones_.empty() && iv.begin <= ones_.back().end) {
      ones_.back().end = std::max(ones_.back().end, iv.end);
    } else {
      ones_.push_back(iv);
    }
  }
}

IntervalLabel IntervalLabel::from_bits(std::span<const std::uint8_t> bits) {
  std::vector<Interval> runs;
  for (std::uint64_t i = 0; i < bits.size();) {
    if (bits[i] == 0) {
      ++i;
      continue;
    }
    std::uint64_t j = i;
    while (j < bits.size() && bits[j] != 0) ++j;
    runs.push_back({i, j});
    i = j;
  }
  return IntervalLabel(bits.size(), std::move(runs));
}

std::uint64_t IntervalLabel::popcount() const {
  std::uint64_t total = 0;
  for (const Interval& iv : ones_) total += iv.size();
  return total;
}

bool IntervalLabel::bit(std::uint64_t index) const {
  auto it = std::upper_bound(ones_.begin(), ones_.end(), index,
                             [](std::uint64_t x, const Interval& iv) { return x < iv.begin; });
  if (it == ones_.begin()) return false;
  return index < std::prev(it)->end;
}

IntervalLabel IntervalLabel::with_ones(std::uint64_t begin, std::uint64_t end) const {
  std::vector<Interval> runs = ones_;
  runs.push_back({begin, end});
  return IntervalLabel(length_, std::move(runs));
}

std::vector<std::uint8_t> IntervalLabel::to_bits() const {
  std::vector<std::uint8_t> bits(length_, 0);
  for (const Interval& iv : ones_) {
    std::fill(bits.begin() + static_cast<std::ptrdiff_t>(iv.begin),
              bits.begin() + static_cast<std::ptrdiff_t>(iv.end), std::uint8_t{1});
  }
  return bits;
}

bool IntervalLabel::is_canonical() const {
  for (std::size_t i = 0; i < ones_.size(); ++i) {
    if (ones_[i].begin >= ones_[i].end || ones_[i].end > length_) return false;
    if (i > 0 && ones_[i].begin <= ones_[i - 1].end) return false;
  }
  return true;
}

std::uint64_t l1_interval_distance(const IntervalLabel& a, const IntervalLabel& b) {
  if (a.length() != b.length()) {
    throw InvalidArgument("label length mismatch: " + std::to_string(a.length()) + " vs " +
                          std::to_string(b.length()));
  }
  // |A xor B| = |A| + |B| - 2|A and B|, intersection by a two-pointer sweep.
  const auto& x = a.ones();
  const auto& y = b.ones();
  std::uint64_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    const std::uint64_t lo = std::max(x[i].begin, y[j].begin);
    const std::uint64_t hi = std::min(x[i].end, y[j].end);
    if (lo < hi) common += hi - lo;
    if (x[i].end < y[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return a.popcount() + b.popcount() - 2 * common;
}

}  // namespace l1lb
