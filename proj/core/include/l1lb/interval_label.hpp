#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace l1lb {

/// Half-open integer range [begin, end).
struct Interval {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const { return end - begin; }
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// A vector in {0,1}^length stored as the maximal runs of ones.
///
/// Intervals are kept sorted, pairwise disjoint and non-adjacent, so two
/// labels are equal iff their interval lists are equal.
class IntervalLabel {
 public:
  IntervalLabel() = default;
  explicit IntervalLabel(std::uint64_t length);

  /// Builds from arbitrary ranges; overlapping or touching ranges are merged.
  IntervalLabel(std::uint64_t length, std::vector<Interval> ones);

  static IntervalLabel from_bits(std::span<const std::uint8_t> bits);

  std::uint64_t length() const { return length_; }
  const std::vector<Interval>& ones() const { return ones_; }
  std::uint64_t popcount() const;
  bool bit(std::uint64_t index) const;

  /// Returns a copy with [begin, end) set to one.
  IntervalLabel with_ones(std::uint64_t begin, std::uint64_t end) const;

  std::vector<std::uint8_t> to_bits() const;

  /// True when the run list is sorted, disjoint, non-adjacent and in range.
  bool is_canonical() const;

  friend bool operator==(const IntervalLabel&, const IntervalLabel&) = default;

 private:
  std::uint64_t length_ = 0;
  std::vector<Interval> ones_;
};

/// Exact l1 (Hamming) distance: measure of the symmetric difference.
/// Throws InvalidArgument on length mismatch.
std::uint64_t l1_interval_distance(const IntervalLabel& a, const IntervalLabel& b);

}  // namespace l1lb
