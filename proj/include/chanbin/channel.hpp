#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chanbin/report.hpp"

namespace chanbin {

class RgbImage;

/// Value histogram of one 8-bit channel. Equivalent to the channel's sorted
/// pixel array, in 256 buckets.
class ChannelHistogram {
 public:
  static constexpr int kLevels = 256;

  ChannelHistogram() { counts_.fill(0); }

  void add(std::uint8_t value, std::uint64_t n = 1) {
    counts_[value] += n;
    total_ += n;
  }

  std::uint64_t count(int value) const { return counts_[static_cast<std::size_t>(value)]; }
  std::uint64_t total() const noexcept { return total_; }
  const std::array<std::uint64_t, kLevels>& counts() const noexcept { return counts_; }

  int distinct_count() const noexcept;
  /// Least and greatest occupied values; only meaningful when total() > 0.
  int min_value() const noexcept;
  int max_value() const noexcept;

  friend bool operator==(const ChannelHistogram&, const ChannelHistogram&) = default;

 private:
  std::array<std::uint64_t, kLevels> counts_;
  std::uint64_t total_ = 0;
};

enum class ValueMode { Distinct, AllPixels };

std::array<ChannelHistogram, 3> split_channels(const RgbImage& image);

/// Throws Errc::OutOfRange for values outside [0,255] and Errc::EmptyInput
/// for an empty sequence.
ChannelHistogram histogram_from_values(std::span<const int> values);

/// Ascending values: each occupied value once (Distinct) or repeated by its
/// count (AllPixels).
std::vector<int> sorted_values(const ChannelHistogram& hist, ValueMode mode);

}  // namespace chanbin
