#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "chanbin/report.hpp"

namespace chanbin {

inline constexpr std::size_t kMaxMatchColors = 16;

/// Distance between an estimated and an actual (value, percent) pair.
double pair_distance(const DominantColor& estimated, const DominantColor& actual) noexcept;

/// Minimum-total-distance injective matching of the shorter list into the
/// longer one. Pairs are (estimated index, actual index) sorted by the
/// estimated index. Among optimal matchings the lexicographically smallest
/// assignment of the shorter list wins. Throws Errc::EmptyInput or
/// Errc::TooManyColors.
std::vector<std::pair<std::size_t, std::size_t>> match_pairs(std::span<const DominantColor> estimated,
                                                             std::span<const DominantColor> actual);

struct ChannelError {
  ChannelId channel = ChannelId::Red;
  double epsilon = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;
  std::size_t unmatched_estimated = 0;
  std::size_t unmatched_actual = 0;
};

struct ErrorReport {
  std::array<ChannelError, 3> per_channel;  // red, green, blue
  double image_epsilon = 0.0;
};

/// Mean pair distance over matched pairs. Throws Errc::ChannelMismatch.
ChannelError channel_error(const ChannelReport& estimated, const ChannelReport& actual);
double epsilon(const ChannelReport& estimated, const ChannelReport& actual);

/// Both sides must hold each of red, green and blue exactly once, in any
/// order. Throws Errc::MissingChannel.
ErrorReport image_epsilon(std::span<const ChannelReport> estimated,
                          std::span<const ChannelReport> actual);

}  // namespace chanbin
