#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace chanbin {

enum class ChannelId { Red = 0, Green = 1, Blue = 2 };

inline constexpr std::array<ChannelId, 3> kChannels = {ChannelId::Red, ChannelId::Green,
                                                       ChannelId::Blue};

std::string_view channel_name(ChannelId id) noexcept;

/// A representative channel value and the share of pixels it stands for.
struct DominantColor {
  double value = 0.0;    // centroid in [0, 255]
  double percent = 0.0;  // in (0, 100]

  friend bool operator==(const DominantColor&, const DominantColor&) = default;
};

struct ChannelReport {
  ChannelId channel = ChannelId::Red;
  std::vector<DominantColor> colors;  // ascending by value

  friend bool operator==(const ChannelReport&, const ChannelReport&) = default;
};

}  // namespace chanbin
