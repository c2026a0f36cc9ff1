#pragma once

#include <array>
#include <vector>

#include "chanbin/binning.hpp"
#include "chanbin/channel.hpp"
#include "chanbin/merge.hpp"
#include "chanbin/report.hpp"

namespace chanbin {

class RgbImage;

struct ExtractionConfig {
  BinningConfig binning;
  MergeConfig merge;
};

void validate(const ExtractionConfig& config);

enum class Execution { Sequential, Parallel };

/// Binning, merging and reporting for a single channel.
std::vector<DominantColor> extract_channel(const ChannelHistogram& hist,
                                           const ExtractionConfig& config);

/// Reports in red, green, blue order. Parallel execution gives results
/// identical to sequential.
std::array<ChannelReport, 3> extract_dominant_colors(const RgbImage& image,
                                                     const ExtractionConfig& config,
                                                     Execution execution = Execution::Sequential);

}  // namespace chanbin
