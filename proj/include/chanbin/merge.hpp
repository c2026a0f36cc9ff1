#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chanbin/binning.hpp"
#include "chanbin/report.hpp"

namespace chanbin {

struct MergeConfig {
  double thresh_count_pct = 5.0;  // percent of the channel's pixels
  double thresh_distance = 40.0;  // centroid distance, in channel levels
  std::optional<int> max_colors = 8;
};

void validate(const MergeConfig& config);

/// Phase two: repeatedly merge the smallest bin that is both under the count
/// threshold and within thresh_distance of a neighbouring centroid into its
/// nearest neighbour, until no bin qualifies.
///
/// Tie-breaks: the candidate with the lower centroid wins among equal counts;
/// the target is the neighbour with the nearer centroid, then the larger
/// count, then the lower centroid. Throws Errc::EmptyInput.
std::vector<ColorBin> merge_bins(std::vector<ColorBin> bins, std::uint64_t total,
                                 const MergeConfig& config);

/// Centroid and percent per bin, after folding the smallest bins into their
/// nearest neighbours until at most max_colors remain.
std::vector<DominantColor> finalize_report(std::vector<ColorBin> bins, std::uint64_t total,
                                           const MergeConfig& config);

}  // namespace chanbin
