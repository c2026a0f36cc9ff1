#include "chanbin/merge.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "chanbin/error.hpp"

namespace chanbin {

void validate(const MergeConfig& config) {
  if (!std::isfinite(config.thresh_count_pct) || config.thresh_count_pct < 0.0 ||
      config.thresh_count_pct > 100.0)
    throw Error(Errc::InvalidConfig, "thresh_count_pct must lie in [0,100]");
  if (!std::isfinite(config.thresh_distance) || config.thresh_distance < 0.0)
    throw Error(Errc::InvalidConfig, "thresh_distance must be finite and non-negative");
  if (config.max_colors && *config.max_colors < 1)
    throw Error(Errc::InvalidConfig, "max_colors must be positive");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double nearest_distance(const std::vector<ColorBin>& bins, std::size_t i) {
  double d = std::numeric_limits<double>::infinity();
  if (i > 0) d = std::min(d, bins[i].centroid() - bins[i - 1].centroid());
  if (i + 1 < bins.size()) d = std::min(d, bins[i + 1].centroid() - bins[i].centroid());
  return d;
}

// Nearest centroid, then larger count, then the lower neighbour.
std::size_t merge_target(const std::vector<ColorBin>& bins, std::size_t i) {
  if (i == 0) return 1;
  if (i + 1 == bins.size()) return i - 1;
  const double left = bins[i].centroid() - bins[i - 1].centroid();
  const double right = bins[i + 1].centroid() - bins[i].centroid();
  if (left != right) return left < right ? i - 1 : i + 1;
  if (bins[i - 1].count != bins[i + 1].count)
    return bins[i - 1].count > bins[i + 1].count ? i - 1 : i + 1;
  return i - 1;
}

void absorb(ColorBin& into, const ColorBin& from) {
  into.count += from.count;
  into.value_sum += from.value_sum;
  into.range_lo = std::min(into.range_lo, from.range_lo);
  into.range_hi = std::max(into.range_hi, from.range_hi);
  into.min_value = std::min(into.min_value, from.min_value);
  into.max_value = std::max(into.max_value, from.max_value);
}

void merge_at(std::vector<ColorBin>& bins, std::size_t i) {
  absorb(bins[merge_target(bins, i)], bins[i]);
  bins.erase(bins.begin() + static_cast<std::ptrdiff_t>(i));
}

}  // namespace

std::vector<ColorBin> merge_bins(std::vector<ColorBin> bins, std::uint64_t total,
                                 const MergeConfig& config) {
  validate(config);
  if (bins.empty()) throw Error(Errc::EmptyInput, "no bins to merge");

  const double count_threshold = config.thresh_count_pct * static_cast<double>(total) / 100.0;
  while (bins.size() > 1) {
    std::size_t pick = kNone;
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (static_cast<double>(bins[i].count) >= count_threshold) continue;
      if (nearest_distance(bins, i) >= config.thresh_distance) continue;
      // strict comparison keeps the lower centroid on equal counts
      if (pick == kNone || bins[i].count < bins[pick].count) pick = i;
    }
    if (pick == kNone) break;
    merge_at(bins, pick);
  }
  return bins;
}

std::vector<DominantColor> finalize_report(std::vector<ColorBin> bins, std::uint64_t total,
                                           const MergeConfig& config) {
  validate(config);
  if (bins.empty() || total == 0) throw Error(Errc::EmptyInput, "no bins to report");

  if (config.max_colors) {
    const auto cap = static_cast<std::size_t>(*config.max_colors);
    while (bins.size() > cap) {
      std::size_t smallest = 0;
      for (std::size_t i = 1; i < bins.size(); ++i)
        if (bins[i].count < bins[smallest].count) smallest = i;
      merge_at(bins, smallest);
    }
  }

  std::vector<DominantColor> out;
  out.reserve(bins.size());
  for (const ColorBin& bin : bins)
    out.push_back({bin.centroid(), 100.0 * static_cast<double>(bin.count) / static_cast<double>(total)});
  return out;
}

}  // namespace chanbin
