#include "chanbin/pipeline.hpp"

#include <future>

#include "chanbin/error.hpp"
#include "chanbin/image.hpp"

namespace chanbin {

void validate(const ExtractionConfig& config) {
  if (config.binning.max_recursion_depth < ChannelHistogram::kLevels)
    throw Error(Errc::InvalidConfig, "max_recursion_depth must be at least 256");
  validate(config.merge);
}

std::vector<DominantColor> extract_channel(const ChannelHistogram& hist, const ExtractionConfig& config) {
  validate(config);
  auto bins = channelized_binning(hist, config.binning);
  bins = merge_bins(std::move(bins), hist.total(), config.merge);
  return finalize_report(std::move(bins), hist.total(), config.merge);
}

std::array<ChannelReport, 3> extract_dominant_colors(const RgbImage& image, const ExtractionConfig& config,
                                                     Execution execution) {
  validate(config);
  if (image.pixel_count() == 0) throw Error(Errc::EmptyInput, "image has no pixels");
  const auto hists = split_channels(image);

  std::array<ChannelReport, 3> reports;
  for (ChannelId id : kChannels) reports[static_cast<std::size_t>(id)].channel = id;

  if (execution == Execution::Sequential) {
    for (std::size_t c = 0; c < 3; ++c) reports[c].colors = extract_channel(hists[c], config);
    return reports;
  }

  std::array<std::future<std::vector<DominantColor>>, 3> jobs;
  for (std::size_t c = 0; c < 3; ++c)
    jobs[c] = std::async(std::launch::async, [&hists, &config, c] { return extract_channel(hists[c], config); });
  for (std::size_t c = 0; c < 3; ++c) reports[c].colors = jobs[c].get();
  return reports;
}

}  // namespace chanbin
