#pragma once

#include <cstdint>
#include <vector>

#include "chanbin/channel.hpp"
#include "chanbin/pipeline.hpp"
#include "chanbin/report.hpp"

namespace chanbin {

enum class GlaInit { UniformSpread, SeededRandom };

struct GlaConfig {
  int k = 1;
  int max_iters = 100;
  double tol = 1e-6;
  GlaInit init = GlaInit::UniformSpread;
  std::uint64_t seed = 0;
};

struct GlaResult {
  std::vector<DominantColor> colors;
  std::vector<double> objective;  // weighted within-cluster SSE after each iteration
  int iterations = 0;
};

/// Weighted 1-D Lloyd quantiser over the histogram. Throws Errc::KTooLarge
/// when k exceeds the number of distinct values (or 256), Errc::InvalidConfig
/// for k < 1 or a non-positive iteration budget.
GlaResult lloyd_quantize_traced(const ChannelHistogram& hist, const GlaConfig& config);
std::vector<DominantColor> lloyd_quantize(const ChannelHistogram& hist, const GlaConfig& config);

struct ComparisonRecord {
  ChannelReport binning;
  ChannelReport gla;
  int binning_k = 0;  // discovered by channelized binning, never configured
  double binning_ms = 0.0;
  double gla_ms = 0.0;
};

ComparisonRecord compare_methods(const ChannelHistogram& hist, ChannelId channel,
                                 const ExtractionConfig& extraction, const GlaConfig& gla);

}  // namespace chanbin
