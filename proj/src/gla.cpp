#include "chanbin/gla.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "chanbin/error.hpp"

namespace chanbin {

namespace {

struct Mass {
  int value;
  double weight;
};

std::size_t nearest(const std::vector<double>& centroids, double v) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = std::abs(v - centroids[c]);
    const double d_best = std::abs(v - centroids[best]);
    if (d < d_best || (d == d_best && centroids[c] < centroids[best])) best = c;
  }
  return best;
}

std::vector<double> initial_centroids(const std::vector<Mass>& data, const GlaConfig& config) {
  const auto k = static_cast<std::size_t>(config.k);
  std::vector<double> c(k);
  if (config.init == GlaInit::UniformSpread) {
    const double lo = data.front().value;
    const double hi = data.back().value;
    for (std::size_t i = 0; i < k; ++i) c[i] = lo + (static_cast<double>(i) + 0.5) * (hi - lo) / config.k;
    return c;
  }
  std::vector<int> values;
  for (const auto& m : data) values.push_back(m.value);
  std::vector<int> picked;
  std::mt19937_64 rng(config.seed);
  std::sample(values.begin(), values.end(), std::back_inserter(picked), config.k, rng);
  for (std::size_t i = 0; i < k; ++i) c[i] = picked[i];
  return c;
}

}  // namespace

GlaResult lloyd_quantize_traced(const ChannelHistogram& hist, const GlaConfig& config) {
  if (config.k < 1) throw Error(Errc::InvalidConfig, "k must be at least 1");
  if (config.max_iters < 1) throw Error(Errc::InvalidConfig, "max_iters must be at least 1");
  if (!(config.tol >= 0.0)) throw Error(Errc::InvalidConfig, "tol must be non-negative");
  if (hist.total() == 0) throw Error(Errc::EmptyInput, "histogram holds no pixels");
  const int distinct = hist.distinct_count();
  if (config.k > ChannelHistogram::kLevels || config.k > distinct)
    throw Error(Errc::KTooLarge,
                "k=" + std::to_string(config.k) + " exceeds " + std::to_string(distinct) + " distinct values");

  std::vector<Mass> data;
  for (int v = 0; v < ChannelHistogram::kLevels; ++v)
    if (hist.count(v) > 0) data.push_back({v, static_cast<double>(hist.count(v))});

  const auto k = static_cast<std::size_t>(config.k);
  std::vector<double> centroids = initial_centroids(data, config);
  std::vector<std::size_t> label(data.size());
  std::vector<double> mass(k);
  std::vector<double> moment(k);

  const auto recompute = [&] {
    std::fill(mass.begin(), mass.end(), 0.0);
    std::fill(moment.begin(), moment.end(), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      mass[label[i]] += data[i].weight;
      moment[label[i]] += data[i].weight * data[i].value;
    }
  };

  GlaResult result;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    for (std::size_t i = 0; i < data.size(); ++i) label[i] = nearest(centroids, data[i].value);
    recompute();

    double movement = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (mass[c] == 0.0) continue;
      const double updated = moment[c] / mass[c];
      movement = std::max(movement, std::abs(updated - centroids[c]));
      centroids[c] = updated;
    }

    // An empty cluster takes over the value farthest from its centroid in the
    // heaviest cluster that still has more than one distinct value.
    for (std::size_t empty = 0; empty < k; ++empty) {
      if (mass[empty] != 0.0) continue;
      std::vector<int> members(k, 0);
      for (auto l : label) ++members[l];
      std::size_t donor = k;
      for (std::size_t c = 0; c < k; ++c)
        if (members[c] > 1 && (donor == k || mass[c] > mass[donor])) donor = c;
      std::size_t far = data.size();
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (label[i] != donor) continue;
        if (far == data.size() ||
            std::abs(data[i].value - centroids[donor]) > std::abs(data[far].value - centroids[donor]))
          far = i;
      }
      label[far] = empty;
      centroids[empty] = data[far].value;
      recompute();
      centroids[donor] = moment[donor] / mass[donor];
      movement = std::numeric_limits<double>::infinity();
    }

    double sse = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double d = data[i].value - centroids[label[i]];
      sse += data[i].weight * d * d;
    }
    result.objective.push_back(sse);
    result.iterations = iter + 1;
    if (movement < config.tol) break;
  }

  recompute();
  const double total = static_cast<double>(hist.total());
  for (std::size_t c = 0; c < k; ++c)
    if (mass[c] > 0.0) result.colors.push_back({centroids[c], 100.0 * mass[c] / total});
  std::sort(result.colors.begin(), result.colors.end(),
            [](const DominantColor& a, const DominantColor& b) { return a.value < b.value; });
  return result;
}

std::vector<DominantColor> lloyd_quantize(const ChannelHistogram& hist, const GlaConfig& config) {
  return lloyd_quantize_traced(hist, config).colors;
}

ComparisonRecord compare_methods(const ChannelHistogram& hist, ChannelId channel,
                                 const ExtractionConfig& extraction, const GlaConfig& gla) {
  using Clock = std::chrono::steady_clock;
  const auto ms = [](Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

  ComparisonRecord record;
  record.binning.channel = channel;
  record.gla.channel = channel;

  const auto t0 = Clock::now();
  record.binning.colors = extract_channel(hist, extraction);
  const auto t1 = Clock::now();
  record.gla.colors = lloyd_quantize(hist, gla);
  const auto t2 = Clock::now();

  record.binning_k = static_cast<int>(record.binning.colors.size());
  record.binning_ms = ms(t1 - t0);
  record.gla_ms = ms(t2 - t1);
  return record;
}

}  // namespace chanbin
