#include "chanbin/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "chanbin/error.hpp"

namespace chanbin {

double pair_distance(const DominantColor& estimated, const DominantColor& actual) noexcept {
  return std::hypot(estimated.value - actual.value, estimated.percent - actual.percent);
}

std::vector<std::pair<std::size_t, std::size_t>> match_pairs(std::span<const DominantColor> estimated,
                                                             std::span<const DominantColor> actual) {
  if (estimated.empty() || actual.empty()) throw Error(Errc::EmptyInput, "cannot match an empty list");
  if (estimated.size() > kMaxMatchColors || actual.size() > kMaxMatchColors)
    throw Error(Errc::TooManyColors, "at most " + std::to_string(kMaxMatchColors) + " colours per list");

  // Assign every entry of the shorter list ("rows") to a distinct entry of the longer.
  const bool transposed = estimated.size() > actual.size();
  const auto rows = transposed ? actual : estimated;
  const auto cols = transposed ? estimated : actual;
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = cols.size();

  // best[mask]: least cost of assigning rows popcount(mask).. given used columns mask.
  const std::size_t n_masks = std::size_t{1} << n_cols;
  std::vector<double> best(n_masks, std::numeric_limits<double>::infinity());
  for (std::size_t mask = n_masks; mask-- > 0;) {
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    if (row > n_rows) continue;
    if (row == n_rows) {
      best[mask] = 0.0;
      continue;
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      best[mask] = std::min(best[mask], pair_distance(rows[row], cols[j]) + best[mask | (std::size_t{1} << j)]);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t mask = 0;
  for (std::size_t row = 0; row < n_rows; ++row) {
    const double target = best[mask];
    const double slack = 1e-12 * std::max(1.0, target);
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << j);
      if (pair_distance(rows[row], cols[j]) + best[next] <= target + slack) {
        pairs.emplace_back(transposed ? j : row, transposed ? row : j);
        mask = next;
        break;
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

ChannelError channel_error(const ChannelReport& estimated, const ChannelReport& actual) {
  if (estimated.channel != actual.channel)
    throw Error(Errc::ChannelMismatch, std::string(channel_name(estimated.channel)) + " vs " +
                                           std::string(channel_name(actual.channel)));
  ChannelError out;
  out.channel = estimated.channel;
  out.matched_pairs = match_pairs(estimated.colors, actual.colors);
  double sum = 0.0;
  for (auto [e, a] : out.matched_pairs) sum += pair_distance(estimated.colors[e], actual.colors[a]);
  out.epsilon = sum / static_cast<double>(out.matched_pairs.size());
  out.unmatched_estimated = estimated.colors.size() - out.matched_pairs.size();
  out.unmatched_actual = actual.colors.size() - out.matched_pairs.size();
  return out;
}

double epsilon(const ChannelReport& estimated, const ChannelReport& actual) {
  return channel_error(estimated, actual).epsilon;
}

namespace {

const ChannelReport& find_channel(std::span<const ChannelReport> reports, ChannelId id, const char* side) {
  const ChannelReport* found = nullptr;
  for (const auto& r : reports) {
    if (r.channel != id) continue;
    if (found)
      throw Error(Errc::MissingChannel, std::string(side) + " lists " + std::string(channel_name(id)) + " twice");
    found = &r;
  }
  if (!found) throw Error(Errc::MissingChannel, std::string(side) + " lacks " + std::string(channel_name(id)));
  return *found;
}

}  // namespace

ErrorReport image_epsilon(std::span<const ChannelReport> estimated, std::span<const ChannelReport> actual) {
  ErrorReport report;
  double sum = 0.0;
  for (ChannelId id : kChannels) {
    auto& ch = report.per_channel[static_cast<std::size_t>(id)];
    ch = channel_error(find_channel(estimated, id, "estimated"), find_channel(actual, id, "actual"));
    sum += ch.epsilon;
  }
  report.image_epsilon = sum / 3.0;
  return report;
}

}  // namespace chanbin
