#include "chanbin/channel.hpp"

#include <string>

#include "chanbin/error.hpp"
#include "chanbin/image.hpp"

namespace chanbin {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::CorruptData: return "CorruptData";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::EmptyReport: return "EmptyReport";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::EmptyWorkingSet: return "EmptyWorkingSet";
    case Errc::NonPositiveRho: return "NonPositiveRho";
    case Errc::RecursionLimitExceeded: return "RecursionLimitExceeded";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::TooManyColors: return "TooManyColors";
    case Errc::ChannelMismatch: return "ChannelMismatch";
    case Errc::MissingChannel: return "MissingChannel";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::SchemaMismatch: return "SchemaMismatch";
  }
  return "Unknown";
}

std::string_view channel_name(ChannelId id) noexcept {
  switch (id) {
    case ChannelId::Red: return "red";
    case ChannelId::Green: return "green";
    case ChannelId::Blue: return "blue";
  }
  return "unknown";
}

int ChannelHistogram::distinct_count() const noexcept {
  int n = 0;
  for (auto c : counts_) n += c > 0;
  return n;
}

int ChannelHistogram::min_value() const noexcept {
  for (int v = 0; v < kLevels; ++v)
    if (counts_[v] > 0) return v;
  return 0;
}

int ChannelHistogram::max_value() const noexcept {
  for (int v = kLevels - 1; v >= 0; --v)
    if (counts_[v] > 0) return v;
  return 0;
}

std::array<ChannelHistogram, 3> split_channels(const RgbImage& image) {
  std::array<ChannelHistogram, 3> out;
  for (const Rgb& p : image.pixels()) {
    out[0].add(p.r);
    out[1].add(p.g);
    out[2].add(p.b);
  }
  return out;
}

ChannelHistogram histogram_from_values(std::span<const int> values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "no pixel values");
  ChannelHistogram hist;
  for (int v : values) {
    if (v < 0 || v >= ChannelHistogram::kLevels)
      throw Error(Errc::OutOfRange, "pixel value " + std::to_string(v) + " outside [0,255]");
    hist.add(static_cast<std::uint8_t>(v));
  }
  return hist;
}

std::vector<int> sorted_values(const ChannelHistogram& hist, ValueMode mode) {
  std::vector<int> out;
  out.reserve(mode == ValueMode::Distinct ? ChannelHistogram::kLevels : hist.total());
  for (int v = 0; v < ChannelHistogram::kLevels; ++v) {
    const auto n = hist.count(v);
    if (n == 0) continue;
    if (mode == ValueMode::Distinct)
      out.push_back(v);
    else
      out.insert(out.end(), n, v);
  }
  return out;
}

}  // namespace chanbin
