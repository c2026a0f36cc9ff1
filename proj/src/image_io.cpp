#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "apportion.hpp"
#include "chanbin/error.hpp"
#include "chanbin/image.hpp"
#include "codecs.hpp"

namespace chanbin {

RgbImage::RgbImage(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height), pixels_(width * height, fill) {}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width * height)
    throw Error(Errc::CorruptData, "pixel buffer holds " + std::to_string(pixels_.size()) +
                                       " pixels, expected " + std::to_string(width * height));
}

namespace {

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  RgbImage read() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || (bytes_[1] != '6' && bytes_[1] != '5'))
      throw Error(Errc::UnsupportedFormat, "not a binary PNM (expected P6 or P5) at offset 0");
    const bool gray = bytes_[1] == '5';
    pos_ = 2;
    const std::size_t width = header_number("width");
    const std::size_t height = header_number("height");
    const std::size_t maxval = header_number("maxval");
    if (width == 0 || height == 0) throw Error(Errc::CorruptData, "zero image dimension in header");
    if (maxval == 0 || maxval > 255)
      throw Error(Errc::UnsupportedFormat, "maxval " + std::to_string(maxval) + " is not 8-bit");
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw Error(Errc::CorruptData, "missing whitespace after maxval at offset " + std::to_string(pos_));
    ++pos_;

    const std::size_t channels = gray ? 1 : 3;
    const std::size_t need = width * height * channels;
    if (bytes_.size() - pos_ < need)
      throw Error(Errc::CorruptData, "payload truncated at offset " + std::to_string(bytes_.size()) + ", expected " +
                                         std::to_string(pos_ + need) + " bytes");

    const auto scale = [maxval](std::uint8_t v) -> std::uint8_t {
      if (v > maxval) throw Error(Errc::CorruptData, "sample exceeds maxval");
      return static_cast<std::uint8_t>((v * 255u + maxval / 2) / maxval);
    };
    std::vector<Rgb> pixels(width * height);
    const std::uint8_t* p = bytes_.data() + pos_;
    for (auto& px : pixels) {
      if (gray) {
        const auto g = scale(*p++);
        px = {g, g, g};
      } else {
        px.r = scale(p[0]);
        px.g = scale(p[1]);
        px.b = scale(p[2]);
        p += 3;
      }
    }
    return RgbImage(width, height, std::move(pixels));
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t header_number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (std::size_t{1} << 30)) throw Error(Errc::CorruptData, std::string(what) + " too large");
      ++pos_;
    }
    if (pos_ == start)
      throw Error(Errc::CorruptData, std::string("expected ") + what + " at offset " + std::to_string(start));
    return value;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

ImageFormat sniff(std::span<const std::uint8_t> b) {
  if (b.size() >= 2 && b[0] == 'P' && (b[1] == '6' || b[1] == '5')) return ImageFormat::Ppm;
  if (b.size() >= 8 && b[0] == 0x89 && b[1] == 'P' && b[2] == 'N' && b[3] == 'G') return ImageFormat::Png;
  if (b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF) return ImageFormat::Jpeg;
  throw Error(Errc::UnsupportedFormat, "unrecognised signature at offset 0");
}

std::uint8_t to_level(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

// Box-Muller over mt19937_64: unlike std::normal_distribution the sequence is
// the same on every standard library, which golden fixtures rely on.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * kScale;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * kScale;          // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

RgbImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat hint) {
  if (bytes.empty()) throw Error(Errc::CorruptData, "empty input at offset 0");
  const ImageFormat format = hint == ImageFormat::Auto ? sniff(bytes) : hint;
  switch (format) {
    case ImageFormat::Ppm: return PnmReader(bytes).read();
    case ImageFormat::Png: return detail::decode_png(bytes);
    case ImageFormat::Jpeg: return detail::decode_jpeg(bytes);
    case ImageFormat::Auto: break;
  }
  throw Error(Errc::UnsupportedFormat, "no decoder");
}

std::vector<std::uint8_t> write_ppm(const RgbImage& image) {
  const std::string header = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + 3 * image.pixel_count());
  for (const Rgb& p : image.pixels()) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

void validate(const CompositionSpec& spec) {
  if (spec.stripes.empty()) throw Error(Errc::InvalidSpec, "at least one stripe is required");
  double sum = 0.0;
  for (const auto& s : spec.stripes) {
    if (!(s.fraction > 0.0 && s.fraction <= 1.0))
      throw Error(Errc::InvalidSpec, "stripe fraction " + std::to_string(s.fraction) + " outside (0,1]");
    sum += s.fraction;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::InvalidSpec, "fractions sum to " + std::to_string(sum));
  if (!std::isfinite(spec.noise_sigma) || spec.noise_sigma < 0.0)
    throw Error(Errc::InvalidSpec, "noise_sigma must be finite and non-negative");
}

std::vector<std::size_t> stripe_columns(const CompositionSpec& spec, std::size_t width) {
  validate(spec);
  std::vector<double> fractions;
  for (const auto& s : spec.stripes) fractions.push_back(s.fraction);
  return detail::apportion(fractions, width);
}

RgbImage generate_stripes(const CompositionSpec& spec, std::size_t width, std::size_t height) {
  validate(spec);
  if (width == 0 || height == 0) throw Error(Errc::InvalidSpec, "image dimensions must be positive");
  if (width * height < spec.stripes.size())
    throw Error(Errc::InvalidSpec, "image smaller than the number of stripes");

  const auto columns = stripe_columns(spec, width);
  std::vector<Rgb> row;
  row.reserve(width);
  for (std::size_t s = 0; s < columns.size(); ++s) row.insert(row.end(), columns[s], spec.stripes[s].color);

  RgbImage image(width, height);
  for (std::size_t y = 0; y < height; ++y)
    std::copy(row.begin(), row.end(), image.pixels().begin() + static_cast<std::ptrdiff_t>(y * width));

  if (spec.noise_sigma > 0.0) {
    GaussianSource noise(spec.seed);
    const double sigma = spec.noise_sigma;
    for (Rgb& p : image.pixels()) {
      p.r = to_level(p.r + sigma * noise.next());
      p.g = to_level(p.g + sigma * noise.next());
      p.b = to_level(p.b + sigma * noise.next());
    }
  }
  return image;
}

std::array<ChannelReport, 3> realised_composition(const CompositionSpec& spec, std::size_t width) {
  if (width == 0) throw Error(Errc::InvalidSpec, "width must be positive");
  const auto columns = stripe_columns(spec, width);
  std::array<ChannelReport, 3> out;
  for (ChannelId id : kChannels) {
    std::map<int, std::size_t> pooled;
    for (std::size_t s = 0; s < columns.size(); ++s) {
      if (columns[s] == 0) continue;
      const Rgb& c = spec.stripes[s].color;
      const int v = id == ChannelId::Red ? c.r : id == ChannelId::Green ? c.g : c.b;
      pooled[v] += columns[s];
    }
    auto& report = out[static_cast<std::size_t>(id)];
    report.channel = id;
    for (auto [v, n] : pooled)
      report.colors.push_back({static_cast<double>(v), 100.0 * static_cast<double>(n) / static_cast<double>(width)});
  }
  return out;
}

RgbImage render_swatch(std::span<const ChannelReport> report, std::size_t bar_height, std::size_t width) {
  if (report.empty()) throw Error(Errc::EmptyReport, "no channels to draw");
  if (bar_height == 0 || width == 0) throw Error(Errc::InvalidConfig, "swatch dimensions must be positive");

  RgbImage image(width, bar_height * report.size());
  for (std::size_t band = 0; band < report.size(); ++band) {
    const auto& colors = report[band].colors;
    if (colors.empty())
      throw Error(Errc::EmptyReport, std::string(channel_name(report[band].channel)) + " has no colours");
    std::vector<double> weights;
    for (const auto& c : colors) weights.push_back(c.percent);
    const auto widths = detail::apportion(weights, width);

    std::size_t x0 = 0;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      const std::uint8_t level = to_level(colors[i].value);
      Rgb px;
      switch (report[band].channel) {
        case ChannelId::Red: px.r = level; break;
        case ChannelId::Green: px.g = level; break;
        case ChannelId::Blue: px.b = level; break;
      }
      for (std::size_t y = band * bar_height; y < (band + 1) * bar_height; ++y)
        for (std::size_t x = x0; x < x0 + widths[i]; ++x) image.at(x, y) = px;
      x0 += widths[i];
    }
  }
  return image;
}

}  // namespace chanbin
