#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chanbin/report.hpp"

namespace chanbin {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB raster. Width and height are positive for any image
/// produced by this library.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(std::size_t width, std::size_t height, Rgb fill = {});
  RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  Rgb& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  std::span<Rgb> pixels() noexcept { return pixels_; }
  std::span<const Rgb> pixels() const noexcept { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Rgb> pixels_;
};

struct Stripe {
  Rgb color;
  double fraction = 0.0;
};

/// A hand-constructed test image: known colours with known area fractions.
struct CompositionSpec {
  std::vector<Stripe> stripes;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

enum class ImageFormat { Ppm, Png, Jpeg, Auto };

RgbImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat hint = ImageFormat::Auto);

/// Binary P6, "P6\n<w> <h>\n255\n" followed by raw RGB triples.
std::vector<std::uint8_t> write_ppm(const RgbImage& image);

/// Throws Errc::InvalidSpec when the stripes are empty, fractions do not sum
/// to one within 1e-9, or any field is out of range.
void validate(const CompositionSpec& spec);

/// Column count per stripe by the largest-remainder rule; sums to width.
std::vector<std::size_t> stripe_columns(const CompositionSpec& spec, std::size_t width);

/// Vertical stripes left to right, optionally with seeded per-component
/// Gaussian noise (rounded half up, clamped). Deterministic in all inputs.
RgbImage generate_stripes(const CompositionSpec& spec, std::size_t width, std::size_t height);

/// Per-channel composition actually realised by generate_stripes with zero
/// noise: equal channel values across stripes are pooled, percent is
/// column share. This is the ground truth the extractor is scored against.
std::array<ChannelReport, 3> realised_composition(const CompositionSpec& spec, std::size_t width);

/// One band per report, each dominant value drawn as a block of that value in
/// its own channel, block widths proportional to percent.
RgbImage render_swatch(std::span<const ChannelReport> report, std::size_t bar_height,
                       std::size_t width = 256);

}  // namespace chanbin
