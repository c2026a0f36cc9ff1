#pragma once

#include <cstdint>
#include <span>

#include "chanbin/image.hpp"

namespace chanbin::detail {

RgbImage decode_png(std::span<const std::uint8_t> bytes);
RgbImage decode_jpeg(std::span<const std::uint8_t> bytes);

}  // namespace chanbin::detail
