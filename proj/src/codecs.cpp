#include "codecs.hpp"

#include <csetjmp>
#include <cstdio>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "chanbin/error.hpp"

namespace chanbin::detail {

RgbImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
    const std::string message = png.message;
    png_image_free(&png);
    throw Error(Errc::CorruptData, "png: " + message);
  }
  // Read with alpha and drop it afterwards rather than compositing.
  png.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, rgba.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw Error(Errc::CorruptData, "png: " + message);
  }
  std::vector<Rgb> pixels(static_cast<std::size_t>(png.width) * png.height);
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = {rgba[4 * i], rgba[4 * i + 1], rgba[4 * i + 2]};
  return RgbImage(png.width, png.height, std::move(pixels));
}

namespace {

struct JpegError {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

[[noreturn]] void on_jpeg_error(j_common_ptr info) {
  auto* err = reinterpret_cast<JpegError*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

void on_jpeg_warning(j_common_ptr, int) {}

}  // namespace

namespace {

struct JpegRaster {
  std::vector<std::uint8_t> rgb;
  JDIMENSION width = 0;
  JDIMENSION height = 0;
};

// No object with a destructor is local to this frame, so longjmp back into
// it is well defined. Returns false with err.message filled on failure.
bool read_jpeg(std::span<const std::uint8_t> bytes, JpegError& err, JpegRaster* out) {
  jpeg_decompress_struct info{};
  info.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = on_jpeg_error;
  err.mgr.emit_message = on_jpeg_warning;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&info);
    return false;
  }
  jpeg_create_decompress(&info);
  jpeg_mem_src(&info, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&info, TRUE);
  info.out_color_space = JCS_RGB;
  jpeg_start_decompress(&info);
  out->width = info.output_width;
  out->height = info.output_height;
  out->rgb.resize(static_cast<std::size_t>(out->width) * out->height * 3);
  while (info.output_scanline < out->height) {
    JSAMPROW row = out->rgb.data() + static_cast<std::size_t>(info.output_scanline) * out->width * 3;
    jpeg_read_scanlines(&info, &row, 1);
  }
  jpeg_finish_decompress(&info);
  jpeg_destroy_decompress(&info);
  return true;
}

}  // namespace

RgbImage decode_jpeg(std::span<const std::uint8_t> bytes) {
  JpegError err{};
  JpegRaster raster;
  if (!read_jpeg(bytes, err, &raster)) throw Error(Errc::CorruptData, std::string("jpeg: ") + err.message);
  std::vector<Rgb> pixels(static_cast<std::size_t>(raster.width) * raster.height);
  for (std::size_t i = 0; i < pixels.size(); ++i)
    pixels[i] = {raster.rgb[3 * i], raster.rgb[3 * i + 1], raster.rgb[3 * i + 2]};
  return RgbImage(raster.width, raster.height, std::move(pixels));
}

}  // namespace chanbin::detail
