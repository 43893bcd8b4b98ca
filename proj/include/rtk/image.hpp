#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rtk/texture.hpp"

namespace rtk {

/// Interleaved 8-bit image, rows top to bottom. `channels` is 1 to 4
/// (gray, gray+alpha, RGB, RGBA).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c);

  std::uint8_t* pixel(int x, int y) {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }
  std::uint8_t const* pixel(int x, int y) const {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }

  bool operator==(Image const&) const = default;
};

/// Reads binary PPM (P6) or PAM (P7), 8 bits per channel.
Image read_pnm(std::istream& in);
Image read_pnm(std::filesystem::path const& path);

/// Binary PPM: "P6\n<w> <h>\n255\n" followed by RGB triples. Alpha is dropped,
/// gray is replicated.
void write_ppm(Image const& image, std::ostream& out);
void write_ppm(Image const& image, std::filesystem::path const& path);

/// Binary PAM with the tuple type matching the channel count.
void write_pam(Image const& image, std::ostream& out);
void write_pam(Image const& image, std::filesystem::path const& path);

/// Scales channels by 1/255. Missing alpha becomes 1, gray fills RGB.
Texture2D texture_from_image(Image const& image);

/// read_pnm + texture_from_image.
Texture2D load_image(std::filesystem::path const& path);

}  // namespace rtk
