#pragma once

#include <cstddef>
#include <vector>

#include "rtk/geometry.hpp"

namespace rtk {

enum class AddressMode { wrap, clamp };
enum class FilterMode { nearest, bilinear };

/// RGBA texture with channels in [0, 1]. Row 0 is the top of the image and
/// texel (i, j) has its center at ((i + 0.5) / width, (j + 0.5) / height).
struct Texture2D {
  int width = 0;
  int height = 0;
  std::vector<Vec4f> texels;  // row-major
  AddressMode address_mode = AddressMode::wrap;
  FilterMode filter = FilterMode::nearest;

  Texture2D() = default;
  Texture2D(int w, int h, std::vector<Vec4f> data);
  Texture2D(int w, int h, Vec4f const& fill);

  Vec4f const& texel(int i, int j) const {
    return texels[static_cast<std::size_t>(j) * width + i];
  }
  Vec4f& texel(int i, int j) {
    return texels[static_cast<std::size_t>(j) * width + i];
  }

  /// 1x1 opaque white.
  static Texture2D opaque_white();
};

Vec4f tex2d(Texture2D const& tex, Vec2f const& coord);

}  // namespace rtk
