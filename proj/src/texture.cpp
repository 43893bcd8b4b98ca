#include "rtk/texture.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rtk/error.hpp"

namespace rtk {

namespace {

int wrap_index(int i, int n) {
  int const r = i % n;
  return r < 0 ? r + n : r;
}

int resolve_index(int i, int n, AddressMode mode) {
  return mode == AddressMode::wrap ? wrap_index(i, n) : std::clamp(i, 0, n - 1);
}

float resolve_coord(float c, AddressMode mode) {
  if (mode == AddressMode::wrap) {
    return c - std::floor(c);
  }
  return std::clamp(c, 0.0f, 1.0f);
}

}  // namespace

Texture2D::Texture2D(int w, int h, std::vector<Vec4f> data)
    : width(w), height(h), texels(std::move(data)) {
  if (w <= 0 || h <= 0) {
    throw Error("texture dimensions must be positive");
  }
  if (texels.size() != static_cast<std::size_t>(w) * h) {
    throw Error("texture has " + std::to_string(texels.size()) +
                " texels, expected " + std::to_string(w * h));
  }
}

Texture2D::Texture2D(int w, int h, Vec4f const& fill)
    : Texture2D(w, h, std::vector<Vec4f>(static_cast<std::size_t>(w) * h, fill)) {}

Texture2D Texture2D::opaque_white() { return Texture2D(1, 1, Vec4f::Ones()); }

Vec4f tex2d(Texture2D const& tex, Vec2f const& coord) {
  float const s = resolve_coord(coord.x(), tex.address_mode);
  float const t = resolve_coord(coord.y(), tex.address_mode);

  if (tex.filter == FilterMode::nearest) {
    int const i = resolve_index(static_cast<int>(std::floor(s * tex.width)),
                                tex.width, tex.address_mode);
    int const j = resolve_index(static_cast<int>(std::floor(t * tex.height)),
                                tex.height, tex.address_mode);
    return tex.texel(i, j);
  }

  float const x = s * tex.width - 0.5f;
  float const y = t * tex.height - 0.5f;
  float const x0 = std::floor(x);
  float const y0 = std::floor(y);
  float const fx = x - x0;
  float const fy = y - y0;

  int const i0 = resolve_index(static_cast<int>(x0), tex.width, tex.address_mode);
  int const i1 = resolve_index(static_cast<int>(x0) + 1, tex.width, tex.address_mode);
  int const j0 = resolve_index(static_cast<int>(y0), tex.height, tex.address_mode);
  int const j1 = resolve_index(static_cast<int>(y0) + 1, tex.height, tex.address_mode);

  // a + f (b - a) keeps constant neighborhoods exact.
  auto lerp = [](Vec4f const& a, Vec4f const& b, float f) -> Vec4f {
    return a + f * (b - a);
  };
  Vec4f const top = lerp(tex.texel(i0, j0), tex.texel(i1, j0), fx);
  Vec4f const bottom = lerp(tex.texel(i0, j1), tex.texel(i1, j1), fx);
  return lerp(top, bottom, fy);
}

}  // namespace rtk
