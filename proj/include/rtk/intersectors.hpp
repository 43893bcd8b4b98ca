#pragma once

#include <cmath>
#include <span>
#include <utility>

#include "rtk/geometry.hpp"
#include "rtk/intersect.hpp"
#include "rtk/intersector.hpp"
#include "rtk/texture.hpp"

namespace rtk {

/// Rejects triangle hits whose alpha-mask lookup falls below `threshold`.
///
/// Texture coordinates are stored three per primitive and addressed by
/// prim_id; textures are addressed by geom_id. Box tests use the default
/// kernel. The referenced data must outlive the intersector.
struct AlphaMaskIntersector : BasicIntersector<AlphaMaskIntersector> {
  using BasicIntersector<AlphaMaskIntersector>::operator();

  static constexpr float default_threshold = 0.01f;

  std::span<Texture2D const> textures;
  std::span<Vec2f const> tex_coords;
  float threshold = default_threshold;

  AlphaMaskIntersector() = default;
  AlphaMaskIntersector(std::span<Texture2D const> texs,
                       std::span<Vec2f const> coords,
                       float alpha_threshold = default_threshold)
      : textures(texs), tex_coords(coords), threshold(alpha_threshold) {}

  template <typename T>
  BasicHitRecord<T> operator()(BasicRay<T> const& ray,
                               BasicTriangle<T> const& tri) const {
    auto hr = intersect(ray, tri);
    if (!hr.hit) {
      return hr;
    }

    auto const& tex = textures[hr.geom_id];
    std::size_t const base = std::size_t(hr.prim_id) * 3;
    Vec2f const coord =
        barycentric_lerp(tex_coords[base], tex_coords[base + 1],
                         tex_coords[base + 2], float(hr.u), float(hr.v));
    Vec4f const color = tex2d(tex, coord);

    hr.hit &= color.w() >= threshold;
    return hr;
  }
};

/// Barycentric checkerboard: keeps a hit iff floor(u M) + floor(v M) is even.
struct ProceduralMaskIntersector : BasicIntersector<ProceduralMaskIntersector> {
  using BasicIntersector<ProceduralMaskIntersector>::operator();

  int checker_frequency = 8;

  ProceduralMaskIntersector() = default;
  explicit ProceduralMaskIntersector(int frequency)
      : checker_frequency(frequency) {}

  template <typename T>
  static bool keep(T u, T v, int frequency) {
    auto const m = T(frequency);
    auto const cu = static_cast<long long>(std::floor(u * m));
    auto const cv = static_cast<long long>(std::floor(v * m));
    return ((cu + cv) & 1) == 0;
  }

  template <typename T>
  BasicHitRecord<T> operator()(BasicRay<T> const& ray,
                               BasicTriangle<T> const& tri) const {
    auto hr = intersect(ray, tri);
    if (hr.hit) {
      hr.hit = keep(hr.u, hr.v, checker_frequency);
    }
    return hr;
  }
};

/// Counts ray/box and ray/triangle tests. Results are those of the default
/// kernels. The box hook forwards any trailing arguments (the reciprocal
/// direction) untouched.
struct CostCountingIntersector : BasicIntersector<CostCountingIntersector> {
  using BasicIntersector<CostCountingIntersector>::operator();

  template <typename R, typename T, typename... Args>
  auto operator()(R const& ray, BasicAabb<T> const& box, Args&&... args) {
    ++num_boxes;
    return intersect(ray, box, std::forward<Args>(args)...);
  }

  template <typename T>
  BasicHitRecord<T> operator()(BasicRay<T> const& ray,
                               BasicTriangle<T> const& tri) {
    ++num_tris;
    return intersect(ray, tri);
  }

  unsigned num_boxes = 0;
  unsigned num_tris = 0;
};

}  // namespace rtk
