#pragma once

#include <cmath>
#include <limits>

#include "rtk/geometry.hpp"

namespace rtk {

/// Parallel-ray rejection threshold for the triangle kernel.
inline constexpr double determinant_epsilon = 1e-12;

/// Edge-cross (Moeller-Trumbore) ray/triangle test without backface culling.
///
/// Hits are accepted for t in [ray.tmin, ray.tmax] and barycentrics with
/// u >= 0, v >= 0, u + v <= 1. Edge-grazing rays may report either result.
template <typename T>
BasicHitRecord<T> intersect(BasicRay<T> const& ray,
                            BasicTriangle<T> const& tri) {
  BasicHitRecord<T> hr;

  Vec3<T> const p = ray.direction.cross(tri.e2);
  T const det = tri.e1.dot(p);
  if (std::abs(det) < T(determinant_epsilon)) {
    return hr;
  }
  T const inv_det = T(1) / det;

  Vec3<T> const s = ray.origin - tri.v0;
  T const u = s.dot(p) * inv_det;
  if (u < T(0) || u > T(1)) {
    return hr;
  }

  Vec3<T> const q = s.cross(tri.e1);
  T const v = ray.direction.dot(q) * inv_det;
  if (v < T(0) || u + v > T(1)) {
    return hr;
  }

  T const t = tri.e2.dot(q) * inv_det;
  if (!(t >= ray.tmin && t <= ray.tmax)) {
    return hr;
  }

  hr.hit = true;
  hr.t = t;
  hr.u = u;
  hr.v = v;
  hr.prim_id = tri.prim_id;
  hr.geom_id = tri.geom_id;
  return hr;
}

/// Slab test against an axis-aligned box. The caller passes the precomputed
/// reciprocal direction.
///
/// tnear/tfar are the unclipped entry and exit parameters; `hit` is decided
/// after clipping to [ray.tmin, ray.tmax]. A slab bound that evaluates to NaN
/// (0 * inf: origin on a slab plane, direction parallel to it) leaves that
/// slab unbounded, so rays running along a box face count as inside.
template <typename T>
BasicBoxHit<T> intersect(BasicRay<T> const& ray, BasicAabb<T> const& box,
                         Vec3<T> const& inv_dir) {
  constexpr T inf = std::numeric_limits<T>::infinity();

  T tnear = -inf;
  T tfar = inf;
  for (int k = 0; k < 3; ++k) {
    T const t1 = (box.min[k] - ray.origin[k]) * inv_dir[k];
    T const t2 = (box.max[k] - ray.origin[k]) * inv_dir[k];
    if (std::isnan(t1) || std::isnan(t2)) {
      continue;
    }
    tnear = std::max(tnear, std::min(t1, t2));
    tfar = std::min(tfar, std::max(t1, t2));
  }

  BasicBoxHit<T> bh;
  bh.tnear = tnear;
  bh.tfar = tfar;
  bh.hit = std::max(tnear, ray.tmin) <= std::min(tfar, ray.tmax);
  return bh;
}

}  // namespace rtk
