#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rtk {

template <typename T>
using Vec2 = Eigen::Matrix<T, 2, 1>;
template <typename T>
using Vec3 = Eigen::Matrix<T, 3, 1>;
template <typename T>
using Vec4 = Eigen::Matrix<T, 4, 1>;

using Vec2f = Vec2<float>;
using Vec3f = Vec3<float>;
using Vec4f = Vec4<float>;

// ---------------------------------------------------------------------------
// Ray
// ---------------------------------------------------------------------------

/// Ray with parametric interval [tmin, tmax]. The direction need not be
/// normalized; t is measured in units of the direction vector.
template <typename T>
struct BasicRay {
  using scalar_type = T;

  static constexpr T default_tmin = T(1e-4);

  Vec3<T> origin = Vec3<T>::Zero();
  Vec3<T> direction = Vec3<T>::UnitZ();
  T tmin = default_tmin;
  T tmax = std::numeric_limits<T>::infinity();

  BasicRay() = default;
  BasicRay(Vec3<T> const& o, Vec3<T> const& d, T t0 = default_tmin,
           T t1 = std::numeric_limits<T>::infinity())
      : origin(o), direction(d), tmin(t0), tmax(t1) {}

  Vec3<T> point_at(T t) const { return origin + t * direction; }
};

using Ray = BasicRay<float>;

template <typename T>
bool is_valid(BasicRay<T> const& ray) {
  return ray.origin.allFinite() && ray.direction.allFinite() &&
         ray.direction.squaredNorm() > T(0) && ray.tmin < ray.tmax;
}

/// Componentwise reciprocal of the ray direction. Zero components map to
/// signed infinities, which the slab test handles.
template <typename T>
Vec3<T> inverse_direction(BasicRay<T> const& ray) {
  return ray.direction.cwiseInverse();
}

// ---------------------------------------------------------------------------
// Axis-aligned bounding box
// ---------------------------------------------------------------------------

template <typename T>
struct BasicAabb {
  using scalar_type = T;

  Vec3<T> min = Vec3<T>::Constant(std::numeric_limits<T>::infinity());
  Vec3<T> max = Vec3<T>::Constant(-std::numeric_limits<T>::infinity());

  BasicAabb() = default;
  BasicAabb(Vec3<T> const& lo, Vec3<T> const& hi) : min(lo), max(hi) {}

  static BasicAabb empty() { return {}; }

  bool is_empty() const { return (min.array() > max.array()).any(); }
  Vec3<T> extent() const { return max - min; }
  Vec3<T> center() const { return T(0.5) * (min + max); }

  bool operator==(BasicAabb const&) const = default;
};

using Aabb = BasicAabb<float>;

template <typename T>
BasicAabb<T> aabb_union(BasicAabb<T> const& a, BasicAabb<T> const& b) {
  return {a.min.cwiseMin(b.min), a.max.cwiseMax(b.max)};
}

template <typename T>
BasicAabb<T> aabb_grow(BasicAabb<T> const& a, Vec3<T> const& p) {
  return {a.min.cwiseMin(p), a.max.cwiseMax(p)};
}

/// Surface area 2(wh + wd + hd); zero for the empty box.
template <typename T>
T aabb_surface_area(BasicAabb<T> const& a) {
  if (a.is_empty()) {
    return T(0);
  }
  Vec3<T> const e = a.extent();
  return T(2) * (e.x() * e.y() + e.x() * e.z() + e.y() * e.z());
}

template <typename T>
bool contains(BasicAabb<T> const& a, Vec3<T> const& p, T slack = T(0)) {
  return (p.array() >= a.min.array() - slack).all() &&
         (p.array() <= a.max.array() + slack).all();
}

template <typename T>
bool contains(BasicAabb<T> const& outer, BasicAabb<T> const& inner,
              T slack = T(0)) {
  if (inner.is_empty()) {
    return true;
  }
  return contains(outer, inner.min, slack) && contains(outer, inner.max, slack);
}

// ---------------------------------------------------------------------------
// Triangle
// ---------------------------------------------------------------------------

/// Triangle stored as one vertex plus two edges so the intersection kernel
/// needs no subtractions.
template <typename T>
struct BasicTriangle {
  using scalar_type = T;

  Vec3<T> v0 = Vec3<T>::Zero();
  Vec3<T> e1 = Vec3<T>::Zero();  // v1 - v0
  Vec3<T> e2 = Vec3<T>::Zero();  // v2 - v0
  std::uint32_t prim_id = 0;
  std::uint32_t geom_id = 0;

  Vec3<T> v1() const { return v0 + e1; }
  Vec3<T> v2() const { return v0 + e2; }
  Vec3<T> normal() const { return e1.cross(e2); }
};

using Triangle = BasicTriangle<float>;

template <typename T>
BasicTriangle<T> make_triangle(Vec3<T> const& v0, Vec3<T> const& v1,
                               Vec3<T> const& v2, std::uint32_t prim_id = 0,
                               std::uint32_t geom_id = 0) {
  return {v0, v1 - v0, v2 - v0, prim_id, geom_id};
}

template <typename T>
bool is_degenerate(BasicTriangle<T> const& tri) {
  return !(tri.normal().squaredNorm() > T(0)) || !tri.v0.allFinite() ||
         !tri.e1.allFinite() || !tri.e2.allFinite();
}

template <typename T>
BasicAabb<T> triangle_bounds(BasicTriangle<T> const& tri) {
  BasicAabb<T> box(tri.v0, tri.v0);
  box = aabb_grow(box, tri.v1());
  return aabb_grow(box, tri.v2());
}

/// Bounds customization point used by the BVH builder.
template <typename T>
BasicAabb<T> get_bounds(BasicTriangle<T> const& tri) {
  return triangle_bounds(tri);
}

// ---------------------------------------------------------------------------
// Hit records
// ---------------------------------------------------------------------------

/// Result of a ray/primitive test. When `hit` is false the remaining fields
/// carry no meaning.
template <typename T>
struct BasicHitRecord {
  using scalar_type = T;

  bool hit = false;
  T t = std::numeric_limits<T>::infinity();
  std::uint32_t prim_id = 0;
  std::uint32_t geom_id = 0;
  T u = T(0);
  T v = T(0);

  bool operator==(BasicHitRecord const&) const = default;
};

using HitRecord = BasicHitRecord<float>;

/// Result of a ray/box slab test.
template <typename T>
struct BasicBoxHit {
  bool hit = false;
  T tnear = T(0);
  T tfar = T(0);

  bool operator==(BasicBoxHit const&) const = default;
};

using BoxHit = BasicBoxHit<float>;

/// (1 - u - v) a + u b + v c.
template <typename Derived>
auto barycentric_lerp(Eigen::MatrixBase<Derived> const& a,
                      Eigen::MatrixBase<Derived> const& b,
                      Eigen::MatrixBase<Derived> const& c,
                      typename Derived::Scalar u, typename Derived::Scalar v)
    -> typename Derived::PlainObject {
  using S = typename Derived::Scalar;
  return (S(1) - u - v) * a + u * b + v * c;
}

}  // namespace rtk
