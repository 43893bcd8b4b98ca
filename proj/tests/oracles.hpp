#pragma once

// Test-only reference implementations and scene generators. Nothing here
// calls the BVH code paths it is used to check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rtk/geometry.hpp"
#include "rtk/intersect.hpp"

namespace rtk::testing {

using Rng = std::mt19937_64;

inline float uniform(Rng& rng, float lo, float hi) {
  return std::uniform_real_distribution<float>(lo, hi)(rng);
}

inline Vec3f random_point(Rng& rng, float lo, float hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

/// Random non-degenerate triangles inside [-1, 1]^3 with edge lengths up to
/// `size`. prim_id is the index, geom_id cycles through `groups`.
inline std::vector<Triangle> random_triangles(Rng& rng, std::size_t n,
                                              float size = 0.2f,
                                              std::uint32_t groups = 1) {
  std::vector<Triangle> tris;
  tris.reserve(n);
  while (tris.size() < n) {
    Vec3f const c = random_point(rng, -1.0f, 1.0f);
    auto tri = make_triangle<float>(c, c + random_point(rng, -size, size),
                                    c + random_point(rng, -size, size),
                                    std::uint32_t(tris.size()),
                                    std::uint32_t(tris.size() % groups));
    if (tri.normal().norm() > 1e-4f) {
      tris.push_back(tri);
    }
  }
  return tris;
}

/// Ray from a random point around the scene towards a random point inside.
inline Ray random_ray(Rng& rng) {
  Vec3f const o = random_point(rng, -2.0f, 2.0f);
  Vec3f const target = random_point(rng, -1.0f, 1.0f);
  Vec3f d = target - o;
  if (d.squaredNorm() < 1e-6f) {
    d = Vec3f::UnitX();
  }
  // Unnormalized on purpose.
  return Ray(o, d * uniform(rng, 0.5f, 2.0f));
}

/// Every hit the hook accepts over a plain list, sorted by t. No tmax
/// shrinking, no early exit.
template <typename Hook>
std::vector<HitRecord> brute_force_hits(Ray const& ray,
                                        std::vector<Triangle> const& tris,
                                        Hook&& hook) {
  std::vector<HitRecord> hits;
  for (auto const& tri : tris) {
    auto const hr = hook(ray, tri);
    if (hr.hit) {
      hits.push_back(hr);
    }
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](auto const& a, auto const& b) { return a.t < b.t; });
  return hits;
}

inline std::vector<HitRecord> brute_force_hits(Ray const& ray,
                                               std::vector<Triangle> const& tris) {
  return brute_force_hits(ray, tris, [](Ray const& r, Triangle const& t) {
    return intersect(r, t);
  });
}

/// Geometric ray/triangle reference in double precision: plane intersection
/// through the normal, then three half-plane inside tests. Returns the plane
/// parameter t and the smallest signed distance from the plane point to an
/// edge (negative outside), or nothing for rays parallel to the plane.
struct GeometricHit {
  double t;
  double edge_margin;
};

inline std::optional<GeometricHit> geometric_intersect(Ray const& ray,
                                                       Triangle const& tri) {
  Vec3<double> const o = ray.origin.cast<double>();
  Vec3<double> const d = ray.direction.cast<double>();
  Vec3<double> const a = tri.v0.cast<double>();
  Vec3<double> const b = a + tri.e1.cast<double>();
  Vec3<double> const c = a + tri.e2.cast<double>();
  Vec3<double> const n = (b - a).cross(c - a);

  double const denom = n.dot(d);
  if (denom == 0.0) {
    return std::nullopt;
  }
  double const t = n.dot(a - o) / denom;
  Vec3<double> const p = o + t * d;

  double const area2 = n.norm();
  auto edge_distance = [&](Vec3<double> const& from, Vec3<double> const& to) {
    return (to - from).cross(p - from).dot(n) / area2 / (to - from).norm();
  };
  double const margin = std::min({edge_distance(a, b), edge_distance(b, c),
                                  edge_distance(c, a)});
  return GeometricHit{t, margin};
}

inline bool geometric_inside(Ray const& ray, GeometricHit const& g) {
  return g.edge_margin >= 0.0 && g.t >= ray.tmin && g.t <= ray.tmax;
}

/// Field-for-field equality with floats compared bit for bit.
inline bool identical(HitRecord const& a, HitRecord const& b) {
  return a.hit == b.hit && a.prim_id == b.prim_id && a.geom_id == b.geom_id &&
         std::bit_cast<std::uint32_t>(a.t) == std::bit_cast<std::uint32_t>(b.t) &&
         std::bit_cast<std::uint32_t>(a.u) == std::bit_cast<std::uint32_t>(b.u) &&
         std::bit_cast<std::uint32_t>(a.v) == std::bit_cast<std::uint32_t>(b.v);
}

/// Axis-aligned quad (two triangles) at depth z spanning [x0,x1] x [y0,y1].
inline std::vector<Triangle> quad_z(float z, float x0, float x1, float y0,
                                    float y1, std::uint32_t first_id,
                                    std::uint32_t geom_id = 0) {
  Vec3f const p0(x0, y0, z), p1(x1, y0, z), p2(x1, y1, z), p3(x0, y1, z);
  return {make_triangle(p0, p1, p2, first_id, geom_id),
          make_triangle(p0, p2, p3, first_id + 1, geom_id)};
}

}  // namespace rtk::testing
