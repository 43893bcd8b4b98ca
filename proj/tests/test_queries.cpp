#include <algorithm>
#include <list>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rtk/intersectors.hpp"
#include "rtk/queries.hpp"

using namespace rtk;

TEST_CASE("linear closest hit picks the nearest primitive") {
  auto tris = testing::quad_z(2.0f, -1, 1, -1, 1, 0);
  auto const near = testing::quad_z(1.0f, -1, 1, -1, 1, 2);
  tris.insert(tris.end(), near.begin(), near.end());
  Ray const ray(Vec3f(0.2f, 0.3f, 0), Vec3f(0, 0, 1));

  auto const hr = closest_hit(ray, tris);
  REQUIRE(hr.hit);
  CHECK(hr.t == 1.0f);
  CHECK(hr.prim_id >= 2);

  // Iterator-pair form, with and without an intersector.
  CHECK(closest_hit(ray, tris.begin(), tris.end()) == hr);
  CHECK(closest_hit(ray, tris.cbegin(), tris.cend(), DefaultIntersector{}) == hr);
  std::list<Triangle> const as_list(tris.begin(), tris.end());
  CHECK(closest_hit(ray, as_list) == hr);
}

TEST_CASE("empty sequences miss") {
  std::vector<Triangle> const none;
  std::vector<Bvh> const no_bvhs;
  Ray const ray(Vec3f(0, 0, 0), Vec3f(0, 0, 1));
  CHECK_FALSE(closest_hit(ray, none).hit);
  CHECK_FALSE(any_hit(ray, none).hit);
  CHECK(multi_hit(ray, none, 4).empty());
  CHECK_FALSE(closest_hit(ray, no_bvhs).hit);
  CHECK_FALSE(any_hit(ray, no_bvhs).hit);
  CHECK(multi_hit(ray, no_bvhs, 4).empty());
}

TEST_CASE("linear any hit returns the first accepted hit in sequence order") {
  auto tris = testing::quad_z(5.0f, -1, 1, -1, 1, 0);
  auto const near = testing::quad_z(1.0f, -1, 1, -1, 1, 2);
  tris.insert(tris.end(), near.begin(), near.end());
  Ray const ray(Vec3f(0.2f, 0.3f, 0), Vec3f(0, 0, 1));
  auto const hr = any_hit(ray, tris);
  REQUIRE(hr.hit);
  CHECK(hr.t == 5.0f);
}

TEST_CASE("any hit on an all-transparent alpha scene misses") {
  testing::Rng rng(1);
  auto const tris = testing::random_triangles(rng, 300, 0.3f);
  std::vector<Vec2f> coords(tris.size() * 3, Vec2f(0.5f, 0.5f));
  std::vector<Texture2D> textures{Texture2D(2, 2, Vec4f(1, 1, 1, 0))};
  AlphaMaskIntersector const alpha(textures, coords);
  std::vector<Bvh> const bvhs{build_bvh(tris)};
  for (int i = 0; i < 500; ++i) {
    Ray const ray = testing::random_ray(rng);
    CHECK_FALSE(any_hit(ray, tris, alpha).hit);
    CHECK_FALSE(any_hit(ray, bvhs, alpha).hit);
  }
}

TEST_CASE("multi hit over stacked quads ignores sequence order") {
  std::vector<Triangle> tris;
  for (int z : {4, 2, 5, 1, 3}) {
    auto const q = testing::quad_z(float(z), -1, 1, -1, 1, std::uint32_t(tris.size()));
    tris.insert(tris.end(), q.begin(), q.end());
  }
  Ray const ray(Vec3f(0.3f, 0.1f, 0), Vec3f(0, 0, 1));
  auto const hits = multi_hit(ray, tris, 3);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0].t == 1.0f);
  CHECK(hits[1].t == 2.0f);
  CHECK(hits[2].t == 3.0f);
  CHECK(multi_hit(ray, tris.begin(), tris.end(), 3) == hits);
  CHECK_THROWS_AS(multi_hit(ray, tris, 0), Error);
}

TEST_CASE("queries over a list of BVHs") {
  testing::Rng rng(2);
  std::vector<Triangle> flat;
  std::vector<Bvh> bvhs;
  for (int b = 0; b < 3; ++b) {
    auto part = testing::random_triangles(rng, 400, 0.15f);
    for (auto& t : part) {
      t.prim_id = std::uint32_t(flat.size());
      flat.push_back(t);
    }
    bvhs.push_back(build_bvh(part));
  }

  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    Ray const ray = testing::random_ray(rng);
    auto const all = testing::brute_force_hits(ray, flat);
    if (all.size() >= 2 && all[1].t - all[0].t < 1e-6f) {
      continue;
    }

    auto const hr = closest_hit(ray, bvhs);
    REQUIRE(hr.hit == !all.empty());
    if (hr.hit) {
      ++hits;
      CHECK(testing::identical(hr, all.front()));
    }
    CHECK(any_hit(ray, bvhs).hit == !all.empty());

    auto const multi = multi_hit(ray, bvhs, 5);
    REQUIRE(multi.size() == std::min<std::size_t>(5, all.size()));
    for (std::size_t k = 0; k < multi.size(); ++k) {
      CHECK(multi[k].t == all[k].t);
    }

    // Counters through the list equal the sum of separate traversals.
    CostCountingIntersector through_list;
    closest_hit(ray, bvhs, through_list);
    unsigned boxes = 0, tris = 0;
    for (auto const& bvh : bvhs) {
      CostCountingIntersector single;
      intersect_bvh_closest(ray, bvh, single);
      boxes += single.num_boxes;
      tris += single.num_tris;
    }
    CHECK(through_list.num_boxes == boxes);
    CHECK(through_list.num_tris == tris);
    CHECK(through_list.num_boxes >= 3);
  }
  CHECK(hits > 200);
}

TEST_CASE("linear counters run the triangle hook once per primitive") {
  testing::Rng rng(3);
  auto const tris = testing::random_triangles(rng, 50);
  CostCountingIntersector costs;
  closest_hit(testing::random_ray(rng), tris, costs);
  CHECK(costs.num_tris == 50);
  CHECK(costs.num_boxes == 0);
}

TEST_CASE("dispatch transparency: one BVH equals the linear list for every intersector") {
  testing::Rng rng(4);
  auto const tris = testing::random_triangles(rng, 1500, 0.2f, 2);
  std::vector<Vec2f> coords;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    coords.insert(coords.end(), {Vec2f(0, 0), Vec2f(1, 0), Vec2f(0, 1)});
  }
  Texture2D checker(8, 8, Vec4f::Ones());
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) {
      checker.texel(i, j).w() = (i + j) % 2 ? 0.0f : 1.0f;
    }
  }
  std::vector<Texture2D> const textures{checker, Texture2D(1, 1, Vec4f::Ones())};
  std::vector<Bvh> const one{build_bvh(tris)};

  AlphaMaskIntersector const alpha(textures, coords);
  ProceduralMaskIntersector const procedural(4);

  auto check_same = [&](auto const& isect) {
    for (int i = 0; i < 1000; ++i) {
      Ray const ray = testing::random_ray(rng);
      auto const linear_all = testing::brute_force_hits(ray, tris, isect);
      if (linear_all.size() >= 2 && linear_all[1].t - linear_all[0].t < 1e-6f) {
        continue;
      }
      auto const a = closest_hit(ray, tris, isect);
      auto const b = closest_hit(ray, one, isect);
      REQUIRE(a.hit == b.hit);
      if (a.hit) {
        CHECK(testing::identical(a, b));
      }

      auto const m1 = multi_hit(ray, tris, isect, 1);
      CHECK(any_hit(ray, tris, isect).hit == !m1.empty());
      CHECK(any_hit(ray, one, isect).hit == !m1.empty());
      if (a.hit) {
        REQUIRE(m1.size() == 1);
        CHECK(testing::identical(m1.front(), a));
      }

      // n-monotonicity: the n result is a prefix of the n+1 result.
      auto const m4 = multi_hit(ray, one, isect, 4);
      auto const m5 = multi_hit(ray, one, isect, 5);
      REQUIRE(m4.size() <= m5.size());
      for (std::size_t k = 0; k < m4.size(); ++k) {
        CHECK(m4[k].t == m5[k].t);
      }
    }
  };
  check_same(DefaultIntersector{});
  check_same(alpha);
  check_same(procedural);
}

TEST_CASE("a BVH is a primitive for the intersect customization point") {
  testing::Rng rng(5);
  auto const tris = testing::random_triangles(rng, 300, 0.2f);
  auto const bvh = build_bvh(tris);
  for (int i = 0; i < 200; ++i) {
    Ray const ray = testing::random_ray(rng);
    CHECK(testing::identical(intersect(ray, bvh), intersect_bvh_closest(ray, bvh, DefaultIntersector{})));
  }
}
