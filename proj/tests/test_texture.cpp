#include "doctest.h"
#include "oracles.hpp"
#include "rtk/error.hpp"
#include "rtk/texture.hpp"

using namespace rtk;

namespace {

Texture2D two_by_two(AddressMode address, FilterMode filter) {
  Texture2D tex(2, 2, std::vector<Vec4f>{Vec4f(1, 0, 0, 1), Vec4f(0, 1, 0, 0.5f),
                                         Vec4f(0, 0, 1, 0.25f), Vec4f(1, 1, 1, 0)});
  tex.address_mode = address;
  tex.filter = filter;
  return tex;
}

// Dyadic coordinates keep coord + 1 exact in float.
float dyadic(testing::Rng& rng, int lo, int hi) {
  return float(std::uniform_int_distribution<int>(lo * 1024, hi * 1024)(rng)) / 1024.0f;
}

}  // namespace

TEST_CASE("1x1 texture returns its value everywhere") {
  Vec4f const c(0.2f, 0.4f, 0.6f, 0.8f);
  for (auto address : {AddressMode::wrap, AddressMode::clamp}) {
    for (auto filter : {FilterMode::nearest, FilterMode::bilinear}) {
      Texture2D tex(1, 1, c);
      tex.address_mode = address;
      tex.filter = filter;
      for (Vec2f coord : {Vec2f(0, 0), Vec2f(0.5f, 0.5f), Vec2f(1, 1), Vec2f(-3.7f, 12.1f)}) {
        CHECK(tex2d(tex, coord) == c);
      }
    }
  }
}

TEST_CASE("nearest uses texel-center cells") {
  auto const tex = two_by_two(AddressMode::clamp, FilterMode::nearest);
  CHECK(tex2d(tex, Vec2f(0.25f, 0.25f)) == tex.texel(0, 0));
  CHECK(tex2d(tex, Vec2f(0.75f, 0.25f)) == tex.texel(1, 0));
  CHECK(tex2d(tex, Vec2f(0.25f, 0.75f)) == tex.texel(0, 1));
  CHECK(tex2d(tex, Vec2f(0.99f, 0.99f)) == tex.texel(1, 1));
  // Clamp.
  CHECK(tex2d(tex, Vec2f(-5.0f, 0.2f)) == tex.texel(0, 0));
  CHECK(tex2d(tex, Vec2f(1.0f, 1.0f)) == tex.texel(1, 1));
  CHECK(tex2d(tex, Vec2f(7.0f, -1.0f)) == tex.texel(1, 0));
}

TEST_CASE("bilinear at the center averages all four texels") {
  auto const tex = two_by_two(AddressMode::clamp, FilterMode::bilinear);
  Vec4f const mean = 0.25f * (tex.texel(0, 0) + tex.texel(1, 0) + tex.texel(0, 1) + tex.texel(1, 1));
  Vec4f const got = tex2d(tex, Vec2f(0.5f, 0.5f));
  CHECK((got - mean).cwiseAbs().maxCoeff() <= 1e-6f);
}

TEST_CASE("wrap mode repeats with period 1") {
  testing::Rng rng(3);
  Texture2D tex(5, 3, Vec4f::Zero());
  for (auto& t : tex.texels) {
    t = Vec4f(testing::uniform(rng, 0, 1), testing::uniform(rng, 0, 1),
              testing::uniform(rng, 0, 1), testing::uniform(rng, 0, 1));
  }
  for (auto filter : {FilterMode::nearest, FilterMode::bilinear}) {
    tex.filter = filter;
    for (int i = 0; i < 2000; ++i) {
      Vec2f const c(dyadic(rng, -3, 3), dyadic(rng, -3, 3));
      CHECK(tex2d(tex, c) == tex2d(tex, c + Vec2f(1, 0)));
      CHECK(tex2d(tex, c) == tex2d(tex, c + Vec2f(0, 1)));
    }
  }
}

TEST_CASE("constant textures sample exactly for every mode") {
  testing::Rng rng(8);
  Vec4f const c(0.3f, 0.7f, 0.1f, 0.01f);
  Texture2D tex(7, 4, c);
  for (auto address : {AddressMode::wrap, AddressMode::clamp}) {
    for (auto filter : {FilterMode::nearest, FilterMode::bilinear}) {
      tex.address_mode = address;
      tex.filter = filter;
      for (int i = 0; i < 500; ++i) {
        Vec2f const coord(testing::uniform(rng, -4, 4), testing::uniform(rng, -4, 4));
        CHECK(tex2d(tex, coord) == c);
      }
    }
  }
}

TEST_CASE("bilinear at texel centers equals nearest") {
  testing::Rng rng(12);
  Texture2D tex(6, 5, Vec4f::Zero());
  for (auto& t : tex.texels) {
    t = Vec4f(testing::uniform(rng, 0, 1), testing::uniform(rng, 0, 1),
              testing::uniform(rng, 0, 1), testing::uniform(rng, 0, 1));
  }
  for (auto address : {AddressMode::wrap, AddressMode::clamp}) {
    tex.address_mode = address;
    for (int j = 0; j < tex.height; ++j) {
      for (int i = 0; i < tex.width; ++i) {
        Vec2f const c((i + 0.5f) / tex.width, (j + 0.5f) / tex.height);
        tex.filter = FilterMode::nearest;
        Vec4f const n = tex2d(tex, c);
        tex.filter = FilterMode::bilinear;
        Vec4f const b = tex2d(tex, c);
        CHECK((n - b).cwiseAbs().maxCoeff() <= 1e-6f);
      }
    }
  }
}

TEST_CASE("texture construction validates sizes") {
  CHECK_THROWS_AS(Texture2D(0, 1, Vec4f::Ones()), Error);
  CHECK_THROWS_AS(Texture2D(2, 2, std::vector<Vec4f>(3)), Error);
  CHECK(Texture2D::opaque_white().texel(0, 0) == Vec4f::Ones());
}
