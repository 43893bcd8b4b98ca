#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rtk/geometry.hpp"
#include "rtk/texture.hpp"

namespace rtk {

/// Triangles plus the data the alpha-mask intersector addresses: three
/// texture coordinates per triangle (by prim_id) and one texture per mesh
/// group (by geom_id).
struct Scene {
  std::vector<Triangle> triangles;  // prim_id == index
  std::vector<Vec2f> tex_coords;    // 3 per triangle
  std::vector<Texture2D> textures;  // one per geom_id
  std::vector<std::string> group_names;
  std::size_t dropped_degenerate = 0;
};

/// Checks the scene invariants; returns one message per violation.
std::vector<std::string> validate_scene(Scene const& scene);

/// Group or material name -> image path, taking precedence over MTL maps.
using TextureOverrides = std::map<std::string, std::filesystem::path>;

/// Loads the OBJ subset: v, vt, f (fan-triangulated, negative indices),
/// o/g/usemtl (each distinct group/material pair is one geom_id) and mtllib
/// with map_Kd/map_d. vt's v is flipped to image convention (row 0 on top).
/// Degenerate faces are dropped and counted.
Scene load_obj(std::filesystem::path const& path,
               TextureOverrides const& overrides = {});

}  // namespace rtk
