#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtk/error.hpp"
#include "rtk/image.hpp"
#include "rtk/scene.hpp"

namespace rtk {

namespace {

struct Material {
  std::filesystem::path map_kd;
  std::filesystem::path map_d;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    std::size_t const start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

std::string_view strip_comment(std::string_view line) {
  auto const hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

// Everything after the keyword, trimmed; texture paths may contain spaces.
std::string rest_of_line(std::string_view line, std::string_view keyword) {
  auto pos = line.find(keyword);
  std::string_view rest = line.substr(pos + keyword.size());
  auto const first = rest.find_first_not_of(" \t");
  if (first == std::string_view::npos) {
    return {};
  }
  rest = rest.substr(first);
  auto const last = rest.find_last_not_of(" \t\r");
  return std::string(rest.substr(0, last + 1));
}

class LineError {
 public:
  LineError(std::filesystem::path const& path, std::size_t line)
      : path_(path), line_(line) {}

  [[noreturn]] void fail(std::string const& what) const {
    throw Error(path_.string() + ":" + std::to_string(line_) + ": " + what);
  }

 private:
  std::filesystem::path const& path_;
  std::size_t line_;
};

float parse_float(std::string_view token, LineError const& err) {
  float value = 0.0f;
  auto const* end = token.data() + token.size();
  auto const [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    err.fail("invalid number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    err.fail("non-finite number '" + std::string(token) + "'");
  }
  return value;
}

// Resolves a 1-based (or negative, relative) OBJ index to 0-based.
std::size_t resolve_index(std::string_view token, std::size_t count,
                          char const* what, LineError const& err) {
  long long value = 0;
  auto const* end = token.data() + token.size();
  auto const [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    err.fail(std::string("invalid ") + what + " index '" + std::string(token) + "'");
  }
  long long resolved = value > 0 ? value - 1 : static_cast<long long>(count) + value;
  if (value == 0 || resolved < 0 || resolved >= static_cast<long long>(count)) {
    err.fail(std::string(what) + " index " + std::to_string(value) +
             " out of range (have " + std::to_string(count) + ")");
  }
  return static_cast<std::size_t>(resolved);
}

std::map<std::string, Material> load_mtl(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open material library '" + path.string() + "'");
  }
  auto const dir = path.parent_path();
  std::map<std::string, Material> materials;
  Material* current = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view const body = strip_comment(line);
    auto const tokens = split(body);
    if (tokens.empty()) {
      continue;
    }
    if (tokens[0] == "newmtl" && tokens.size() >= 2) {
      current = &materials[std::string(tokens[1])];
    } else if (current && (tokens[0] == "map_Kd" || tokens[0] == "map_d") &&
               tokens.size() >= 2) {
      // Options such as -clamp are not supported; the path is the last token.
      std::filesystem::path const file = dir / std::string(tokens.back());
      (tokens[0] == "map_Kd" ? current->map_kd : current->map_d) = file;
    }
  }
  return materials;
}

Texture2D make_group_texture(Material const& mat) {
  if (mat.map_kd.empty() && mat.map_d.empty()) {
    return Texture2D::opaque_white();
  }
  if (mat.map_d.empty()) {
    return load_image(mat.map_kd);
  }
  if (mat.map_kd.empty()) {
    return load_image(mat.map_d);
  }

  // Color from map_Kd, opacity from map_d (its alpha if present, else gray).
  Texture2D tex = load_image(mat.map_kd);
  Image const mask = read_pnm(mat.map_d);
  if (mask.width != tex.width || mask.height != tex.height) {
    throw Error("map_d '" + mat.map_d.string() + "' size differs from map_Kd");
  }
  int const alpha_channel = (mask.channels == 2 || mask.channels == 4) ? mask.channels - 1 : 0;
  for (int j = 0; j < tex.height; ++j) {
    for (int i = 0; i < tex.width; ++i) {
      tex.texel(i, j).w() = mask.pixel(i, j)[alpha_channel] / 255.0f;
    }
  }
  return tex;
}

}  // namespace

std::vector<std::string> validate_scene(Scene const& scene) {
  std::vector<std::string> issues;
  if (scene.tex_coords.size() != 3 * scene.triangles.size()) {
    issues.push_back("tex_coords holds " + std::to_string(scene.tex_coords.size()) +
                     " entries, expected " + std::to_string(3 * scene.triangles.size()));
  }
  for (std::size_t i = 0; i < scene.triangles.size(); ++i) {
    auto const& tri = scene.triangles[i];
    if (tri.prim_id != i) {
      issues.push_back("triangle " + std::to_string(i) + " has prim_id " +
                       std::to_string(tri.prim_id));
    }
    if (tri.geom_id >= scene.textures.size()) {
      issues.push_back("triangle " + std::to_string(i) + " has geom_id " +
                       std::to_string(tri.geom_id) + " without texture");
    }
    if (is_degenerate(tri)) {
      issues.push_back("triangle " + std::to_string(i) + " is degenerate");
    }
  }
  return issues;
}

Scene load_obj(std::filesystem::path const& path, TextureOverrides const& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  auto const dir = path.parent_path();

  std::vector<Vec3f> positions;
  std::vector<Vec2f> uvs;
  std::map<std::string, Material> materials;

  Scene scene;
  std::vector<std::string> group_materials;
  std::map<std::pair<std::string, std::string>, std::uint32_t> group_ids;
  std::string group_name;
  std::string material_name;
  std::uint32_t geom_id = 0;
  bool group_open = false;  // geom_id is valid for the current o/g/usemtl

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> corners;

  while (std::getline(in, line)) {
    ++line_no;
    LineError const err(path, line_no);
    std::string_view const body = strip_comment(line);
    auto const tokens = split(body);
    if (tokens.empty()) {
      continue;
    }
    auto const& key = tokens[0];

    if (key == "v") {
      if (tokens.size() < 4) {
        err.fail("vertex needs 3 coordinates");
      }
      positions.emplace_back(parse_float(tokens[1], err), parse_float(tokens[2], err),
                             parse_float(tokens[3], err));
    } else if (key == "vt") {
      if (tokens.size() < 2) {
        err.fail("texture coordinate needs at least 1 component");
      }
      float const u = parse_float(tokens[1], err);
      float const v = tokens.size() >= 3 ? parse_float(tokens[2], err) : 0.0f;
      uvs.emplace_back(u, 1.0f - v);
    } else if (key == "o" || key == "g") {
      group_name = tokens.size() >= 2 ? rest_of_line(body, key) : std::string();
      group_open = false;
    } else if (key == "usemtl") {
      material_name = tokens.size() >= 2 ? rest_of_line(body, key) : std::string();
      group_open = false;
    } else if (key == "mtllib") {
      if (tokens.size() < 2) {
        err.fail("mtllib without file");
      }
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto lib = load_mtl(dir / std::string(tokens[i]));
        materials.merge(lib);
      }
    } else if (key == "f") {
      if (tokens.size() < 4) {
        err.fail("face needs at least 3 vertices");
      }
      corners.clear();
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string_view const ref = tokens[i];
        auto const slash = ref.find('/');
        std::size_t const vi = resolve_index(ref.substr(0, slash), positions.size(),
                                             "vertex", err);
        std::optional<std::size_t> ti;
        if (slash != std::string_view::npos) {
          std::string_view rest = ref.substr(slash + 1);
          std::string_view const vt = rest.substr(0, rest.find('/'));
          if (!vt.empty()) {
            ti = resolve_index(vt, uvs.size(), "texcoord", err);
          }
        }
        corners.emplace_back(vi, ti);
      }

      if (!group_open) {
        auto const group_key = std::make_pair(group_name, material_name);
        auto const [it, inserted] =
            group_ids.emplace(group_key, std::uint32_t(scene.group_names.size()));
        if (inserted) {
          scene.group_names.push_back(!group_name.empty()      ? group_name
                                      : !material_name.empty() ? material_name
                                                               : "default");
          group_materials.push_back(material_name);
        }
        geom_id = it->second;
        group_open = true;
      }

      auto uv_of = [&](std::size_t c) -> Vec2f {
        return corners[c].second ? uvs[*corners[c].second] : Vec2f::Zero();
      };
      for (std::size_t c = 1; c + 1 < corners.size(); ++c) {
        auto tri = make_triangle(positions[corners[0].first], positions[corners[c].first],
                                 positions[corners[c + 1].first],
                                 std::uint32_t(scene.triangles.size()), geom_id);
        if (is_degenerate(tri)) {
          ++scene.dropped_degenerate;
          continue;
        }
        scene.triangles.push_back(tri);
        scene.tex_coords.push_back(uv_of(0));
        scene.tex_coords.push_back(uv_of(c));
        scene.tex_coords.push_back(uv_of(c + 1));
      }
    }
    // vn, s, l, p and other statements are ignored.
  }

  scene.textures.reserve(scene.group_names.size());
  for (std::size_t g = 0; g < scene.group_names.size(); ++g) {
    auto override_for = [&](std::string const& name) -> std::filesystem::path const* {
      auto const it = overrides.find(name);
      return it == overrides.end() ? nullptr : &it->second;
    };
    if (auto const* p = override_for(scene.group_names[g])) {
      scene.textures.push_back(load_image(*p));
    } else if (auto const* q = override_for(group_materials[g])) {
      scene.textures.push_back(load_image(*q));
    } else if (auto const it = materials.find(group_materials[g]); it != materials.end()) {
      scene.textures.push_back(make_group_texture(it->second));
    } else {
      scene.textures.push_back(Texture2D::opaque_white());
    }
  }
  return scene;
}

}  // namespace rtk
