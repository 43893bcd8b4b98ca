#include "rtk/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

#include "rtk/error.hpp"
#include "rtk/intersectors.hpp"
#include "rtk/queries.hpp"
#include "rtk/texture.hpp"

namespace rtk {

namespace {

std::uint8_t to_byte(float c) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0f, 1.0f) * 255.0f));
}

// Texture color at the hit, dimmed by a headlight term |N.V|.
Vec3f shade(Scene const& scene, Ray const& ray, HitRecord const& hr) {
  Triangle const& tri = scene.triangles[hr.prim_id];
  std::size_t const base = std::size_t(hr.prim_id) * 3;
  Vec2f const uv = barycentric_lerp(scene.tex_coords[base], scene.tex_coords[base + 1],
                                    scene.tex_coords[base + 2], hr.u, hr.v);
  Vec4f const color = tex2d(scene.textures[hr.geom_id], uv);
  float const headlight =
      std::abs(tri.normal().normalized().dot(ray.direction.normalized()));
  return color.head<3>() * headlight;
}

template <typename Fn>
void for_each_row(int height, unsigned threads, Fn const& fn) {
  unsigned const workers = std::max(1u, std::min<unsigned>(threads, unsigned(height)));
  if (workers == 1) {
    for (int y = 0; y < height; ++y) {
      fn(y);
    }
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int y = int(w); y < height; y += int(workers)) {
        fn(y);
      }
    });
  }
}

}  // namespace

void Camera::validate() const {
  if (width <= 0 || height <= 0) {
    throw Error("image size must be positive");
  }
  if (!eye.allFinite() || !look_at.allFinite() || !up.allFinite()) {
    throw Error("camera vectors must be finite");
  }
  Vec3f const view = look_at - eye;
  if (!(view.squaredNorm() > 0.0f)) {
    throw Error("camera eye and look-at coincide");
  }
  if (!(view.normalized().cross(up).squaredNorm() > 1e-12f)) {
    throw Error("camera up vector is parallel to the view direction");
  }
  if (!(vertical_fov > 0.0f && vertical_fov < 180.0f)) {
    throw Error("field of view must lie in (0, 180) degrees");
  }
}

Ray Camera::primary_ray(int x, int y) const {
  Vec3f const w = (eye - look_at).normalized();
  Vec3f const u = up.cross(w).normalized();
  Vec3f const v = w.cross(u);

  float const tan_half = std::tan(vertical_fov * std::numbers::pi_v<float> / 360.0f);
  float const aspect = float(width) / float(height);
  float const sx = (2.0f * (float(x) + 0.5f) / float(width) - 1.0f) * tan_half * aspect;
  float const sy = (1.0f - 2.0f * (float(y) + 0.5f) / float(height)) * tan_half;
  return Ray(eye, sx * u + sy * v - w);
}

std::optional<RenderMode> parse_render_mode(std::string_view name) {
  if (name == "plain") return RenderMode::plain;
  if (name == "alpha") return RenderMode::alpha;
  if (name == "procedural") return RenderMode::procedural;
  if (name == "heatmap") return RenderMode::heatmap;
  return std::nullopt;
}

Vec3f heat_ramp(double x) {
  float const t = static_cast<float>(std::clamp(x, 0.0, 1.0));
  Vec3f const blue(0.0f, 0.0f, 1.0f);
  Vec3f const green(0.0f, 1.0f, 0.0f);
  Vec3f const red(1.0f, 0.0f, 0.0f);
  if (t < 0.5f) {
    return blue + (2.0f * t) * (green - blue);
  }
  return green + (2.0f * t - 1.0f) * (red - green);
}

RenderResult render(Scene const& scene, Camera const& camera, RenderMode mode,
                    RenderOptions const& options) {
  camera.validate();
  Bvh const bvh = build_bvh(scene.triangles, options.build);
  return render(scene, bvh, camera, mode, options);
}

RenderResult render(Scene const& scene, Bvh const& bvh, Camera const& camera,
                    RenderMode mode, RenderOptions const& options) {
  camera.validate();
  if (auto const issues = validate_scene(scene); !issues.empty()) {
    throw Error("invalid scene: " + issues.front());
  }

  int const width = camera.width;
  int const height = camera.height;

  RenderResult result;
  result.image = Image(width, height, 3);
  result.hit_mask.assign(std::size_t(width) * height, 0);
  if (mode == RenderMode::heatmap) {
    result.costs = CostImage{width, height,
                             std::vector<CostSample>(std::size_t(width) * height)};
  }

  AlphaMaskIntersector const alpha(scene.textures, scene.tex_coords,
                                   options.alpha_threshold);
  ProceduralMaskIntersector const procedural(options.checker_frequency);

  auto render_row = [&](int y) {
    for (int x = 0; x < width; ++x) {
      std::size_t const idx = std::size_t(y) * width + x;
      Ray const ray = camera.primary_ray(x, y);

      HitRecord hr;
      switch (mode) {
        case RenderMode::plain:
          hr = intersect_bvh_closest(ray, bvh, DefaultIntersector{});
          break;
        case RenderMode::alpha:
          hr = intersect_bvh_closest(ray, bvh, alpha);
          break;
        case RenderMode::procedural:
          hr = intersect_bvh_closest(ray, bvh, procedural);
          break;
        case RenderMode::heatmap: {
          CostCountingIntersector costs;
          hr = intersect_bvh_closest(ray, bvh, costs);
          result.costs->samples[idx] = {costs.num_boxes, costs.num_tris};
          break;
        }
      }

      result.hit_mask[idx] = hr.hit ? 1 : 0;
      if (mode == RenderMode::heatmap) {
        continue;
      }
      Vec3f const color = hr.hit ? shade(scene, ray, hr) : options.background;
      std::uint8_t* px = result.image.pixel(x, y);
      px[0] = to_byte(color.x());
      px[1] = to_byte(color.y());
      px[2] = to_byte(color.z());
    }
  };
  for_each_row(height, options.threads, render_row);

  if (mode == RenderMode::heatmap) {
    auto const& samples = result.costs->samples;
    auto cost = [&](CostSample const& s) {
      return options.heat_weight * s.num_boxes + double(s.num_tris);
    };
    double max_cost = 0.0;
    for (auto const& s : samples) {
      max_cost = std::max(max_cost, cost(s));
    }
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        double const c = cost(samples[std::size_t(y) * width + x]);
        Vec3f const color = heat_ramp(max_cost > 0.0 ? c / max_cost : 0.0);
        std::uint8_t* px = result.image.pixel(x, y);
        px[0] = to_byte(color.x());
        px[1] = to_byte(color.y());
        px[2] = to_byte(color.z());
      }
    }
  }
  return result;
}

void write_image(Image const& image, std::filesystem::path const& path) {
  write_ppm(image, path);
}

void write_cost_csv(CostImage const& costs, std::filesystem::path const& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << "x,y,num_boxes,num_tris\n";
  for (int y = 0; y < costs.height; ++y) {
    for (int x = 0; x < costs.width; ++x) {
      auto const& s = costs.at(x, y);
      out << x << ',' << y << ',' << s.num_boxes << ',' << s.num_tris << '\n';
    }
  }
  if (!out) {
    throw Error("failed writing '" + path.string() + "'");
  }
}

}  // namespace rtk
