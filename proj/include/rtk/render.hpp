#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "rtk/bvh.hpp"
#include "rtk/geometry.hpp"
#include "rtk/image.hpp"
#include "rtk/scene.hpp"

namespace rtk {

/// Pinhole camera; pixel (0, 0) is the top-left corner of the image.
struct Camera {
  Vec3f eye = Vec3f(0.0f, 0.0f, 5.0f);
  Vec3f look_at = Vec3f::Zero();
  Vec3f up = Vec3f::UnitY();
  float vertical_fov = 45.0f;  // degrees
  int width = 1024;
  int height = 768;

  /// Throws rtk::Error when the fields violate the camera invariants.
  void validate() const;

  /// Primary ray through the center of pixel (x, y).
  Ray primary_ray(int x, int y) const;
};

enum class RenderMode { plain, alpha, procedural, heatmap };

std::optional<RenderMode> parse_render_mode(std::string_view name);

struct RenderOptions {
  float alpha_threshold = 0.01f;
  int checker_frequency = 8;
  double heat_weight = 1.0;
  Vec3f background = Vec3f(0.1f, 0.1f, 0.1f);
  unsigned threads = 1;
  BuildParams build;
};

struct CostSample {
  unsigned num_boxes = 0;
  unsigned num_tris = 0;

  bool operator==(CostSample const&) const = default;
};

/// Per-pixel traversal counters, row-major.
struct CostImage {
  int width = 0;
  int height = 0;
  std::vector<CostSample> samples;

  CostSample const& at(int x, int y) const {
    return samples[static_cast<std::size_t>(y) * width + x];
  }
};

struct RenderResult {
  Image image;                        // RGB
  std::vector<std::uint8_t> hit_mask; // 1 where the primary ray hit
  std::optional<CostImage> costs;     // heatmap mode only
};

/// Builds a BVH over the scene and renders it.
RenderResult render(Scene const& scene, Camera const& camera, RenderMode mode,
                    RenderOptions const& options = {});

/// Renders with a prebuilt BVH over scene.triangles.
RenderResult render(Scene const& scene, Bvh const& bvh, Camera const& camera,
                    RenderMode mode, RenderOptions const& options = {});

/// Blue -> green -> red ramp over [0, 1].
Vec3f heat_ramp(double x);

/// Writes the image as binary PPM.
void write_image(Image const& image, std::filesystem::path const& path);

/// CSV with header "x,y,num_boxes,num_tris" and one row per pixel.
void write_cost_csv(CostImage const& costs, std::filesystem::path const& path);

}  // namespace rtk
