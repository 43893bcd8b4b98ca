// Writes the synthetic billboard scene: textured quads whose alpha masks
// carve leaf and blossom shapes out of the rectangles.
//
//   make_billboards <output-dir>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "rtk/image.hpp"

namespace {

constexpr int tex_size = 128;

// Leaf: a lens between two circles, tilted 45 degrees, with a thin stem.
rtk::Image leaf_texture() {
  rtk::Image img(tex_size, tex_size, 4);
  for (int j = 0; j < tex_size; ++j) {
    for (int i = 0; i < tex_size; ++i) {
      double const x = (i + 0.5) / tex_size - 0.5;
      double const y = (j + 0.5) / tex_size - 0.5;
      double const c = std::cos(std::numbers::pi / 4);
      double const a = c * x + c * y;   // along the leaf
      double const b = -c * x + c * y;  // across the leaf
      double const r = 0.45;
      double const off = 0.32;
      bool const blade = std::hypot(a, b - off) < r && std::hypot(a, b + off) < r;
      bool const stem = a > 0.25 && a < 0.48 && std::abs(b) < 0.015;
      bool const vein = blade && std::abs(b) < 0.008;

      auto* px = img.pixel(i, j);
      double const shade = 0.55 + 0.45 * (0.5 - a);
      px[0] = static_cast<std::uint8_t>(vein ? 200 : 40 * shade);
      px[1] = static_cast<std::uint8_t>(vein ? 230 : 200 * shade);
      px[2] = static_cast<std::uint8_t>(vein ? 120 : 50 * shade);
      px[3] = (blade || stem) ? 255 : 0;
    }
  }
  return img;
}

// Blossom: five round petals around a disc, with a hole in the center.
rtk::Image blossom_texture() {
  rtk::Image img(tex_size, tex_size, 4);
  for (int j = 0; j < tex_size; ++j) {
    for (int i = 0; i < tex_size; ++i) {
      double const x = (i + 0.5) / tex_size - 0.5;
      double const y = (j + 0.5) / tex_size - 0.5;
      double const r = std::hypot(x, y);
      double const phi = std::atan2(y, x);
      double const petal = 0.28 + 0.17 * std::cos(5.0 * phi);
      bool const opaque = r < petal && r > 0.05;

      auto* px = img.pixel(i, j);
      bool const center = r < 0.12;
      px[0] = center ? 250 : 235;
      px[1] = center ? 200 : static_cast<std::uint8_t>(120 + 200 * r);
      px[2] = center ? 40 : 170;
      px[3] = opaque ? 255 : 0;
    }
  }
  return img;
}

struct Quad {
  double cx, cy, z, half;
  char const* material;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_billboards <output-dir>\n");
    return 2;
  }
  std::filesystem::path const dir = argv[1];
  std::filesystem::create_directories(dir);

  rtk::write_pam(leaf_texture(), dir / "leaf.pam");
  rtk::write_pam(blossom_texture(), dir / "blossom.pam");

  {
    std::ofstream mtl(dir / "billboards.mtl");
    mtl << "newmtl leaf\nmap_Kd leaf.pam\n\nnewmtl blossom\nmap_Kd blossom.pam\n";
  }

  Quad const quads[] = {
      {-1.1, 0.9, -1.5, 0.9, "leaf"},    {0.2, 1.0, -1.2, 0.8, "blossom"},
      {1.2, 0.6, -1.8, 0.9, "leaf"},     {-0.6, -0.2, -0.6, 0.8, "blossom"},
      {0.7, -0.3, -0.3, 0.85, "leaf"},   {-1.3, -1.0, -1.0, 0.7, "leaf"},
      {0.1, -1.1, 0.2, 0.7, "blossom"},  {1.3, -1.2, -0.8, 0.6, "blossom"},
      {-0.2, 0.3, 0.6, 0.55, "leaf"},    {0.9, 0.5, 0.4, 0.5, "blossom"},
  };

  std::ofstream obj(dir / "billboards.obj");
  obj << "# synthetic billboard scene: alpha-masked quads\n";
  obj << "mtllib billboards.mtl\n";
  obj << "vt 0 0\nvt 1 0\nvt 1 1\nvt 0 1\n";
  int index = 0;
  for (auto const& q : quads) {
    obj << "v " << q.cx - q.half << ' ' << q.cy - q.half << ' ' << q.z << '\n';
    obj << "v " << q.cx + q.half << ' ' << q.cy - q.half << ' ' << q.z << '\n';
    obj << "v " << q.cx + q.half << ' ' << q.cy + q.half << ' ' << q.z << '\n';
    obj << "v " << q.cx - q.half << ' ' << q.cy + q.half << ' ' << q.z << '\n';
  }
  for (auto const& q : quads) {
    int const b = 4 * index++ + 1;
    obj << "usemtl " << q.material << '\n';
    obj << "f " << b << "/1 " << b + 1 << "/2 " << b + 2 << "/3 " << b + 3 << "/4\n";
  }
  return 0;
}
