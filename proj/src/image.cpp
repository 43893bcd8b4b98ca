#include "rtk/image.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "rtk/error.hpp"

namespace rtk {

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int c = in.get();
  for (;;) {
    while (c != EOF && std::isspace(c)) {
      c = in.get();
    }
    if (c == '#') {
      while (c != EOF && c != '\n') {
        c = in.get();
      }
      continue;
    }
    break;
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (token.empty()) {
    throw Error("truncated header");
  }
  // `c` is the single whitespace that ends the token; it has been consumed.
  return token;
}

int parse_positive(std::string const& token, char const* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (std::exception const&) {
    used = 0;
  }
  if (used != token.size() || value <= 0) {
    throw Error(std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

void read_payload(std::istream& in, Image& image) {
  in.read(reinterpret_cast<char*>(image.data.data()),
          static_cast<std::streamsize>(image.data.size()));
  if (static_cast<std::size_t>(in.gcount()) != image.data.size()) {
    throw Error("truncated payload");
  }
}

Image read_ppm_body(std::istream& in) {
  int const w = parse_positive(next_token(in), "width");
  int const h = parse_positive(next_token(in), "height");
  int const maxval = parse_positive(next_token(in), "maxval");
  if (maxval != 255) {
    throw Error("unsupported maxval " + std::to_string(maxval));
  }
  Image image(w, h, 3);
  read_payload(in, image);
  return image;
}

Image read_pam_body(std::istream& in) {
  int w = 0;
  int h = 0;
  int depth = 0;
  int maxval = 0;
  std::string tupltype;
  for (;;) {
    std::string const key = next_token(in);
    if (key == "ENDHDR") {
      break;
    }
    if (key == "WIDTH") {
      w = parse_positive(next_token(in), "width");
    } else if (key == "HEIGHT") {
      h = parse_positive(next_token(in), "height");
    } else if (key == "DEPTH") {
      depth = parse_positive(next_token(in), "depth");
    } else if (key == "MAXVAL") {
      maxval = parse_positive(next_token(in), "maxval");
    } else if (key == "TUPLTYPE") {
      tupltype = next_token(in);
    } else {
      throw Error("unknown PAM header field '" + key + "'");
    }
  }
  if (w == 0 || h == 0 || depth == 0 || maxval == 0) {
    throw Error("incomplete PAM header");
  }
  if (maxval != 255) {
    throw Error("unsupported maxval " + std::to_string(maxval));
  }
  if (depth > 4) {
    throw Error("unsupported PAM depth " + std::to_string(depth));
  }
  Image image(w, h, depth);
  read_payload(in, image);
  return image;
}

char const* tuple_type(int channels) {
  switch (channels) {
    case 1: return "GRAYSCALE";
    case 2: return "GRAYSCALE_ALPHA";
    case 3: return "RGB";
    default: return "RGB_ALPHA";
  }
}

std::ofstream open_for_write(std::filesystem::path const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

Image::Image(int w, int h, int c) : width(w), height(h), channels(c) {
  if (w <= 0 || h <= 0) {
    throw Error("image dimensions must be positive");
  }
  if (c < 1 || c > 4) {
    throw Error("image channel count must be 1 to 4");
  }
  data.assign(static_cast<std::size_t>(w) * h * c, 0);
}

Image read_pnm(std::istream& in) {
  char magic[2] = {};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P') {
    throw Error("unknown magic");
  }
  if (magic[1] == '6') {
    return read_ppm_body(in);
  }
  if (magic[1] == '7') {
    return read_pam_body(in);
  }
  throw Error(std::string("unknown magic 'P") + magic[1] + "'");
}

Image read_pnm(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  try {
    return read_pnm(in);
  } catch (Error const& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_ppm(Image const& image, std::ostream& out) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  std::size_t const n = static_cast<std::size_t>(image.width) * image.height;
  std::vector<std::uint8_t> rgb(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t const* p = image.data.data() + i * image.channels;
    bool const gray = image.channels < 3;
    rgb[3 * i + 0] = p[0];
    rgb[3 * i + 1] = gray ? p[0] : p[1];
    rgb[3 * i + 2] = gray ? p[0] : p[2];
  }
  out.write(reinterpret_cast<char const*>(rgb.data()),
            static_cast<std::streamsize>(rgb.size()));
}

void write_ppm(Image const& image, std::filesystem::path const& path) {
  auto out = open_for_write(path);
  write_ppm(image, out);
  if (!out) {
    throw Error("failed writing '" + path.string() + "'");
  }
}

void write_pam(Image const& image, std::ostream& out) {
  out << "P7\nWIDTH " << image.width << "\nHEIGHT " << image.height
      << "\nDEPTH " << image.channels << "\nMAXVAL 255\nTUPLTYPE "
      << tuple_type(image.channels) << "\nENDHDR\n";
  out.write(reinterpret_cast<char const*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
}

void write_pam(Image const& image, std::filesystem::path const& path) {
  auto out = open_for_write(path);
  write_pam(image, out);
  if (!out) {
    throw Error("failed writing '" + path.string() + "'");
  }
}

Texture2D texture_from_image(Image const& image) {
  std::vector<Vec4f> texels(static_cast<std::size_t>(image.width) * image.height);
  for (std::size_t i = 0; i < texels.size(); ++i) {
    std::uint8_t const* p = image.data.data() + i * image.channels;
    Vec4f c = Vec4f::Ones();
    switch (image.channels) {
      case 1: c.head<3>().setConstant(p[0] / 255.0f); break;
      case 2: c << p[0] / 255.0f, p[0] / 255.0f, p[0] / 255.0f, p[1] / 255.0f; break;
      case 3: c << p[0] / 255.0f, p[1] / 255.0f, p[2] / 255.0f, 1.0f; break;
      default: c << p[0] / 255.0f, p[1] / 255.0f, p[2] / 255.0f, p[3] / 255.0f; break;
    }
    texels[i] = c;
  }
  return Texture2D(image.width, image.height, std::move(texels));
}

Texture2D load_image(std::filesystem::path const& path) {
  return texture_from_image(read_pnm(path));
}

}  // namespace rtk
