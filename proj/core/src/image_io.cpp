#include "graphtex/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include "graphtex/error.hpp"

namespace graphtex {

namespace {

constexpr std::array<char, 4> kRawMagic = {'T', 'G', 'F', '1'};

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

// ---- PGM -------------------------------------------------------------------

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw IoError("malformed image header");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) throw IoError("malformed image header");
      ++pos_;
    }
    return v;
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 2;
};

Image load_pgm(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw IoError("malformed image header: not a P2/P5 PGM");
  }
  const bool ascii = bytes[1] == '2';
  PgmHeaderReader rd(bytes);
  const long w = rd.next_int();
  const long h = rd.next_int();
  const long maxval = rd.next_int();
  if (w < 1 || h < 1 || w > 1'000'000 || h > 1'000'000) throw IoError("malformed image header: bad dimensions");
  if (maxval < 1 || maxval > 65535) throw IoError("unsupported bit depth: maxval " + std::to_string(maxval));

  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  std::vector<double> data(n);
  const double scale = 255.0 / static_cast<double>(maxval);
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      long v = 0;
      try {
        v = rd.next_int();
      } catch (const IoError&) {
        throw IoError("malformed image payload");
      }
      if (v > maxval) throw IoError("malformed image payload");
      data[i] = static_cast<double>(v) * scale;
    }
  } else {
    // exactly one whitespace byte separates maxval from the raster
    rd.advance(1);
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (bytes.size() < rd.pos() + n * bpp) throw IoError("malformed image payload");
    const unsigned char* p = bytes.data() + rd.pos();
    for (std::size_t i = 0; i < n; ++i) {
      const long v = bpp == 1 ? p[i] : (p[2 * i] << 8) | p[2 * i + 1];
      if (v > maxval) throw IoError("malformed image payload");
      data[i] = static_cast<double>(v) * scale;
    }
  }
  return Image(static_cast<int>(w), static_cast<int>(h), 1, std::move(data));
}

std::vector<unsigned char> quantize_8bit(const Image& img) {
  std::vector<unsigned char> out(img.data().size());
  std::size_t i = 0;
  for (double v : img.data()) {
    const double r = std::nearbyint(v);
    if (!(r >= 0.0 && r <= 255.0)) throw IoError("value outside [0,255]");
    out[i++] = static_cast<unsigned char>(r);
  }
  return out;
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
  if (img.channels() != 1) throw IoError("pgm output requires a single-channel image");
  const auto bytes = quantize_8bit(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

// ---- f64raw ----------------------------------------------------------------

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void save_raw(const Image& img, const std::filesystem::path& path) {
  std::vector<unsigned char> buf;
  buf.reserve(16 + img.data().size() * 8);
  buf.insert(buf.end(), kRawMagic.begin(), kRawMagic.end());
  put_u32(buf, static_cast<std::uint32_t>(img.width()));
  put_u32(buf, static_cast<std::uint32_t>(img.height()));
  put_u32(buf, static_cast<std::uint32_t>(img.channels()));
  for (double v : img.data()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

Image load_raw(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < 16 || !std::equal(kRawMagic.begin(), kRawMagic.end(), bytes.begin())) {
    throw IoError("malformed image header: missing TGF1 magic");
  }
  const std::uint32_t w = get_u32(bytes.data() + 4);
  const std::uint32_t h = get_u32(bytes.data() + 8);
  const std::uint32_t c = get_u32(bytes.data() + 12);
  if (w == 0 || h == 0 || c == 0 || w > 1'000'000 || h > 1'000'000 || c > 64) {
    throw IoError("malformed image header: bad dimensions");
  }
  const std::size_t n = static_cast<std::size_t>(w) * h * c;
  if (bytes.size() != 16 + 8 * n) throw IoError("malformed image payload");
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) {
      bits |= static_cast<std::uint64_t>(bytes[16 + 8 * i + static_cast<std::size_t>(k)]) << (8 * k);
    }
    data[i] = std::bit_cast<double>(bits);
    if (!std::isfinite(data[i])) throw IoError("malformed image payload: non-finite value");
  }
  return Image(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c), std::move(data));
}

// ---- PNG (libpng) ----------------------------------------------------------

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngRaster {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<png_byte> pixels;
  std::string error;
};

void png_error_to_jmp(png_structp png, png_const_charp msg) {
  auto* raster = static_cast<PngRaster*>(png_get_error_ptr(png));
  if (raster) raster->error = msg ? msg : "libpng error";
  png_longjmp(png, 1);
}

void png_silent_warning(png_structp, png_const_charp) {}

// Plain C-style reader: no objects with destructors may live across setjmp.
bool read_png_raster(std::FILE* fp, PngRaster* out) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, out, png_error_to_jmp,
                                           png_silent_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  png_bytep* rows = nullptr;
  if (setjmp(png_jmpbuf(png))) {
    std::free(rows);
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
  } else if (depth != 8 && depth != 16) {
    out->error = "unsupported bit depth";
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  out->width = png_get_image_width(png, info);
  out->height = png_get_image_height(png, info);
  out->channels = png_get_channels(png, info);
  out->bit_depth = png_get_bit_depth(png, info);
  if (out->channels == 2 || out->channels == 4) {
    // tRNS expansion can reintroduce alpha after the strip request above
    out->error = "unsupported alpha layout";
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  const png_size_t rowbytes = png_get_rowbytes(png, info);
  out->pixels.resize(rowbytes * out->height);
  rows = static_cast<png_bytep*>(std::malloc(sizeof(png_bytep) * out->height));
  if (!rows) png_error(png, "out of memory");
  for (png_uint_32 y = 0; y < out->height; ++y) rows[y] = out->pixels.data() + y * rowbytes;
  png_read_image(png, rows);
  png_read_end(png, nullptr);
  std::free(rows);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

Image load_png(const std::filesystem::path& path, const LoadOptions& options) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) throw IoError("cannot open " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw IoError("malformed image header: not a PNG file");
  }
  std::rewind(fp.get());
  PngRaster raster;
  if (!read_png_raster(fp.get(), &raster)) {
    if (raster.error == "unsupported bit depth") throw IoError("unsupported bit depth");
    throw IoError("malformed image payload: " + raster.error);
  }

  const int w = static_cast<int>(raster.width);
  const int h = static_cast<int>(raster.height);
  const int nc = raster.channels;
  const bool wide = raster.bit_depth == 16;
  const double scale = wide ? 255.0 / 65535.0 : 1.0;
  auto sample = [&](std::size_t i) {
    if (wide) return (raster.pixels[2 * i] << 8 | raster.pixels[2 * i + 1]) * scale;
    return static_cast<double>(raster.pixels[i]);
  };

  const int out_c = (nc == 3 && options.grayscale) ? 1 : nc;
  Image img(w, h, out_c);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t base = (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                                static_cast<std::size_t>(x)) *
                               static_cast<std::size_t>(nc);
      if (out_c == 1 && nc == 3) {
        img.at(x, y) = luma(sample(base), sample(base + 1), sample(base + 2));
      } else {
        for (int c = 0; c < nc; ++c) img.at(x, y, c) = sample(base + static_cast<std::size_t>(c));
      }
    }
  }
  return img;
}

bool write_png_raster(std::FILE* fp, int w, int h, int color_type, png_bytep* rows) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_to_jmp,
                                            png_silent_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void save_png(const Image& img, const std::filesystem::path& path) {
  if (img.channels() != 1 && img.channels() != 3) {
    throw IoError("png output requires 1 or 3 channels");
  }
  auto bytes = quantize_8bit(img);
  const std::size_t stride = static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.channels());
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  for (std::size_t y = 0; y < rows.size(); ++y) rows[y] = bytes.data() + y * stride;

  FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path.string());
  const int color = img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  if (!write_png_raster(fp.get(), img.width(), img.height(), color, rows.data())) {
    throw IoError("cannot write " + path.string());
  }
}

}  // namespace

ImageFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (ext == ".pgm") return ImageFormat::pgm;
  if (ext == ".png") return ImageFormat::png;
  if (ext == ".f64" || ext == ".raw") return ImageFormat::f64raw;
  throw IoError("cannot infer image format from extension of " + path.string());
}

Image load_image(const std::filesystem::path& path, ImageFormat format, const LoadOptions& options) {
  switch (format) {
    case ImageFormat::pgm:
      return load_pgm(path);
    case ImageFormat::png:
      return load_png(path, options);
    case ImageFormat::f64raw:
      return load_raw(path);
  }
  throw IoError("unknown image format");
}

Image load_image(const std::filesystem::path& path, const LoadOptions& options) {
  return load_image(path, format_from_path(path), options);
}

void save_image(const Image& img, const std::filesystem::path& path, ImageFormat format) {
  if (img.empty()) throw IoError("cannot save an empty image");
  if (!img.all_finite()) throw IoError("cannot save non-finite intensities");
  switch (format) {
    case ImageFormat::pgm:
      save_pgm(img, path);
      return;
    case ImageFormat::png:
      save_png(img, path);
      return;
    case ImageFormat::f64raw:
      save_raw(img, path);
      return;
  }
}

void save_image(const Image& img, const std::filesystem::path& path) {
  save_image(img, path, format_from_path(path));
}

}  // namespace graphtex
