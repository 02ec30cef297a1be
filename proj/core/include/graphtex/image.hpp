#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace graphtex {

/// Integer pixel coordinate; x is the column, y the row.
struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Rectangular grid of real intensities with unit mesh size.
///
/// Channels are interleaved: the sample (x, y, c) lives at
/// ((y * width + x) * channels + c). All samples are finite.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels = 1, double fill = 0.0);
  Image(int width, int height, int channels, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool contains(Pixel p) const noexcept { return contains(p.x, p.y); }

  /// Row-major pixel index, used for deterministic tie-breaking.
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  double& at(int x, int y, int c = 0) noexcept {
    return data_[index(x, y) * static_cast<std::size_t>(channels_) + static_cast<std::size_t>(c)];
  }
  double at(int x, int y, int c = 0) const noexcept {
    return data_[index(x, y) * static_cast<std::size_t>(channels_) + static_cast<std::size_t>(c)];
  }
  double at(Pixel p, int c = 0) const noexcept { return at(p.x, p.y, c); }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Copy of one channel as a single-channel image.
  Image channel(int c) const;

  /// True when every sample is finite.
  bool all_finite() const noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Binary region over an image grid (ground truth or segmentation result).
class ShapeMask {
 public:
  ShapeMask() = default;
  ShapeMask(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return inside_.size(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool inside(int x, int y) const noexcept {
    return inside_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                   static_cast<std::size_t>(x)] != 0;
  }
  void set(int x, int y, bool value) noexcept {
    inside_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)] = value ? 1 : 0;
  }

  std::size_t inside_count() const noexcept;

  /// 255 inside, 0 outside.
  Image to_image() const;
  /// Pixels >= 128 are inside.
  static ShapeMask from_image(const Image& img);

  friend bool operator==(const ShapeMask&, const ShapeMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<unsigned char> inside_;
};

}  // namespace graphtex
