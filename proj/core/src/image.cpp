#include "graphtex/image.hpp"

#include <algorithm>
#include <cmath>

#include "graphtex/error.hpp"

namespace graphtex {

namespace {

void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1 || channels < 1) {
    throw InvalidArgument("image dimensions must be positive");
  }
}

}  // namespace

Image::Image(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  if (!std::isfinite(fill)) throw InvalidArgument("image intensities must be finite");
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), fill);
}

Image::Image(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw InvalidArgument("image data length does not match width*height*channels");
  }
  if (!all_finite()) throw InvalidArgument("image intensities must be finite");
}

Image Image::channel(int c) const {
  if (c < 0 || c >= channels_) throw InvalidArgument("channel index out of range");
  Image out(width_, height_, 1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.at(x, y) = at(x, y, c);
  }
  return out;
}

bool Image::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

ShapeMask::ShapeMask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw InvalidArgument("mask dimensions must be positive");
  inside_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill ? 1 : 0);
}

std::size_t ShapeMask::inside_count() const noexcept {
  return static_cast<std::size_t>(std::count(inside_.begin(), inside_.end(), 1));
}

Image ShapeMask::to_image() const {
  Image out(width_, height_, 1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.at(x, y) = inside(x, y) ? 255.0 : 0.0;
  }
  return out;
}

ShapeMask ShapeMask::from_image(const Image& img) {
  ShapeMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) mask.set(x, y, img.at(x, y) >= 128.0);
  }
  return mask;
}

}  // namespace graphtex
