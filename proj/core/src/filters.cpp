#include "graphtex/filters.hpp"

#include <algorithm>
#include <cmath>

#include "graphtex/error.hpp"

namespace graphtex {

Image rescale(const Image& img, double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("rescale requires lo < hi");
  const auto data = img.data();
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  Image out = img;
  if (*mn == *mx) {
    std::fill(out.data().begin(), out.data().end(), 0.5 * (lo + hi));
    return out;
  }
  const double lo_v = *mn;
  const double scale = (hi - lo) / (*mx - lo_v);
  for (double& v : out.data()) v = lo + (v - lo_v) * scale;
  // pin the extremes so min/max land exactly on lo/hi
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == *mx) out.data()[i] = hi;
    if (data[i] == lo_v) out.data()[i] = lo;
  }
  return out;
}

int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (sigma < 0.0) throw InvalidArgument("sigma must be non-negative");
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  for (double& w : k) w /= sum;
  return k;
}

Image gaussian_smooth(const Image& img, double sigma) {
  if (sigma < 0.0) throw InvalidArgument("sigma must be non-negative");
  if (sigma == 0.0) return img;

  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();

  Image tmp(w, h, nc);
  for (int c = 0; c < nc; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += kernel[static_cast<std::size_t>(k + radius)] * img.at(reflect_index(x + k, w), y, c);
        }
        tmp.at(x, y, c) = acc;
      }
    }
  }
  Image out(w, h, nc);
  for (int c = 0; c < nc; ++c) {
    double lo = img.at(0, 0, c);
    double hi = lo;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        lo = std::min(lo, img.at(x, y, c));
        hi = std::max(hi, img.at(x, y, c));
      }
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += kernel[static_cast<std::size_t>(k + radius)] * tmp.at(x, reflect_index(y + k, h), c);
        }
        // rounding must not push a convex combination outside the input range
        out.at(x, y, c) = std::clamp(acc, lo, hi);
      }
    }
  }
  return out;
}

}  // namespace graphtex
