#include "graphtex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "graphtex/error.hpp"
#include "graphtex/filters.hpp"

namespace graphtex {

namespace {

// std::mt19937_64 is fully specified by the standard; distributions are not,
// so samples are derived from raw bits to stay bit-identical across toolchains.
int uniform_byte(std::mt19937_64& rng) { return static_cast<int>(rng() >> 56); }

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Image synth_compose(const Image& tex_a, const Image& tex_b, const ShapeMask& mask) {
  if (tex_a.width() != tex_b.width() || tex_a.height() != tex_b.height() ||
      tex_a.channels() != tex_b.channels() || tex_a.width() != mask.width() ||
      tex_a.height() != mask.height()) {
    throw InvalidArgument("synth_compose: dimension mismatch");
  }
  Image out = tex_b;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (!mask.inside(x, y)) continue;
      for (int c = 0; c < out.channels(); ++c) out.at(x, y, c) = tex_a.at(x, y, c);
    }
  }
  return out;
}

Image synth_stripe_noise(int width, int height, const ShapeMask& mask, int period,
                         StripeOrientation orientation, std::uint64_t seed) {
  if (period < 2) throw InvalidArgument("stripe period must be at least 2");
  if (mask.width() != width || mask.height() != height) {
    throw InvalidArgument("synth_stripe_noise: mask dimension mismatch");
  }
  std::mt19937_64 rng(seed);
  Image out(width, height, 1);
  const int half = period / 2;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      // one draw per pixel keeps the noise field independent of the mask
      const int noise = uniform_byte(rng);
      if (mask.inside(x, y)) {
        const int coord = orientation == StripeOrientation::vertical ? x : y;
        out.at(x, y) = (coord % period) < half ? 0.0 : 255.0;
      } else {
        out.at(x, y) = static_cast<double>(noise);
      }
    }
  }
  return out;
}

ShapeMask letter_e_mask(int width, int height) {
  if (width < 40 || height < 40) throw InvalidArgument("letter_e_mask requires width, height >= 40");
  const double left = 0.2 * width;
  const double right = 0.8 * width;
  const double top = 0.2 * height;
  const double bottom = 0.8 * height;
  const double bar = (bottom - top) / 7.0;
  const double mid_top = 0.5 * (top + bottom) - 0.5 * bar;

  ShapeMask mask(width, height);
  for (int y = 0; y < height; ++y) {
    const double cy = y + 0.5;
    if (cy < top || cy >= bottom) continue;
    const bool on_bar = cy < top + bar || (cy >= mid_top && cy < mid_top + bar) || cy >= bottom - bar;
    for (int x = 0; x < width; ++x) {
      const double cx = x + 0.5;
      if (cx < left || cx >= right) continue;
      if (cx < left + bar || on_bar) mask.set(x, y, true);
    }
  }
  return mask;
}

Image texture_smooth(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image out(width, height, 1);
  // a few low-frequency plane waves with random phases plus mild grain
  struct Wave {
    double kx, ky, phase, amp;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 4; ++i) {
    const double angle = uniform_unit(rng) * std::numbers::pi;
    const double freq = 0.15 + 0.1 * uniform_unit(rng);
    waves.push_back({freq * std::cos(angle), freq * std::sin(angle),
                     2.0 * std::numbers::pi * uniform_unit(rng), 6.0 + 4.0 * uniform_unit(rng)});
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 128.0;
      for (const auto& wv : waves) v += wv.amp * std::sin(wv.kx * x + wv.ky * y + wv.phase);
      v += 8.0 * (uniform_unit(rng) - 0.5);
      out.at(x, y) = std::clamp(v, 0.0, 255.0);
    }
  }
  return out;
}

Image texture_cellular(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // flat square cells of random grey level; neighbouring cells differ strongly
  constexpr int cell = 3;
  const int cw = (width + cell - 1) / cell;
  const int ch = (height + cell - 1) / cell;
  std::vector<double> level(static_cast<std::size_t>(cw) * static_cast<std::size_t>(ch));
  for (double& v : level) v = static_cast<double>(uniform_byte(rng));
  Image out(width, height, 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.at(x, y) = level[static_cast<std::size_t>(y / cell) * static_cast<std::size_t>(cw) +
                           static_cast<std::size_t>(x / cell)];
    }
  }
  return out;
}

}  // namespace graphtex
