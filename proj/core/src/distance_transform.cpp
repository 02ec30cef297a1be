#include "graphtex/distance_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphtex/error.hpp"

namespace graphtex {

namespace {

constexpr double kFar = 1e20;

// 1-D squared distance transform of sampled function f (lower envelope of parabolas).
// `arg`, when given, receives the index of the minimising sample.
void transform_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                  std::vector<double>& z, std::vector<int>* arg = nullptr) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  auto intersect = [&](int q, int p) {
    return ((f[static_cast<std::size_t>(q)] + q * static_cast<double>(q)) -
            (f[static_cast<std::size_t>(p)] + p * static_cast<double>(p))) /
           (2.0 * (q - p));
  };
  for (int q = 1; q < n; ++q) {
    // z[0] is -inf, so the loop always stops at k = 0
    double s = intersect(q, v[static_cast<std::size_t>(k)]);
    while (s <= z[static_cast<std::size_t>(k)]) {
      --k;
      s = intersect(q, v[static_cast<std::size_t>(k)]);
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
    const int p = v[static_cast<std::size_t>(k)];
    const double dq = q - p;
    d[static_cast<std::size_t>(q)] = dq * dq + f[static_cast<std::size_t>(p)];
    if (arg) (*arg)[static_cast<std::size_t>(q)] = p;
  }
}

}  // namespace

std::vector<double> squared_distance_transform(const std::vector<char>& feature, int width, int height) {
  const auto w = static_cast<std::size_t>(width);
  const auto h = static_cast<std::size_t>(height);
  if (feature.size() != w * h) throw InvalidArgument("feature map size mismatch");

  std::vector<double> grid(w * h);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = feature[i] ? 0.0 : kFar;

  const std::size_t longest = std::max(w, h);
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest);

  f.resize(h);
  d.resize(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) f[y] = grid[y * w + x];
    transform_1d(f, d, v, z);
    for (std::size_t y = 0; y < h; ++y) grid[y * w + x] = d[y];
  }
  f.resize(w);
  d.resize(w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) f[x] = grid[y * w + x];
    transform_1d(f, d, v, z);
    for (std::size_t x = 0; x < w; ++x) grid[y * w + x] = d[x];
  }
  for (double& g : grid) {
    if (g >= kFar * 0.5) g = std::numeric_limits<double>::infinity();
  }
  return grid;
}

std::vector<int> nearest_feature(const std::vector<char>& feature, int width, int height) {
  const auto w = static_cast<std::size_t>(width);
  const auto h = static_cast<std::size_t>(height);
  if (feature.size() != w * h) throw InvalidArgument("feature map size mismatch");
  if (std::none_of(feature.begin(), feature.end(), [](char c) { return c != 0; })) {
    return std::vector<int>(w * h, -1);
  }

  // column pass: squared distance and row of the nearest feature in the same column
  std::vector<double> grid(w * h);
  std::vector<int> row(w * h);
  const std::size_t longest = std::max(w, h);
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest), arg(longest);

  f.resize(h);
  d.resize(h);
  arg.resize(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) f[y] = feature[y * w + x] ? 0.0 : kFar;
    transform_1d(f, d, v, z, &arg);
    for (std::size_t y = 0; y < h; ++y) {
      grid[y * w + x] = d[y];
      row[y * w + x] = arg[y];
    }
  }
  std::vector<int> out(w * h);
  f.resize(w);
  d.resize(w);
  arg.resize(w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) f[x] = grid[y * w + x];
    transform_1d(f, d, v, z, &arg);
    for (std::size_t x = 0; x < w; ++x) {
      const auto col = static_cast<std::size_t>(arg[x]);
      out[y * w + x] = row[y * w + col] * width + static_cast<int>(col);
    }
  }
  return out;
}

Image signed_distance_from_mask(const ShapeMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  std::vector<char> inside(n), outside(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
      inside[i] = mask.inside(x, y) ? 1 : 0;
      outside[i] = inside[i] ? 0 : 1;
    }
  }
  const std::size_t count_in = mask.inside_count();
  if (count_in == 0 || count_in == n) {
    throw InvalidArgument("signed distance needs both inside and outside pixels");
  }
  const auto to_inside = squared_distance_transform(inside, w, h);
  const auto to_outside = squared_distance_transform(outside, w, h);
  Image out(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
      out.at(x, y) = inside[i] ? -(std::sqrt(to_outside[i]) - 0.5) : std::sqrt(to_inside[i]) - 0.5;
    }
  }
  return out;
}

}  // namespace graphtex
