#pragma once

#include <vector>

#include "graphtex/image.hpp"

namespace graphtex {

/// Affine map sending min(img) to lo and max(img) to hi over all channels.
/// A constant image maps to (lo + hi) / 2.
Image rescale(const Image& img, double lo, double hi);

/// Normalized sampled Gaussian, radius ceil(3 sigma), index 0 is offset -radius.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian convolution per channel with mirrored boundary.
/// sigma == 0 returns the input unchanged.
Image gaussian_smooth(const Image& img, double sigma);

/// Mirror an index into [0, n) with the half-sample symmetric rule
/// (-1 -> 0, n -> n - 1), repeating for offsets larger than n.
int reflect_index(int i, int n) noexcept;

}  // namespace graphtex
