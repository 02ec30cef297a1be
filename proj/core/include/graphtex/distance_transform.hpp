#pragma once

#include <vector>

#include "graphtex/image.hpp"

namespace graphtex {

/// Exact squared Euclidean distance from every pixel to the nearest pixel with
/// feature[i] != 0 (separable lower-envelope transform, one pass per axis).
/// Pixels with no feature anywhere get +infinity.
std::vector<double> squared_distance_transform(const std::vector<char>& feature, int width, int height);

/// Row-major index of a nearest feature pixel for every pixel, -1 when there is none.
std::vector<int> nearest_feature(const std::vector<char>& feature, int width, int height);

/// Signed distance of a mask: inside pixels get -(d - 1/2), outside pixels
/// +(d - 1/2), with d the distance to the nearest pixel of the opposite label.
/// Pixels 4-adjacent to the boundary thus sit at -0.5 / +0.5.
Image signed_distance_from_mask(const ShapeMask& mask);

}  // namespace graphtex
