#pragma once

#include <cstdint>

#include "graphtex/image.hpp"

namespace graphtex {

enum class StripeOrientation { horizontal, vertical };

/// texA where the mask is inside, texB elsewhere.
Image synth_compose(const Image& tex_a, const Image& tex_b, const ShapeMask& mask);

/// Binary 0/255 stripes of the given period inside the mask and i.i.d. uniform
/// integer noise in [0, 255] outside it. Vertical stripes vary along x.
Image synth_stripe_noise(int width, int height, const ShapeMask& mask, int period,
                         StripeOrientation orientation, std::uint64_t seed);

/// Block letter 'E' filling the central 60% of the canvas. The vertical bar
/// and the three horizontal bars are all 1/7 of the letter height thick.
ShapeMask letter_e_mask(int width, int height);

/// Deterministic stand-in textures for the two-texture composite.
///
/// `smooth` is a low-contrast texture of gently varying intensity;
/// `cellular` is a high-contrast patchwork of small flat cells.
Image texture_smooth(int width, int height, std::uint64_t seed);
Image texture_cellular(int width, int height, std::uint64_t seed);

}  // namespace graphtex
