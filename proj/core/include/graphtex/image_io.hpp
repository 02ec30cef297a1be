#pragma once

#include <filesystem>

#include "graphtex/image.hpp"

namespace graphtex {

enum class ImageFormat { pgm, png, f64raw };

/// Picks a format from the file extension (.pgm, .png, .f64/.raw).
ImageFormat format_from_path(const std::filesystem::path& path);

struct LoadOptions {
  /// Convert RGB input to a single luma channel (0.299 R + 0.587 G + 0.114 B).
  bool grayscale = true;
};

/// Reads P2/P5 PGM, 8/16-bit gray/RGB PNG, or the f64raw interchange format.
/// PGM and PNG intensities are mapped to reals in [0, 255].
/// Throws IoError on unreadable or malformed input.
Image load_image(const std::filesystem::path& path, ImageFormat format,
                 const LoadOptions& options = {});
Image load_image(const std::filesystem::path& path, const LoadOptions& options = {});

/// f64raw: "TGF1", then width, height, channels as little-endian u32, then
/// row-major little-endian doubles. PGM/PNG round to the nearest integer and
/// reject values outside [0, 255].
void save_image(const Image& img, const std::filesystem::path& path, ImageFormat format);
void save_image(const Image& img, const std::filesystem::path& path);

}  // namespace graphtex
