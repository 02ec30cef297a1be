#pragma once

#include <cstddef>
#include <functional>
#include <variant>

#include "graphtex/image.hpp"

namespace graphtex {

/// Perona-Malik edge-stopping map g = 1 / (1 + |D f_sigma|^2 / lambda^2),
/// together with its central-difference gradient.
class EdgeMap {
 public:
  /// Wraps precomputed values; every value must lie in (0, 1].
  EdgeMap(Image g, double lambda, double sigma);

  const Image& g() const noexcept { return g_; }
  const Image& gx() const noexcept { return gx_; }
  const Image& gy() const noexcept { return gy_; }
  double lambda() const noexcept { return lambda_; }
  double sigma() const noexcept { return sigma_; }
  int width() const noexcept { return g_.width(); }
  int height() const noexcept { return g_.height(); }

 private:
  Image g_;
  Image gx_;
  Image gy_;
  double lambda_;
  double sigma_;
};

/// Smooths every channel, sums squared central-difference gradients over the
/// channels (Frobenius norm of the Jacobian) and applies the Perona-Malik function.
EdgeMap edge_map(const Image& f, double sigma, double lambda);

/// Level-set function; the contour is its zero level set, u < 0 inside.
struct LevelSetField {
  Image u;
  double time = 0.0;
};

struct GacParams {
  double nu = -1.0;  ///< force; negative values push the contour outward
  double tau = 0.1;
  int reinit_every = 100;
  long max_iters = 20000;
  int steady_window = 100;

  void validate() const;
};

struct CircleContour {
  double cx;
  double cy;
  double radius;
};

/// Axis-aligned rectangle of pixels, corners inclusive.
struct RectangleContour {
  int x0;
  int y0;
  int x1;
  int y1;
};

using ContourSpec = std::variant<CircleContour, RectangleContour, ShapeMask>;

/// Pixels of the region enclosed by the contour.
ShapeMask contour_region(const ContourSpec& spec, int width, int height);

/// Signed distance embedding of an initial contour: exact |x - c| - R for
/// circles, the mask distance transform for rectangles and masks.
LevelSetField signed_distance(const ContourSpec& spec, int width, int height);

/// One explicit Euler step of
///   u_t = g |grad u| div(grad u / |grad u|) + <grad g, grad u> + nu g |grad u|
/// with central differences for curvature and upwinding for the other terms.
LevelSetField gac_step(const LevelSetField& field, const EdgeMap& e, const GacParams& params);

/// Replaces u by the signed distance of its current zero level set (mask u < 0).
/// Throws ContourVanished when only one sign is present.
LevelSetField reinitialize(const LevelSetField& field);

/// Pixels with u < 0.
ShapeMask interior_mask(const LevelSetField& field);

struct IterationRecord {
  long iteration;
  double time;
  std::size_t area;
  std::size_t changed;
};

struct GacResult {
  LevelSetField field;
  ShapeMask mask;
  long iterations = 0;
  bool steady = false;
  /// Last iteration at which the interior mask changed.
  long last_change = 0;
};

using GacObserver = std::function<void(const IterationRecord&, const LevelSetField&)>;

/// Iterates gac_step, reinitialising every reinit_every steps, until the mask
/// is unchanged for steady_window iterations or max_iters is reached.
/// Throws ContourVanished (with the iteration) if the interior empties or fills the domain.
GacResult run_gac(LevelSetField u0, const EdgeMap& e, const GacParams& params,
                  const GacObserver& observer = {});

/// |a ∩ b| / |a ∪ b|; two empty masks score 1.
double jaccard(const ShapeMask& a, const ShapeMask& b);

/// Fraction of pixels with equal labels.
double pixel_accuracy(const ShapeMask& a, const ShapeMask& b);

/// RGB rendering of `background` (channel 0, rescaled to [0,255]) with the
/// inner boundary of `mask` drawn in red.
Image overlay_contour(const Image& background, const ShapeMask& mask);

}  // namespace graphtex
