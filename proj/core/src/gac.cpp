#include "graphtex/gac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "graphtex/distance_transform.hpp"
#include "graphtex/error.hpp"
#include "graphtex/filters.hpp"

namespace graphtex {

namespace {

constexpr double kCurvatureEps = 1e-10;

bool same_size(const Image& a, const Image& b) {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace

EdgeMap::EdgeMap(Image g, double lambda, double sigma)
    : g_(std::move(g)), lambda_(lambda), sigma_(sigma) {
  if (g_.channels() != 1) throw InvalidArgument("edge map must be single-channel");
  for (double v : g_.data()) {
    if (!(v > 0.0 && v <= 1.0)) throw InvalidArgument("edge map values must lie in (0,1]");
  }
  const int w = g_.width();
  const int h = g_.height();
  gx_ = Image(w, h, 1);
  gy_ = Image(w, h, 1);
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      gx_.at(x, y) = 0.5 * (g_.at(xp, y) - g_.at(xm, y));
      gy_.at(x, y) = 0.5 * (g_.at(x, yp) - g_.at(x, ym));
    }
  }
}

EdgeMap edge_map(const Image& f, double sigma, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (sigma < 0.0) throw InvalidArgument("sigma must be non-negative");
  const Image fs = gaussian_smooth(f, sigma);
  const int w = fs.width();
  const int h = fs.height();
  Image g(w, h, 1);
  const double inv_l2 = 1.0 / (lambda * lambda);
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      double s2 = 0.0;
      for (int c = 0; c < fs.channels(); ++c) {
        const double fx = 0.5 * (fs.at(xp, y, c) - fs.at(xm, y, c));
        const double fy = 0.5 * (fs.at(x, yp, c) - fs.at(x, ym, c));
        s2 += fx * fx + fy * fy;
      }
      g.at(x, y) = 1.0 / (1.0 + s2 * inv_l2);
    }
  }
  return EdgeMap(std::move(g), lambda, sigma);
}

void GacParams::validate() const {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (reinit_every < 1) throw InvalidArgument("reinit_every must be at least 1");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (steady_window < 1) throw InvalidArgument("steady_window must be at least 1");
  if (!std::isfinite(nu)) throw InvalidArgument("nu must be finite");
}

ShapeMask contour_region(const ContourSpec& spec, int width, int height) {
  ShapeMask mask(width, height);
  if (const auto* c = std::get_if<CircleContour>(&spec)) {
    if (!(c->radius > 0.0)) throw InvalidArgument("circle radius must be positive");
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        mask.set(x, y, std::hypot(x - c->cx, y - c->cy) - c->radius < 0.0);
      }
    }
  } else if (const auto* r = std::get_if<RectangleContour>(&spec)) {
    for (int y = std::max(0, r->y0); y <= std::min(height - 1, r->y1); ++y) {
      for (int x = std::max(0, r->x0); x <= std::min(width - 1, r->x1); ++x) mask.set(x, y, true);
    }
  } else {
    const auto& m = std::get<ShapeMask>(spec);
    if (m.width() != width || m.height() != height) {
      throw InvalidArgument("contour mask dimension mismatch");
    }
    mask = m;
  }
  const std::size_t inside = mask.inside_count();
  if (inside == 0) throw InvalidArgument("initial contour has an empty interior");
  if (inside == mask.pixel_count()) throw InvalidArgument("initial contour must lie inside the domain");
  return mask;
}

LevelSetField signed_distance(const ContourSpec& spec, int width, int height) {
  const ShapeMask region = contour_region(spec, width, height);
  if (const auto* c = std::get_if<CircleContour>(&spec)) {
    Image u(width, height, 1);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) u.at(x, y) = std::hypot(x - c->cx, y - c->cy) - c->radius;
    }
    return {std::move(u), 0.0};
  }
  return {signed_distance_from_mask(region), 0.0};
}

LevelSetField gac_step(const LevelSetField& field, const EdgeMap& e, const GacParams& params) {
  const Image& u = field.u;
  if (!same_size(u, e.g())) throw InvalidArgument("level set and edge map sizes differ");
  const int w = u.width();
  const int h = u.height();
  const double tau = params.tau;
  const double nu = params.nu;

  LevelSetField next{Image(w, h, 1), field.time + tau};
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      const double c = u.at(x, y);
      const double l = u.at(xm, y);
      const double r = u.at(xp, y);
      const double d = u.at(x, ym);
      const double t = u.at(x, yp);

      const double ux = 0.5 * (r - l);
      const double uy = 0.5 * (t - d);
      const double uxx = r - 2.0 * c + l;
      const double uyy = t - 2.0 * c + d;
      const double uxy = 0.25 * (u.at(xp, yp) - u.at(xp, ym) - u.at(xm, yp) + u.at(xm, ym));
      const double grad2 = ux * ux + uy * uy;
      // at a critical point use the radial limit 0.5 * laplacian, else isolated extrema never move
      const double curvature = grad2 > kCurvatureEps
                                   ? (uxx * uy * uy - 2.0 * ux * uy * uxy + uyy * ux * ux) / (grad2 + kCurvatureEps)
                                   : 0.5 * (uxx + uyy);

      const double g = e.g().at(x, y);
      const double gx = e.gx().at(x, y);
      const double gy = e.gy().at(x, y);

      const double dxm = c - l;  // backward
      const double dxp = r - c;  // forward
      const double dym = c - d;
      const double dyp = t - c;

      // <grad g, grad u>: forward difference where the g-gradient component is positive
      const double transport = gx * (gx > 0.0 ? dxp : dxm) + gy * (gy > 0.0 ? dyp : dym);

      // u_t = nu g |grad u| is u_t + S |grad u| = 0 with speed S = -nu g
      const double speed = -nu * g;
      double force = 0.0;
      if (speed > 0.0) {
        const double grad_plus = std::sqrt(std::pow(std::max(dxm, 0.0), 2) + std::pow(std::min(dxp, 0.0), 2) +
                                           std::pow(std::max(dym, 0.0), 2) + std::pow(std::min(dyp, 0.0), 2));
        force = -speed * grad_plus;
      } else if (speed < 0.0) {
        const double grad_minus = std::sqrt(std::pow(std::min(dxm, 0.0), 2) + std::pow(std::max(dxp, 0.0), 2) +
                                            std::pow(std::min(dym, 0.0), 2) + std::pow(std::max(dyp, 0.0), 2));
        force = -speed * grad_minus;
      }

      next.u.at(x, y) = c + tau * (g * curvature + transport + force);
    }
  }
  return next;
}

ShapeMask interior_mask(const LevelSetField& field) {
  const Image& u = field.u;
  ShapeMask m(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y) {
    for (int x = 0; x < u.width(); ++x) m.set(x, y, u.at(x, y) < 0.0);
  }
  return m;
}

LevelSetField reinitialize(const LevelSetField& field) {
  const ShapeMask mask = interior_mask(field);
  const std::size_t inside = mask.inside_count();
  if (inside == 0 || inside == mask.pixel_count()) throw ContourVanished(-1);

  const Image& u = field.u;
  const int w = u.width();
  const int h = u.height();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);

  // interface pixels and the sub-pixel foot point of each (one Newton step onto u = 0)
  std::vector<char> front(n, 0);
  std::vector<double> fx(n), fy(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool in = mask.inside(x, y);
      const bool edge = (x > 0 && mask.inside(x - 1, y) != in) || (x + 1 < w && mask.inside(x + 1, y) != in) ||
                        (y > 0 && mask.inside(x, y - 1) != in) || (y + 1 < h && mask.inside(x, y + 1) != in);
      if (!edge) continue;
      const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
      front[i] = 1;
      const double gx = 0.5 * (u.at(reflect_index(x + 1, w), y) - u.at(reflect_index(x - 1, w), y));
      const double gy = 0.5 * (u.at(x, reflect_index(y + 1, h)) - u.at(x, reflect_index(y - 1, h)));
      const double g2 = gx * gx + gy * gy;
      double sx = 0.0;
      double sy = 0.0;
      if (g2 > kCurvatureEps) {
        sx = -u.at(x, y) * gx / g2;
        sy = -u.at(x, y) * gy / g2;
        const double len = std::hypot(sx, sy);
        if (len > 1.0) {
          sx /= len;
          sy /= len;
        }
      }
      fx[i] = x + sx;
      fy[i] = y + sy;
    }
  }

  const std::vector<int> nearest = nearest_feature(front, w, h);
  LevelSetField out{Image(w, h, 1), field.time};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
      // the nearest interface pixel and its 8 neighbours compete by foot-point distance
      const int q = nearest[i];
      const int qx = q % w;
      const int qy = q / w;
      double best = std::numeric_limits<double>::infinity();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int cx = qx + dx;
          const int cy = qy + dy;
          if (cx < 0 || cy < 0 || cx >= w || cy >= h) continue;
          const auto j = static_cast<std::size_t>(cy) * static_cast<std::size_t>(w) + static_cast<std::size_t>(cx);
          if (front[j]) best = std::min(best, std::hypot(x - fx[j], y - fy[j]));
        }
      }
      out.u.at(x, y) = mask.inside(x, y) ? -std::max(best, 1e-9) : best;
    }
  }
  return out;
}

GacResult run_gac(LevelSetField u0, const EdgeMap& e, const GacParams& params, const GacObserver& observer) {
  params.validate();
  if (!same_size(u0.u, e.g())) throw InvalidArgument("level set and edge map sizes differ");

  GacResult result;
  result.field = std::move(u0);
  result.mask = interior_mask(result.field);
  const std::size_t total = result.mask.pixel_count();
  if (result.mask.inside_count() == 0 || result.mask.inside_count() == total) throw ContourVanished(0);

  int unchanged = 0;
  for (long it = 1; it <= params.max_iters; ++it) {
    result.field = gac_step(result.field, e, params);
    ShapeMask mask = interior_mask(result.field);
    const std::size_t area = mask.inside_count();
    if (area == 0 || area == total) throw ContourVanished(it);
    if (it % params.reinit_every == 0) result.field = reinitialize(result.field);

    std::size_t changed = 0;
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) changed += mask.inside(x, y) != result.mask.inside(x, y);
    }
    result.mask = std::move(mask);
    result.iterations = it;
    if (changed > 0) {
      unchanged = 0;
      result.last_change = it;
    } else {
      ++unchanged;
    }
    if (observer) observer({it, result.field.time, area, changed}, result.field);
    if (unchanged >= params.steady_window) {
      result.steady = true;
      break;
    }
  }
  return result;
}

double jaccard(const ShapeMask& a, const ShapeMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw InvalidArgument("jaccard: dimension mismatch");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      inter += a.inside(x, y) && b.inside(x, y);
      uni += a.inside(x, y) || b.inside(x, y);
    }
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double pixel_accuracy(const ShapeMask& a, const ShapeMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw InvalidArgument("accuracy: dimension mismatch");
  std::size_t same = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) same += a.inside(x, y) == b.inside(x, y);
  }
  return static_cast<double>(same) / static_cast<double>(a.pixel_count());
}

Image overlay_contour(const Image& background, const ShapeMask& mask) {
  if (background.width() != mask.width() || background.height() != mask.height()) {
    throw InvalidArgument("overlay: dimension mismatch");
  }
  const Image grey = rescale(background.channel(0), 0.0, 255.0);
  Image out(mask.width(), mask.height(), 3);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      bool edge = false;
      if (mask.inside(x, y)) {
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (mask.contains(nx, ny) && !mask.inside(nx, ny)) edge = true;
        }
      }
      const double v = std::round(grey.at(x, y));
      out.at(x, y, 0) = edge ? 255.0 : v;
      out.at(x, y, 1) = edge ? 0.0 : v;
      out.at(x, y, 2) = edge ? 0.0 : v;
    }
  }
  return out;
}

}  // namespace graphtex
