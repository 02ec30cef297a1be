#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "graphtex/image.hpp"
#include "graphtex/patch_graph.hpp"

namespace graphtex {

/// Volume of the unit ball in dimension delta: pi^(delta/2) / Gamma(delta/2 + 1).
double unit_sphere_volume(double delta);

/// Exponent of f^V or f^P for a homogeneous space of dimension delta with
/// sphere volumes s(d) = U(delta) d^delta.
struct FunctionalValue {
  double quadrature;   ///< M * integral evaluated numerically
  double closed_form;  ///< M * U Gamma(k+1) (-ln q)^-(k+1)
  double printed;      ///< M * U Gamma(k+1) (-ln q)^(k+1), positive-power convention
};

/// ln f^V = M * int_0^inf q^d s(d) dd.
FunctionalValue ln_fv_of_dimension(double delta, double q, double M = 1.0);
/// ln f^P = M * int_0^inf q^d d s(d) dd.
FunctionalValue ln_fp_of_dimension(double delta, double q, double M = 1.0);

struct DimensionPoint {
  double delta;
  double ln_fv;  ///< quadrature
  double ln_fp;  ///< quadrature
  double ln_fv_printed;
  double ln_fp_printed;
};

struct DimensionCurve {
  double q;
  double M;
  std::vector<DimensionPoint> samples;
};

/// Evenly spaced grid 0, step, ..., 2 (the end point is included).
std::vector<double> delta_grid(double step);

DimensionCurve dimension_curve(double q, double M, std::span<const double> grid);

/// CSV with header delta,ln_fv,ln_fp,ln_fv_printed,ln_fp_printed.
void write_curve_csv(std::ostream& os, const DimensionCurve& curve);

struct SphereGrowthSample {
  std::vector<double> radii;
  std::vector<double> volumes;
};

/// Number of vertices within graph distance d of the centre, for each d in radii.
SphereGrowthSample sphere_growth(const PatchGraph& g, std::span<const double> radii);
/// Same from precomputed centre distances (e.g. a Dijkstra tree).
SphereGrowthSample sphere_growth(std::span<const double> distances, std::span<const double> radii);

/// CSV with header d,volume.
void write_growth_csv(std::ostream& os, const SphereGrowthSample& s);

/// Least-squares slope of log volume against log d over samples with
/// dmin <= d <= dmax. Needs at least three such samples with positive radius.
double fit_local_dimension(const SphereGrowthSample& s, double dmin, double dmax);

/// Radii lo, lo + step, ..., hi.
std::vector<double> radius_grid(double lo, double hi, double step);

struct GrowthOptions {
  double rho = 12.0;
  double beta = 0.1;
  Neighborhood nbhd = Neighborhood::eight;
  std::vector<double> radii = radius_grid(1.0, 12.0, 0.5);
  double fit_min = 3.0;
  double fit_max = 10.0;
  int stride = 1;
};

/// Fitted dimension of the amoeba around p.
double local_dimension_at(const Image& u, Pixel p, const GrowthOptions& opt);

/// Mean fitted dimension over centres at least ceil(rho) away from the border,
/// sampled every `stride` pixels.
double mean_local_dimension(const Image& u, const GrowthOptions& opt, unsigned threads = 0);

}  // namespace graphtex
