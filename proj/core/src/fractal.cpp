#include "graphtex/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "graphtex/error.hpp"
#include "graphtex/parallel.hpp"

namespace graphtex {

namespace {

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("q must lie in (0,1)");
}

void check_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("delta must be non-negative");
}

// int_0^inf q^d d^k dd by double-exponential quadrature (endpoint behaviour of d^k is fine).
double power_moment(double k, double q) {
  const double a = -std::log(q);
  auto f = [&](double d) { return d <= 0.0 ? (k == 0.0 ? 1.0 : 0.0) : std::exp(k * std::log(d) - a * d); };
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-12, &err);
}

FunctionalValue evaluate(double k, double delta, double q, double M) {
  check_delta(delta);
  check_q(q);
  if (!(M > 0.0)) throw InvalidArgument("M must be positive");
  const double a = -std::log(q);
  const double u = unit_sphere_volume(delta);
  const double g = std::tgamma(k + 1.0);
  return {M * u * power_moment(k, q), M * u * g * std::pow(a, -(k + 1.0)), M * u * g * std::pow(a, k + 1.0)};
}

}  // namespace

double unit_sphere_volume(double delta) {
  check_delta(delta);
  return std::pow(std::numbers::pi, 0.5 * delta) / std::tgamma(0.5 * delta + 1.0);
}

FunctionalValue ln_fv_of_dimension(double delta, double q, double M) { return evaluate(delta, delta, q, M); }

FunctionalValue ln_fp_of_dimension(double delta, double q, double M) {
  return evaluate(delta + 1.0, delta, q, M);
}

std::vector<double> delta_grid(double step) {
  if (!(step > 0.0 && step <= 2.0)) throw InvalidArgument("delta step must lie in (0,2]");
  const long n = std::lround(2.0 / step);
  if (std::abs(n * step - 2.0) > 1e-9) throw InvalidArgument("delta step must divide 2");
  std::vector<double> grid;
  for (long i = 0; i <= n; ++i) grid.push_back(2.0 * static_cast<double>(i) / static_cast<double>(n));
  return grid;
}

DimensionCurve dimension_curve(double q, double M, std::span<const double> grid) {
  DimensionCurve curve{q, M, {}};
  double prev = -1.0;
  for (double delta : grid) {
    if (!(delta >= 0.0 && delta <= 2.0)) throw InvalidArgument("delta grid must lie within [0,2]");
    if (!(delta > prev)) throw InvalidArgument("delta grid must be strictly increasing");
    prev = delta;
    const FunctionalValue v = ln_fv_of_dimension(delta, q, M);
    const FunctionalValue p = ln_fp_of_dimension(delta, q, M);
    curve.samples.push_back({delta, v.quadrature, p.quadrature, v.printed, p.printed});
  }
  return curve;
}

void write_curve_csv(std::ostream& os, const DimensionCurve& curve) {
  char line[160];
  os << "delta,ln_fv,ln_fp,ln_fv_printed,ln_fp_printed\n";
  for (const auto& s : curve.samples) {
    std::snprintf(line, sizeof line, "%.2f,%.10g,%.10g,%.10g,%.10g\n", s.delta, s.ln_fv, s.ln_fp,
                  s.ln_fv_printed, s.ln_fp_printed);
    os << line;
  }
}

SphereGrowthSample sphere_growth(std::span<const double> distances, std::span<const double> radii) {
  SphereGrowthSample s;
  std::vector<double> sorted(distances.begin(), distances.end());
  std::sort(sorted.begin(), sorted.end());
  double prev = -std::numeric_limits<double>::infinity();
  for (double d : radii) {
    if (!(d > prev)) throw InvalidArgument("radii must be strictly increasing");
    prev = d;
    const auto n = std::upper_bound(sorted.begin(), sorted.end(), d + 1e-9) - sorted.begin();
    s.radii.push_back(d);
    s.volumes.push_back(static_cast<double>(n));
  }
  return s;
}

SphereGrowthSample sphere_growth(const PatchGraph& g, std::span<const double> radii) {
  const std::vector<double> dist = distances_from(g, 0);
  for (double d : dist) {
    if (!std::isfinite(d)) throw InvalidArgument("sphere growth needs a connected graph");
  }
  return sphere_growth(std::span<const double>(dist), radii);
}

void write_growth_csv(std::ostream& os, const SphereGrowthSample& s) {
  char line[96];
  os << "d,volume\n";
  for (std::size_t i = 0; i < s.radii.size(); ++i) {
    std::snprintf(line, sizeof line, "%.6g,%.0f\n", s.radii[i], s.volumes[i]);
    os << line;
  }
}

double fit_local_dimension(const SphereGrowthSample& s, double dmin, double dmax) {
  if (s.radii.size() != s.volumes.size()) throw InvalidArgument("growth sample size mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < s.radii.size(); ++i) {
    const double d = s.radii[i];
    if (d < dmin || d > dmax || !(d > 0.0) || !(s.volumes[i] > 0.0)) continue;
    lx.push_back(std::log(d));
    ly.push_back(std::log(s.volumes[i]));
  }
  if (lx.size() < 3) throw InvalidArgument("insufficient samples in fit range");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("insufficient samples in fit range");
  return sxy / sxx;
}

std::vector<double> radius_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !(lo > 0.0)) throw InvalidArgument("bad radius grid");
  std::vector<double> r;
  const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) r.push_back(lo + step * static_cast<double>(i));
  return r;
}

double local_dimension_at(const Image& u, Pixel p, const GrowthOptions& opt) {
  const AdaptivePatch patch = adaptive_patch_graph(u, p, opt.rho, opt.beta, opt.nbhd);
  return fit_local_dimension(sphere_growth(std::span<const double>(patch.tree.dist), opt.radii), opt.fit_min,
                             opt.fit_max);
}

double mean_local_dimension(const Image& u, const GrowthOptions& opt, unsigned threads) {
  if (opt.stride < 1) throw InvalidArgument("stride must be at least 1");
  const int margin = static_cast<int>(std::ceil(opt.rho));
  std::vector<Pixel> centres;
  for (int y = margin; y < u.height() - margin; y += opt.stride) {
    for (int x = margin; x < u.width() - margin; x += opt.stride) centres.push_back({x, y});
  }
  if (centres.empty()) throw InvalidArgument("image too small for the growth radius");
  std::vector<double> out(centres.size());
  parallel_for(static_cast<int>(centres.size()), threads,
               [&](int i) { out[static_cast<std::size_t>(i)] = local_dimension_at(u, centres[static_cast<std::size_t>(i)], opt); });
  double sum = 0.0;
  for (double v : out) sum += v;
  return sum / static_cast<double>(out.size());
}

}  // namespace graphtex
