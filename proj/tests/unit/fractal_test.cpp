#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <graphtex/error.hpp>
#include <graphtex/fractal.hpp>
#include <graphtex/synth.hpp>

#include "oracles.hpp"

using namespace graphtex;

namespace {

// midpoint rule on a fine grid with the substitution d = t^2 (smooth integrand)
double brute_moment(double k, double q) {
  const double a = -std::log(q);
  const double tmax = std::sqrt(80.0 / a + 4.0 * k / a);
  const int n = 400000;
  const double h = tmax / n;
  long double s = 0.0L;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * h;
    s += 2.0 * t * std::pow(t * t, k) * std::exp(-a * t * t);
  }
  return static_cast<double>(s * h);
}

}  // namespace

TEST(UnitSphere, IntegerDimensions) {
  EXPECT_NEAR(unit_sphere_volume(0.0), 1.0, 1e-14);
  EXPECT_NEAR(unit_sphere_volume(1.0), 2.0, 1e-14);
  EXPECT_NEAR(unit_sphere_volume(2.0), std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_sphere_volume(3.0), 4.0 / 3.0 * std::numbers::pi, 1e-13);
  EXPECT_THROW(unit_sphere_volume(-0.1), InvalidArgument);
}

TEST(Functionals, Examples) {
  EXPECT_NEAR(ln_fv_of_dimension(0.0, 0.1).quadrature, 1.0 / std::log(10.0), 1e-9);
  EXPECT_NEAR(ln_fv_of_dimension(2.0, 0.5).quadrature, 2.0 * std::numbers::pi / std::pow(std::log(2.0), 3), 1e-7);
  for (double q : {0.2, 0.6, 0.85}) {
    EXPECT_NEAR(ln_fv_of_dimension(1.0, q, 1.7).closed_form, 2.0 * 1.7 / std::pow(std::log(q), 2), 1e-12);
  }
  EXPECT_NEAR(ln_fv_of_dimension(0.0, 0.1).printed, std::log(10.0), 1e-12);
  EXPECT_NEAR(ln_fv_of_dimension(2.0, 0.1).printed, 76.7056, 1e-4);
  EXPECT_THROW(ln_fv_of_dimension(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(ln_fp_of_dimension(1.0, 0.5, 0.0), InvalidArgument);
}

TEST(Functionals, QuadratureMatchesClosedFormAndBruteForce) {
  for (double q : {0.1, 0.5, 0.7, 0.9}) {
    for (double delta : {0.0, 0.5, 1.0, 1.5, 2.0}) {
      const FunctionalValue v = ln_fv_of_dimension(delta, q);
      const FunctionalValue p = ln_fp_of_dimension(delta, q);
      EXPECT_NEAR(v.quadrature / v.closed_form, 1.0, 1e-6) << q << " " << delta;
      EXPECT_NEAR(p.quadrature / p.closed_form, 1.0, 1e-6) << q << " " << delta;
      const double u = unit_sphere_volume(delta);
      EXPECT_NEAR(v.quadrature / (u * brute_moment(delta, q)), 1.0, 1e-6);
      EXPECT_NEAR(p.quadrature / (u * brute_moment(delta + 1.0, q)), 1.0, 1e-6);
    }
  }
}

TEST(DimensionCurve, GridAndCsv) {
  const auto grid = delta_grid(0.01);
  ASSERT_EQ(grid.size(), 201u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 2.0);
  DimensionCurve c = dimension_curve(0.5, 1.0, grid);
  std::ostringstream os;
  write_curve_csv(os, c);
  std::istringstream is(os.str());
  std::string line;
  int rows = -1;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 201);
  EXPECT_EQ(os.str().substr(0, 45), "delta,ln_fv,ln_fp,ln_fv_printed,ln_fp_printed");
  const std::vector<double> bad{0.5, 0.4};
  EXPECT_THROW(dimension_curve(0.5, 1.0, bad), InvalidArgument);
  const std::vector<double> out{2.5};
  EXPECT_THROW(dimension_curve(0.5, 1.0, out), InvalidArgument);
}

TEST(SphereGrowth, ConstantImage) {
  Image u(41, 41, 1, 9.0);
  PatchGraph g = euclidean_patch_graph(u, {20, 20}, 12.0, 0.1);
  const auto radii = radius_grid(1.0, 30.0, 0.5);
  SphereGrowthSample s = sphere_growth(g, radii);
  EXPECT_EQ(s.volumes.front(), 5.0);
  for (std::size_t i = 1; i < s.volumes.size(); ++i) EXPECT_GE(s.volumes[i], s.volumes[i - 1]);
  EXPECT_EQ(s.volumes.back(), static_cast<double>(g.size()));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 12.0) EXPECT_EQ(s.volumes[i], oracle::chamfer_ball_count(radii[i])) << radii[i];
  }
}

TEST(FitDimension, ExactPowerLaw) {
  for (double delta : {0.3, 1.0, 1.7, 2.0}) {
    SphereGrowthSample s;
    for (double d = 1.0; d <= 12.0; d += 0.5) {
      s.radii.push_back(d);
      s.volumes.push_back(3.7 * std::pow(d, delta));
    }
    EXPECT_NEAR(fit_local_dimension(s, 3.0, 10.0), delta, 1e-9);
  }
  SphereGrowthSample few{{1.0, 2.0, 20.0}, {1.0, 4.0, 400.0}};
  EXPECT_THROW(fit_local_dimension(few, 1.5, 10.0), InvalidArgument);
}

TEST(FitDimension, Fixtures) {
  GrowthOptions opt;
  opt.stride = 4;
  Image flat(64, 64, 1, 50.0);
  const double d_const = mean_local_dimension(flat, opt);
  EXPECT_NEAR(d_const, 1.915, 0.01);

  Image stripes = synth_stripe_noise(64, 64, ShapeMask(64, 64, true), 2, StripeOrientation::horizontal, 1);
  const double d_corr = mean_local_dimension(stripes, opt);
  EXPECT_NEAR(d_corr, 0.945, 0.01);

  GrowthOptions noisy = opt;
  noisy.beta = 10.0;
  Image noise = synth_stripe_noise(64, 64, ShapeMask(64, 64, false), 2, StripeOrientation::horizontal, 5);
  EXPECT_LT(mean_local_dimension(noise, noisy), 0.5);
}

TEST(FitDimension, ThreadIndependent) {
  GrowthOptions opt;
  opt.stride = 7;
  opt.beta = 1.0;
  std::mt19937_64 rng(6);
  Image u(40, 40);
  for (double& v : u.data()) v = static_cast<double>(rng() >> 61);
  EXPECT_EQ(mean_local_dimension(u, opt, 1), mean_local_dimension(u, opt, 3));
}
