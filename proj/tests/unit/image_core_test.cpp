#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <fstream>

#include <graphtex/error.hpp>
#include <graphtex/filters.hpp>
#include <graphtex/image.hpp>
#include <graphtex/image_io.hpp>
#include <graphtex/synth.hpp>

#include "oracles.hpp"

using namespace graphtex;

namespace {

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  f << s;
}

}  // namespace

TEST(Image, RejectsBadShapes) {
  EXPECT_THROW(Image(0, 3), InvalidArgument);
  EXPECT_THROW(Image(3, 3, 0), InvalidArgument);
  EXPECT_THROW(Image(2, 2, 1, std::vector<double>(3)), InvalidArgument);
  EXPECT_THROW(Image(1, 1, 1, std::vector<double>{NAN}), InvalidArgument);
}

TEST(Image, InterleavedLayout) {
  Image img(2, 2, 3);
  img.at(1, 0, 2) = 7.0;
  EXPECT_EQ(img.data()[5], 7.0);
  EXPECT_EQ(img.channel(2).at(1, 0), 7.0);
}

TEST(ImageIo, AsciiPgmRowMajor) {
  auto dir = oracle::scratch_dir("pgm_ascii");
  write_text(dir / "a.pgm", "P2\n# comment\n2 2\n255\n0 255\n128 64\n");
  Image img = load_image(dir / "a.pgm");
  ASSERT_EQ(img.width(), 2);
  EXPECT_EQ(img.at(0, 0), 0.0);
  EXPECT_EQ(img.at(1, 0), 255.0);
  EXPECT_EQ(img.at(0, 1), 128.0);
  EXPECT_EQ(img.at(1, 1), 64.0);
}

TEST(ImageIo, TruncatedPgmBody) {
  auto dir = oracle::scratch_dir("pgm_trunc");
  write_text(dir / "t.pgm", std::string("P5\n4 4\n255\n") + std::string(5, '\x10'));
  try {
    load_image(dir / "t.pgm");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed image payload"), std::string::npos);
  }
}

TEST(ImageIo, BadHeaderAndMissingFile) {
  auto dir = oracle::scratch_dir("pgm_bad");
  write_text(dir / "h.pgm", "P7\n1 1\n255\n0\n");
  EXPECT_THROW(load_image(dir / "h.pgm"), IoError);
  EXPECT_THROW(load_image(dir / "nope.pgm"), IoError);
}

TEST(ImageIo, RoundTripIntegerImages) {
  auto dir = oracle::scratch_dir("roundtrip");
  Image img(5, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 5; ++x) img.at(x, y) = (x * 37 + y * 91) % 256;
  for (const char* name : {"r.pgm", "r.png", "r.f64"}) {
    save_image(img, dir / name);
    EXPECT_EQ(load_image(dir / name), img) << name;
  }
}

TEST(ImageIo, F64RawExactAndSized) {
  auto dir = oracle::scratch_dir("f64");
  Image img(3, 2, 1, {0.1, -2.5, 1e300, 3.0, 4.25, 1.0 / 3.0});
  save_image(img, dir / "m.f64");
  EXPECT_EQ(std::filesystem::file_size(dir / "m.f64"), 16u + 48u);
  std::ifstream f(dir / "m.f64", std::ios::binary);
  char head[16];
  f.read(head, 16);
  EXPECT_EQ(std::string(head, 4), "TGF1");
  EXPECT_EQ(static_cast<unsigned char>(head[4]), 3);
  EXPECT_EQ(static_cast<unsigned char>(head[8]), 2);
  EXPECT_EQ(static_cast<unsigned char>(head[12]), 1);
  EXPECT_EQ(load_image(dir / "m.f64"), img);
}

TEST(ImageIo, OutOfRangePgm) {
  auto dir = oracle::scratch_dir("range");
  Image img(1, 1, 1, 300.0);
  try {
    save_image(img, dir / "x.pgm");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("value outside [0,255]"), std::string::npos);
  }
}

TEST(ImageIo, WhitePngAndRgbLuma) {
  auto dir = oracle::scratch_dir("png");
  save_image(Image(4, 4, 1, 255.0), dir / "w.png");
  Image w = load_image(dir / "w.png");
  for (double v : w.data()) EXPECT_EQ(v, 255.0);

  Image rgb(1, 1, 3, std::vector<double>{200.0, 100.0, 50.0});
  save_image(rgb, dir / "c.png");
  Image grey = load_image(dir / "c.png");
  ASSERT_EQ(grey.channels(), 1);
  EXPECT_NEAR(grey.at(0, 0), 0.299 * 200 + 0.587 * 100 + 0.114 * 50, 1e-9);
  Image colour = load_image(dir / "c.png", LoadOptions{false});
  EXPECT_EQ(colour, rgb);
}

TEST(ImageIo, UnwritablePath) {
  EXPECT_THROW(save_image(Image(2, 2), "/nonexistent_dir/x.pgm"), IoError);
}

TEST(Rescale, Examples) {
  Image a(2, 1, 1, std::vector<double>{1.0, 3.0});
  Image r = rescale(a, 0, 255);
  EXPECT_EQ(r.at(0, 0), 0.0);
  EXPECT_EQ(r.at(1, 0), 255.0);
  Image c = rescale(Image(3, 3, 1, 9.0), 0, 255);
  for (double v : c.data()) EXPECT_EQ(v, 127.5);
  Image b = rescale(Image(3, 1, 1, std::vector<double>{0, 1, 2}), 0, 1);
  EXPECT_EQ(b.at(1, 0), 0.5);
  EXPECT_THROW(rescale(a, 1, 1), InvalidArgument);
}

TEST(Rescale, Idempotent) {
  std::mt19937_64 rng(3);
  Image a(7, 5);
  for (double& v : a.data()) v = static_cast<double>(rng() % 1000) / 7.0;
  Image once = rescale(a, 0, 255);
  Image twice = rescale(once, 0, 255);
  for (std::size_t i = 0; i < once.data().size(); ++i) EXPECT_NEAR(once.data()[i], twice.data()[i], 1e-12);
}

TEST(Gaussian, IdentityAndConstant) {
  Image a(6, 4);
  for (int i = 0; i < 24; ++i) a.data()[static_cast<std::size_t>(i)] = i * 1.5;
  EXPECT_EQ(gaussian_smooth(a, 0.0), a);
  Image c(9, 9, 2, 42.0);
  EXPECT_EQ(gaussian_smooth(c, 2.5), c);
}

TEST(Gaussian, ImpulseMatchesDirectConvolution) {
  Image imp(21, 21);
  imp.at(10, 10) = 1.0;
  const auto k = gaussian_kernel(2.0);
  ASSERT_EQ(k.size(), 13u);
  Image fast = gaussian_smooth(imp, 2.0);
  Image slow = oracle::convolve_direct(imp, k);
  for (std::size_t i = 0; i < fast.data().size(); ++i) EXPECT_NEAR(fast.data()[i], slow.data()[i], 1e-15);
  EXPECT_NEAR(fast.at(10, 10), 0.03987035621668855, 1e-12);
}

TEST(Gaussian, RandomImageMatchesDirectConvolutionAndBounds) {
  std::mt19937_64 rng(11);
  Image a(17, 12);
  for (double& v : a.data()) v = static_cast<double>(rng() >> 56);
  Image fast = gaussian_smooth(a, 1.3);
  Image slow = oracle::convolve_direct(a, gaussian_kernel(1.3));
  const auto [lo, hi] = std::minmax_element(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < fast.data().size(); ++i) {
    EXPECT_NEAR(fast.data()[i], slow.data()[i], 1e-9);
    EXPECT_GE(fast.data()[i], *lo);
    EXPECT_LE(fast.data()[i], *hi);
  }
}

TEST(Synth, ComposeSelectsByMask) {
  Image a(4, 4, 1, 0.0), b(4, 4, 1, 255.0);
  ShapeMask all(4, 4, true), none(4, 4, false), checker(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) checker.set(x, y, (x + y) % 2 == 0);
  EXPECT_EQ(synth_compose(a, b, all), a);
  EXPECT_EQ(synth_compose(a, b, none), b);
  Image c = synth_compose(a, b, checker);
  EXPECT_EQ(c.at(0, 0), 0.0);
  EXPECT_EQ(c.at(1, 0), 255.0);
  EXPECT_THROW(synth_compose(a, Image(3, 4), all), InvalidArgument);
}

TEST(Synth, StripeColumns) {
  Image s = synth_stripe_noise(8, 3, ShapeMask(8, 3, true), 4, StripeOrientation::vertical, 1);
  const double want[] = {0, 0, 255, 255, 0, 0, 255, 255};
  for (int x = 0; x < 8; ++x) EXPECT_EQ(s.at(x, 2), want[x]);
  EXPECT_THROW(synth_stripe_noise(8, 3, ShapeMask(8, 3, true), 1, StripeOrientation::vertical, 1),
               InvalidArgument);
}

TEST(Synth, NoiseDeterministicAndUniform) {
  ShapeMask none(200, 200, false);
  Image a = synth_stripe_noise(200, 200, none, 4, StripeOrientation::horizontal, 99);
  Image b = synth_stripe_noise(200, 200, none, 4, StripeOrientation::horizontal, 99);
  EXPECT_EQ(a, b);
  double mean = 0.0;
  for (double v : a.data()) {
    EXPECT_EQ(v, std::round(v));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 255.0);
    mean += v;
  }
  mean /= 40000.0;
  EXPECT_GT(mean, 119.0);
  EXPECT_LT(mean, 136.0);
  EXPECT_NE(a, synth_stripe_noise(200, 200, none, 4, StripeOrientation::horizontal, 100));
}

TEST(Synth, LetterEShape) {
  ShapeMask e = letter_e_mask(80, 80);
  EXPECT_EQ(e, letter_e_mask(80, 80));
  const double frac = static_cast<double>(e.inside_count()) / 6400.0;
  EXPECT_GT(frac, 0.1);
  EXPECT_LT(frac, 0.5);
  int sx = -1, sy = -1;
  for (int y = 0; y < 80 && sx < 0; ++y)
    for (int x = 0; x < 80; ++x)
      if (e.inside(x, y)) {
        sx = x;
        sy = y;
        break;
      }
  EXPECT_EQ(oracle::flood_fill_size(e, sx, sy), e.inside_count());
  // the gap between the arms is background
  EXPECT_FALSE(e.inside(50, 30));
  EXPECT_TRUE(e.inside(18, 40));
  EXPECT_THROW(letter_e_mask(39, 80), InvalidArgument);
}

TEST(Synth, StandInTexturesDeterministic) {
  EXPECT_EQ(texture_smooth(30, 20, 5), texture_smooth(30, 20, 5));
  EXPECT_EQ(texture_cellular(30, 20, 5), texture_cellular(30, 20, 5));
}
