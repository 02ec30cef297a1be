#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <graphtex/descriptor.hpp>
#include <graphtex/error.hpp>

#include "oracles.hpp"

using namespace graphtex;

namespace {

Image smooth_noise(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image img(w, h);
  for (double& v : img.data()) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 60.0;
  return img;
}

// Straight-line reference: whole-image pixel graph, O(n^2) Dijkstra, explicit
// tree reconstruction, distances by relaxation, entropy by direct sums.
struct Reference {
  const Image& u;
  DescriptorConfig cfg;

  std::vector<Pixel> pixels() const {
    std::vector<Pixel> all;
    for (int y = 0; y < u.height(); ++y)
      for (int x = 0; x < u.width(); ++x) all.push_back({x, y});
    return all;
  }

  bool adjacent(Pixel a, Pixel b) const {
    const int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    if (dx + dy == 0 || dx > 1 || dy > 1) return false;
    return cfg.nbhd == Neighborhood::eight || dx + dy == 1;
  }

  PatchGraph induced(const std::vector<Pixel>& vs, bool weighted) const {
    std::vector<Edge> es;
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (adjacent(vs[a], vs[b])) es.push_back({static_cast<int>(a), static_cast<int>(b), weighted ? edge_weight(vs[a], vs[b], u, cfg.beta) : 1.0});
    return PatchGraph(vs, es, weighted);
  }

  // shortest-path tree inside g (ties do not occur on continuous noise)
  PatchGraph spt(const PatchGraph& g, bool weighted) const {
    const auto d = oracle::slow_dijkstra(g, 0);
    std::vector<Edge> es;
    for (int v = 1; v < g.size(); ++v) {
      int best = -1;
      double bw = 0.0;
      for (const Edge& e : g.edges()) {
        const int w = e.a == v ? e.b : (e.b == v ? e.a : -1);
        if (w < 0) continue;
        if (std::abs(d[static_cast<std::size_t>(w)] + e.weight - d[static_cast<std::size_t>(v)]) < 1e-12) {
          best = w;
          bw = e.weight;
        }
      }
      es.push_back({best, v, weighted ? bw : 1.0});
    }
    return PatchGraph(std::vector<Pixel>(g.vertices().begin(), g.vertices().end()), es, weighted);
  }

  double value(Pixel p) const {
    std::vector<Pixel> verts{p};
    const bool adaptive = is_adaptive_setting(cfg.setting);
    if (adaptive) {
      auto all = pixels();
      std::size_t ci = static_cast<std::size_t>(p.y * u.width() + p.x);
      std::swap(all[0], all[ci]);
      const auto d = oracle::slow_dijkstra(induced(all, true), 0);
      for (std::size_t i = 1; i < all.size(); ++i)
        if (d[i] <= cfg.rho) verts.push_back(all[i]);
    } else {
      for (Pixel q : pixels())
        if (!(q == p) && std::hypot(q.x - p.x, q.y - p.y) <= cfg.rho) verts.push_back(q);
    }
    PatchGraph g = induced(verts, true);
    if (cfg.setting == GraphSetting::TwE || cfg.setting == GraphSetting::TwA) g = spt(g, true);
    if (cfg.setting == GraphSetting::TuE || cfg.setting == GraphSetting::TuA) g = spt(g, false);

    const int n = g.size();
    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    std::map<int, int> classes;
    for (int i = 0; i < n; ++i) {
      const auto d = oracle::bellman_ford(g, i);
      for (int j = 0; j < n; ++j) {
        const double dij = d[static_cast<std::size_t>(j)];
        if (cfg.kind.tag == IndexTag::IfV) a[static_cast<std::size_t>(i)] += cfg.kind.M * std::pow(cfg.kind.q, dij);
        if (cfg.kind.tag == IndexTag::IfP) a[static_cast<std::size_t>(i)] += cfg.kind.M * std::pow(cfg.kind.q, dij) * dij;
        if (j > i) ++classes[static_cast<int>(dij)];
      }
    }
    if (cfg.kind.tag != IndexTag::IDE) return oracle::entropy_bits(a);
    if (n < 2) return 0.0;
    const double pairs = n * (n - 1) / 2.0;
    double h = 0.0;
    for (auto [d, c] : classes) h -= c / pairs * std::log2(c / pairs);
    return h;
  }
};

}  // namespace

TEST(DescriptorConfig, Validation) {
  DescriptorConfig c;
  EXPECT_NO_THROW(c.validate());
  c.setting = GraphSetting::GwE;
  c.kind = IndexKind::ide();
  try {
    c.validate();
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("TuE"), std::string::npos);
  }
  c.setting = GraphSetting::TuA;
  EXPECT_NO_THROW(c.validate());
  c.rho = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  DescriptorConfig d;
  d.beta = -1.0;
  EXPECT_THROW(d.validate(), InvalidArgument);
}

TEST(DescriptorMap, MatchesPerPixelReference) {
  Image u = smooth_noise(11, 11, 77);
  std::vector<DescriptorConfig> cfgs;
  for (auto s : {GraphSetting::GwE, GraphSetting::GwA, GraphSetting::TwE, GraphSetting::TwA, GraphSetting::TuE,
                 GraphSetting::TuA}) {
    DescriptorConfig c;
    c.setting = s;
    c.rho = 3.0;
    c.beta = 0.05;
    c.kind = IndexKind::ifv(0.3);
    cfgs.push_back(c);
    c.kind = IndexKind::ifp(0.3);
    cfgs.push_back(c);
    if (is_unweighted_setting(s)) {
      c.kind = IndexKind::ide();
      cfgs.push_back(c);
    }
  }
  DescriptorConfig four;
  four.setting = GraphSetting::GwA;
  four.nbhd = Neighborhood::four;
  four.rho = 4.0;
  four.beta = 0.05;
  cfgs.push_back(four);
  for (const auto& c : cfgs) {
    DescriptorMap m = compute_descriptor_map(u, c, 1);
    Reference ref{u, c};
    for (int y = 0; y < 11; ++y)
      for (int x = 0; x < 11; ++x)
        ASSERT_NEAR(m.values.at(x, y), ref.value({x, y}), 1e-9)
            << to_string(c.setting) << " " << to_string(c.kind.tag) << " at " << x << "," << y;
  }
}

TEST(DescriptorMap, ConstantImageInteriorIsUniform) {
  Image u(20, 20, 1, 17.0);
  DescriptorConfig c;
  c.rho = 3.0;
  DescriptorMap m = compute_descriptor_map(u, c);
  const double v = m.values.at(10, 10);
  for (int y = 4; y < 16; ++y)
    for (int x = 4; x < 16; ++x) EXPECT_EQ(m.values.at(x, y), v);
}

TEST(DescriptorMap, ThreadCountDoesNotMatter) {
  Image u = smooth_noise(24, 17, 3);
  DescriptorConfig c;
  c.setting = GraphSetting::GwA;
  c.rho = 3.0;
  EXPECT_EQ(compute_descriptor_map(u, c, 1).values, compute_descriptor_map(u, c, 4).values);
  EXPECT_EQ(compute_descriptor_map(u, c, 1).values, compute_descriptor_map(u, c, 0).values);
}

TEST(DescriptorMap, ShiftInvariant) {
  Image u = smooth_noise(15, 15, 9);
  for (double& x : u.data()) x = std::floor(x);
  Image v = u;
  for (double& x : v.data()) x += 64.0;
  DescriptorConfig c;
  c.rho = 3.0;
  c.setting = GraphSetting::TwE;
  EXPECT_EQ(compute_descriptor_map(u, c).values, compute_descriptor_map(v, c).values);
}

TEST(DescriptorMap, HorizontalFlipOnSymmetricImage) {
  Image u(15, 11);
  std::mt19937_64 rng(4);
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x <= 7; ++x) u.at(x, y) = u.at(14 - x, y) = static_cast<double>(rng() >> 58);
  DescriptorConfig c;
  c.rho = 3.0;
  c.setting = GraphSetting::GwA;
  DescriptorMap m = compute_descriptor_map(u, c);
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x < 15; ++x) EXPECT_NEAR(m.values.at(x, y), m.values.at(14 - x, y), 1e-12);
}

TEST(DescriptorMap, RejectsMultiChannel) {
  DescriptorConfig c;
  EXPECT_THROW(compute_descriptor_map(Image(5, 5, 2), c), InvalidArgument);
}

TEST(Normalize, Examples) {
  DescriptorMap m{Image(2, 1, 1, std::vector<double>{0.0, 4.0}), {}};
  Image n = normalize_map(m);
  EXPECT_EQ(n.at(0, 0), 0.0);
  EXPECT_EQ(n.at(1, 0), 1.0);
  DescriptorMap c{Image(3, 3, 1, 2.5), {}};
  const Image flat = normalize_map(c);
  for (double v : flat.data()) EXPECT_EQ(v, 0.5);
  Image r = normalize_map({smooth_noise(9, 9, 1), {}});
  EXPECT_EQ(*std::min_element(r.data().begin(), r.data().end()), 0.0);
  EXPECT_EQ(*std::max_element(r.data().begin(), r.data().end()), 1.0);
}

TEST(Stack, WeightsAndMismatch) {
  DescriptorMap a{smooth_noise(6, 5, 1), {}};
  DescriptorMap b = a;
  b.config.channel_weight = 2.0;
  std::vector<DescriptorMap> ms{a, b};
  Image s = stack_maps(ms);
  ASSERT_EQ(s.channels(), 2);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 6; ++x) EXPECT_EQ(s.at(x, y, 1), 2.0 * s.at(x, y, 0));
  std::vector<DescriptorMap> one{a};
  EXPECT_EQ(stack_maps(one), normalize_map(a));
  std::vector<DescriptorMap> bad{a, {Image(5, 5), {}}};
  EXPECT_THROW(stack_maps(bad), InvalidArgument);
  EXPECT_THROW(stack_maps(std::vector<DescriptorMap>{}), InvalidArgument);
}
