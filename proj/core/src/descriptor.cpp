#include "graphtex/descriptor.hpp"

#include <cmath>

#include "graphtex/error.hpp"
#include "graphtex/filters.hpp"
#include "graphtex/parallel.hpp"

namespace graphtex {

void DescriptorConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive");
  if (!(channel_weight > 0.0) || !std::isfinite(channel_weight)) {
    throw InvalidArgument("channel weight must be positive");
  }
  kind.validate();
  if (kind.tag == IndexTag::IDE && !is_unweighted_setting(setting)) {
    throw InvalidArgument("IDE requires unweighted graph: use setting TuE or TuA, not " +
                          std::string(to_string(setting)));
  }
}

double descriptor_at(const Image& u, Pixel p, const DescriptorConfig& cfg) {
  return evaluate_index(build_setting(u, p, cfg.setting, cfg.rho, cfg.beta, cfg.nbhd), cfg.kind);
}

DescriptorMap compute_descriptor_map(const Image& u, const DescriptorConfig& cfg, unsigned threads) {
  cfg.validate();
  if (u.channels() != 1) throw InvalidArgument("descriptor maps need a single-channel image");
  DescriptorMap out{Image(u.width(), u.height(), 1), cfg};
  parallel_for(u.height(), threads, [&](int y) {
    for (int x = 0; x < u.width(); ++x) out.values.at(x, y) = descriptor_at(u, {x, y}, cfg);
  });
  return out;
}

Image normalize_map(const DescriptorMap& m) { return rescale(m.values, 0.0, 1.0); }

Image stack_maps(std::span<const DescriptorMap> maps) {
  if (maps.empty()) throw InvalidArgument("stack_maps needs at least one map");
  const int w = maps.front().values.width();
  const int h = maps.front().values.height();
  const int nc = static_cast<int>(maps.size());
  Image out(w, h, nc);
  for (int c = 0; c < nc; ++c) {
    const auto& m = maps[static_cast<std::size_t>(c)];
    if (m.values.width() != w || m.values.height() != h) {
      throw InvalidArgument("stack_maps: dimension mismatch");
    }
    const Image norm = normalize_map(m);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) out.at(x, y, c) = m.config.channel_weight * norm.at(x, y);
    }
  }
  return out;
}

}  // namespace graphtex
