#pragma once

#include <span>
#include <vector>

#include "graphtex/entropy.hpp"
#include "graphtex/image.hpp"
#include "graphtex/patch_graph.hpp"

namespace graphtex {

/// One (graph setting, entropy index) pair with its patch parameters.
/// Defaults are rho = 5, beta = 0.1, q = 0.1 on 8-neighbourhoods.
struct DescriptorConfig {
  GraphSetting setting = GraphSetting::TwA;
  IndexKind kind = IndexKind::ifv(0.1);
  double rho = 5.0;
  double beta = 0.1;
  Neighborhood nbhd = Neighborhood::eight;
  /// Scalar factor applied when the map is stacked into a multi-channel input.
  double channel_weight = 1.0;

  /// Rejects out-of-range parameters and IDE on weighted settings.
  void validate() const;
};

struct DescriptorMap {
  Image values;  ///< single channel, same size as the source image
  DescriptorConfig config;
};

/// Descriptor value of a single pixel.
double descriptor_at(const Image& u, Pixel p, const DescriptorConfig& cfg);

/// Sweeps every pixel; rows are distributed over `threads` workers
/// (0 = hardware concurrency). The result does not depend on `threads`.
DescriptorMap compute_descriptor_map(const Image& u, const DescriptorConfig& cfg, unsigned threads = 0);

/// Affine rescale to [0,1]; constant maps become 0.5.
Image normalize_map(const DescriptorMap& m);

/// channel i = channel_weight_i * normalize_map(maps[i]).
Image stack_maps(std::span<const DescriptorMap> maps);

}  // namespace graphtex
