#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graphtex/image.hpp"

namespace graphtex {

enum class Neighborhood { four, eight };

struct Offset {
  int dx;
  int dy;
};

/// Neighbour offsets: the four axial ones, plus the diagonals for `eight`.
std::span<const Offset> neighbor_offsets(Neighborhood nbhd) noexcept;

/// The six graph collections built around every pixel.
enum class GraphSetting { GwE, GwA, TwE, TwA, TuE, TuA };

std::string_view to_string(GraphSetting s) noexcept;
std::optional<GraphSetting> parse_graph_setting(std::string_view s) noexcept;
bool is_tree_setting(GraphSetting s) noexcept;
bool is_unweighted_setting(GraphSetting s) noexcept;
bool is_adaptive_setting(GraphSetting s) noexcept;

struct Edge {
  int a;
  int b;
  double weight;
};

struct Adjacent {
  int vertex;
  double weight;
};

/// Simple undirected graph on pixel coordinates. Vertex 0 is the patch centre.
class PatchGraph {
 public:
  PatchGraph(std::vector<Pixel> vertices, std::vector<Edge> edges, bool weighted);

  Pixel center() const noexcept { return vertices_.front(); }
  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  bool weighted() const noexcept { return weighted_; }

  std::span<const Pixel> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Adjacent> neighbors(int v) const noexcept {
    return {adjacency_.data() + offsets_[static_cast<std::size_t>(v)],
            adjacency_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }

  /// Connected graphs with n - 1 edges.
  bool is_tree() const noexcept { return edges_.size() + 1 == vertices_.size(); }

  /// Edge list text: header line, then "x1 y1 x2 y2 weight" with 9 significant digits.
  std::string dump() const;

 private:
  std::vector<Pixel> vertices_;
  std::vector<Edge> edges_;
  bool weighted_;
  std::vector<std::size_t> offsets_;
  std::vector<Adjacent> adjacency_;
};

/// Rooted shortest-path tree. Vertex 0 is the root; parent[0] == -1.
struct DijkstraTree {
  std::vector<Pixel> vertices;
  std::vector<int> parent;
  /// Weight of the edge to the parent (0 at the root, 1 when unweighted).
  std::vector<double> parent_weight;
  std::vector<double> dist;
  bool weighted = true;

  int size() const noexcept { return static_cast<int>(vertices.size()); }

  /// The tree as a graph with the parent links as edges.
  PatchGraph to_graph() const;
};

/// sqrt(|p - q|^2 + beta^2 |u_p - u_q|^2), using channel 0 of u.
double edge_weight(Pixel p, Pixel q, const Image& u, double beta) noexcept;

/// Subgraph of the weighted pixel graph on {q : |q - p| <= rho}, clipped to the image.
/// The centre comes first, remaining vertices in row-major order.
PatchGraph euclidean_patch_graph(const Image& u, Pixel p, double rho, double beta,
                                 Neighborhood nbhd = Neighborhood::eight);

/// Shortest-path tree rooted at vertex 0. Equal tentative distances are
/// settled in row-major pixel order; a parent is only replaced by a strictly
/// shorter path. With a limit, only vertices with dist <= limit are kept.
DijkstraTree dijkstra(const PatchGraph& g, std::optional<double> limit = std::nullopt);

struct AdaptivePatch {
  PatchGraph graph;  ///< induced subgraph on the amoeba, vertices in settle order
  DijkstraTree tree;  ///< weighted Dijkstra tree, same vertex order as graph
};

/// Morphological amoeba of radius rho around p and its Dijkstra tree.
AdaptivePatch adaptive_patch_graph(const Image& u, Pixel p, double rho, double beta,
                                   Neighborhood nbhd = Neighborhood::eight);

/// Same topology with unit edge weights and hop-count distances.
DijkstraTree strip_weights(const DijkstraTree& t);

using SettingGraph = std::variant<PatchGraph, DijkstraTree>;

/// Dispatches to the graph construction named by `setting`.
SettingGraph build_setting(const Image& u, Pixel p, GraphSetting setting, double rho, double beta,
                           Neighborhood nbhd = Neighborhood::eight);

/// Vertex set of whichever alternative `g` holds.
std::span<const Pixel> setting_vertices(const SettingGraph& g) noexcept;

/// Shortest-path distances from `source` to every vertex of g (weights
/// respected when g is weighted, hop counts otherwise).
std::vector<double> distances_from(const PatchGraph& g, int source);

/// Row-major n x n matrix of shortest-path distances.
std::vector<double> all_pairs_distances(const PatchGraph& g);

}  // namespace graphtex
