#include "graphtex/patch_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

#include "graphtex/error.hpp"

namespace graphtex {

namespace {

constexpr std::array<Offset, 8> kOffsets = {{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1},
}};

// Offsets pointing "forward" in row-major order; each undirected edge once.
constexpr std::array<Offset, 4> kForward = {{{1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_forward_allowed(Offset o, Neighborhood nbhd) {
  return nbhd == Neighborhood::eight || o.dx == 0 || o.dy == 0;
}

// Heap entry ordered by distance, then row-major pixel position.
struct QueueEntry {
  double dist;
  int y;
  int x;
  int vertex;

  bool operator>(const QueueEntry& o) const noexcept {
    return std::tie(dist, y, x) > std::tie(o.dist, o.y, o.x);
  }
};

using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

// Edges between all neighbouring pairs of `vertices`; `lookup` maps a pixel to
// its vertex index or -1.
template <typename Lookup>
std::vector<Edge> induced_edges(const std::vector<Pixel>& vertices, const Image& u, double beta,
                                Neighborhood nbhd, Lookup lookup) {
  std::vector<Edge> edges;
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    const Pixel p = vertices[static_cast<std::size_t>(i)];
    for (const Offset o : kForward) {
      if (!is_forward_allowed(o, nbhd)) continue;
      const Pixel q{p.x + o.dx, p.y + o.dy};
      if (!u.contains(q)) continue;
      const int j = lookup(q);
      if (j < 0) continue;
      edges.push_back({i, j, edge_weight(p, q, u, beta)});
    }
  }
  return edges;
}

}  // namespace

std::span<const Offset> neighbor_offsets(Neighborhood nbhd) noexcept {
  return {kOffsets.data(), nbhd == Neighborhood::eight ? 8u : 4u};
}

std::string_view to_string(GraphSetting s) noexcept {
  switch (s) {
    case GraphSetting::GwE: return "GwE";
    case GraphSetting::GwA: return "GwA";
    case GraphSetting::TwE: return "TwE";
    case GraphSetting::TwA: return "TwA";
    case GraphSetting::TuE: return "TuE";
    case GraphSetting::TuA: return "TuA";
  }
  return "?";
}

std::optional<GraphSetting> parse_graph_setting(std::string_view s) noexcept {
  for (auto g : {GraphSetting::GwE, GraphSetting::GwA, GraphSetting::TwE, GraphSetting::TwA,
                 GraphSetting::TuE, GraphSetting::TuA}) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

bool is_tree_setting(GraphSetting s) noexcept {
  return s != GraphSetting::GwE && s != GraphSetting::GwA;
}

bool is_unweighted_setting(GraphSetting s) noexcept {
  return s == GraphSetting::TuE || s == GraphSetting::TuA;
}

bool is_adaptive_setting(GraphSetting s) noexcept {
  return s == GraphSetting::GwA || s == GraphSetting::TwA || s == GraphSetting::TuA;
}

PatchGraph::PatchGraph(std::vector<Pixel> vertices, std::vector<Edge> edges, bool weighted)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), weighted_(weighted) {
  if (vertices_.empty()) throw InvalidArgument("patch graph needs at least one vertex");
  const int n = size();
  std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges_) {
    if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n || e.a == e.b) {
      throw InvalidArgument("patch graph edge has invalid endpoints");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument("patch graph edge weight must be positive");
    }
    ++degree[static_cast<std::size_t>(e.a)];
    ++degree[static_cast<std::size_t>(e.b)];
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) {
    offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)];
  }
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[static_cast<std::size_t>(e.a)]++] = {e.b, e.weight};
    adjacency_[fill[static_cast<std::size_t>(e.b)]++] = {e.a, e.weight};
  }
}

std::string PatchGraph::dump() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "# center %d %d vertices %d edges %zu %s\n", center().x,
                center().y, size(), edges_.size(), weighted_ ? "weighted" : "unweighted");
  out += line;
  for (const Edge& e : edges_) {
    const Pixel a = vertices_[static_cast<std::size_t>(e.a)];
    const Pixel b = vertices_[static_cast<std::size_t>(e.b)];
    std::snprintf(line, sizeof line, "%d %d %d %d %.9g\n", a.x, a.y, b.x, b.y, e.weight);
    out += line;
  }
  return out;
}

PatchGraph DijkstraTree::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(vertices.size());
  for (int v = 0; v < size(); ++v) {
    const int p = parent[static_cast<std::size_t>(v)];
    if (p >= 0) edges.push_back({p, v, parent_weight[static_cast<std::size_t>(v)]});
  }
  return PatchGraph(vertices, std::move(edges), weighted);
}

double edge_weight(Pixel p, Pixel q, const Image& u, double beta) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double du = beta * (u.at(p) - u.at(q));
  return std::sqrt(dx * dx + dy * dy + du * du);
}

PatchGraph euclidean_patch_graph(const Image& u, Pixel p, double rho, double beta, Neighborhood nbhd) {
  if (!u.contains(p)) throw InvalidArgument("patch centre outside the image");
  if (!(rho > 0.0)) throw InvalidArgument("patch radius must be positive");
  const int r = static_cast<int>(std::floor(rho));
  const int side = 2 * r + 1;
  const double rho2 = rho * rho;

  std::vector<int> index(static_cast<std::size_t>(side * side), -1);
  auto local = [&](Pixel q) { return (q.y - p.y + r) * side + (q.x - p.x + r); };

  std::vector<Pixel> vertices{p};
  index[static_cast<std::size_t>(local(p))] = 0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (static_cast<double>(dx * dx + dy * dy) > rho2) continue;
      const Pixel q{p.x + dx, p.y + dy};
      if (!u.contains(q)) continue;
      index[static_cast<std::size_t>(local(q))] = static_cast<int>(vertices.size());
      vertices.push_back(q);
    }
  }
  auto lookup = [&](Pixel q) {
    if (std::abs(q.x - p.x) > r || std::abs(q.y - p.y) > r) return -1;
    return index[static_cast<std::size_t>(local(q))];
  };
  auto edges = induced_edges(vertices, u, beta, nbhd, lookup);
  return PatchGraph(std::move(vertices), std::move(edges), true);
}

DijkstraTree dijkstra(const PatchGraph& g, std::optional<double> limit) {
  const int n = g.size();
  const auto verts = g.vertices();
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<double> pweight(static_cast<std::size_t>(n), 0.0);
  std::vector<char> settled(static_cast<std::size_t>(n), 0);

  MinQueue queue;
  dist[0] = 0.0;
  queue.push({0.0, verts[0].y, verts[0].x, 0});
  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    const auto v = static_cast<std::size_t>(top.vertex);
    if (settled[v] || top.dist > dist[v]) continue;
    settled[v] = 1;
    for (const Adjacent& a : g.neighbors(top.vertex)) {
      const auto w = static_cast<std::size_t>(a.vertex);
      if (settled[w]) continue;
      const double nd = dist[v] + (g.weighted() ? a.weight : 1.0);
      if (limit && nd > *limit) continue;
      if (nd < dist[w]) {
        dist[w] = nd;
        parent[w] = top.vertex;
        pweight[w] = g.weighted() ? a.weight : 1.0;
        queue.push({nd, verts[w].y, verts[w].x, a.vertex});
      }
    }
  }

  // keep settled vertices in source-graph order, re-indexing parents
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  DijkstraTree tree;
  tree.weighted = g.weighted();
  for (int v = 0; v < n; ++v) {
    if (!settled[static_cast<std::size_t>(v)]) continue;
    remap[static_cast<std::size_t>(v)] = tree.size();
    tree.vertices.push_back(verts[static_cast<std::size_t>(v)]);
    tree.dist.push_back(dist[static_cast<std::size_t>(v)]);
  }
  for (int v = 0; v < n; ++v) {
    if (!settled[static_cast<std::size_t>(v)]) continue;
    const int p = parent[static_cast<std::size_t>(v)];
    tree.parent.push_back(p < 0 ? -1 : remap[static_cast<std::size_t>(p)]);
    tree.parent_weight.push_back(pweight[static_cast<std::size_t>(v)]);
  }
  return tree;
}

AdaptivePatch adaptive_patch_graph(const Image& u, Pixel p, double rho, double beta, Neighborhood nbhd) {
  if (!u.contains(p)) throw InvalidArgument("patch centre outside the image");
  if (!(rho > 0.0)) throw InvalidArgument("amoeba radius must be positive");
  // dist(p, q) >= |p - q|, so the amoeba fits in the (2r+1)^2 window
  const int r = static_cast<int>(std::floor(rho));
  const int side = 2 * r + 1;
  const auto cells = static_cast<std::size_t>(side * side);
  auto local = [&](int x, int y) {
    return static_cast<std::size_t>((y - p.y + r) * side + (x - p.x + r));
  };
  auto in_window = [&](int x, int y) { return std::abs(x - p.x) <= r && std::abs(y - p.y) <= r; };

  std::vector<double> dist(cells, kInf);
  std::vector<int> order(cells, -1);  // settle index, -1 while unsettled
  std::vector<std::size_t> parent_cell(cells, 0);
  std::vector<double> parent_w(cells, 0.0);

  DijkstraTree tree;
  tree.weighted = true;
  std::vector<Pixel> amoeba;

  MinQueue queue;
  dist[local(p.x, p.y)] = 0.0;
  queue.push({0.0, p.y, p.x, 0});
  const auto offsets = neighbor_offsets(nbhd);
  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    const std::size_t c = local(top.x, top.y);
    if (order[c] >= 0 || top.dist > dist[c]) continue;
    order[c] = static_cast<int>(amoeba.size());
    const Pixel cur{top.x, top.y};
    amoeba.push_back(cur);
    tree.vertices.push_back(cur);
    tree.dist.push_back(dist[c]);
    if (amoeba.size() == 1) {
      tree.parent.push_back(-1);
      tree.parent_weight.push_back(0.0);
    } else {
      tree.parent.push_back(order[parent_cell[c]]);
      tree.parent_weight.push_back(parent_w[c]);
    }
    for (const Offset o : offsets) {
      const int qx = cur.x + o.dx;
      const int qy = cur.y + o.dy;
      if (!u.contains(qx, qy) || !in_window(qx, qy)) continue;
      const std::size_t qc = local(qx, qy);
      if (order[qc] >= 0) continue;
      const double w = edge_weight(cur, {qx, qy}, u, beta);
      const double nd = dist[c] + w;
      if (nd > rho) continue;
      if (nd < dist[qc]) {
        dist[qc] = nd;
        parent_cell[qc] = c;
        parent_w[qc] = w;
        queue.push({nd, qy, qx, 0});
      }
    }
  }

  auto lookup = [&](Pixel q) { return in_window(q.x, q.y) ? order[local(q.x, q.y)] : -1; };
  auto edges = induced_edges(amoeba, u, beta, nbhd, lookup);
  return {PatchGraph(std::move(amoeba), std::move(edges), true), std::move(tree)};
}

DijkstraTree strip_weights(const DijkstraTree& t) {
  DijkstraTree out = t;
  out.weighted = false;
  const int n = t.size();
  std::vector<double> hops(static_cast<std::size_t>(n), -1.0);
  for (int v = 0; v < n; ++v) {
    out.parent_weight[static_cast<std::size_t>(v)] = t.parent[static_cast<std::size_t>(v)] < 0 ? 0.0 : 1.0;
  }
  // parents may be listed after their children, so resolve chains explicitly
  std::vector<int> chain;
  for (int v = 0; v < n; ++v) {
    int cur = v;
    while (cur >= 0 && hops[static_cast<std::size_t>(cur)] < 0.0) {
      chain.push_back(cur);
      cur = t.parent[static_cast<std::size_t>(cur)];
    }
    double base = cur < 0 ? -1.0 : hops[static_cast<std::size_t>(cur)];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      base += 1.0;
      hops[static_cast<std::size_t>(*it)] = base;
    }
    chain.clear();
  }
  out.dist = std::move(hops);
  return out;
}

SettingGraph build_setting(const Image& u, Pixel p, GraphSetting setting, double rho, double beta,
                           Neighborhood nbhd) {
  switch (setting) {
    case GraphSetting::GwE:
      return euclidean_patch_graph(u, p, rho, beta, nbhd);
    case GraphSetting::GwA:
      return std::move(adaptive_patch_graph(u, p, rho, beta, nbhd).graph);
    case GraphSetting::TwE:
      return dijkstra(euclidean_patch_graph(u, p, rho, beta, nbhd));
    case GraphSetting::TuE:
      return strip_weights(dijkstra(euclidean_patch_graph(u, p, rho, beta, nbhd)));
    case GraphSetting::TwA:
      return std::move(adaptive_patch_graph(u, p, rho, beta, nbhd).tree);
    case GraphSetting::TuA:
      return strip_weights(adaptive_patch_graph(u, p, rho, beta, nbhd).tree);
  }
  throw InvalidArgument("unknown graph setting");
}

std::span<const Pixel> setting_vertices(const SettingGraph& g) noexcept {
  if (const auto* pg = std::get_if<PatchGraph>(&g)) return pg->vertices();
  return std::get<DijkstraTree>(g).vertices;
}

std::vector<double> distances_from(const PatchGraph& g, int source) {
  const int n = g.size();
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  dist[static_cast<std::size_t>(source)] = 0.0;

  if (!g.weighted() || g.is_tree()) {
    // BFS/DFS: on a tree the first visit is the unique path
    std::vector<int> stack{source};
    std::size_t head = 0;
    while (head < stack.size()) {
      const int v = stack[head++];
      for (const Adjacent& a : g.neighbors(v)) {
        auto& d = dist[static_cast<std::size_t>(a.vertex)];
        if (d != kInf) continue;
        d = dist[static_cast<std::size_t>(v)] + (g.weighted() ? a.weight : 1.0);
        stack.push_back(a.vertex);
      }
    }
    return dist;
  }

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (const Adjacent& a : g.neighbors(v)) {
      const double nd = d + a.weight;
      if (nd < dist[static_cast<std::size_t>(a.vertex)]) {
        dist[static_cast<std::size_t>(a.vertex)] = nd;
        queue.push({nd, a.vertex});
      }
    }
  }
  return dist;
}

std::vector<double> all_pairs_distances(const PatchGraph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<double> out(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto row = distances_from(g, static_cast<int>(s));
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  return out;
}

}  // namespace graphtex
