#include "graphtex/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphtex/error.hpp"

namespace graphtex {

std::string_view to_string(IndexTag t) noexcept {
  switch (t) {
    case IndexTag::IfV: return "IfV";
    case IndexTag::IfP: return "IfP";
    case IndexTag::IDE: return "IDE";
  }
  return "?";
}

std::optional<IndexTag> parse_index_tag(std::string_view s) noexcept {
  for (auto t : {IndexTag::IfV, IndexTag::IfP, IndexTag::IDE}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

void IndexKind::validate() const {
  if (tag == IndexTag::IDE) return;
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("q must lie in (0,1)");
  if (!(M > 0.0) || !std::isfinite(M)) throw InvalidArgument("M must be positive");
}

double entropy_from_logdensity(std::span<const double> logvalues) {
  if (logvalues.empty()) throw InvalidArgument("information density must be non-empty");
  const double top = *std::max_element(logvalues.begin(), logvalues.end());
  double sum = 0.0;
  for (double a : logvalues) sum += std::exp(a - top);
  const double log_total = top + std::log(sum);

  double h = 0.0;
  for (double a : logvalues) {
    const double log_p = a - log_total;
    const double p = std::exp(log_p);
    if (p > 0.0) h -= p * log_p;  // 0 log 0 = 0
  }
  return std::max(0.0, h / std::numbers::ln2);
}

double mean_information_on_distances(const PatchGraph& g) {
  if (g.weighted()) throw InvalidArgument("IDE requires unweighted graph");
  const int n = g.size();
  if (n < 2) return 0.0;

  std::vector<double> counts;
  for (int i = 0; i < n; ++i) {
    const auto d = distances_from(g, i);
    for (int j = i + 1; j < n; ++j) {
      const double dij = d[static_cast<std::size_t>(j)];
      if (!std::isfinite(dij)) throw InvalidArgument("IDE requires a connected graph");
      const auto k = static_cast<std::size_t>(dij);
      if (counts.size() <= k) counts.resize(k + 1, 0.0);
      counts[k] += 1.0;
    }
  }
  const double pairs = 0.5 * n * (n - 1.0);
  double h = 0.0;
  for (double k : counts) {
    if (k == 0.0) continue;
    const double p = k / pairs;
    h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

double mean_information_on_distances(const DijkstraTree& t) {
  return mean_information_on_distances(t.to_graph());
}

InformationDensity dehmer_fv(std::span<const double> distances, int n, double q, double M) {
  const double log_q = std::log(q);
  InformationDensity out;
  out.logvalues.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += std::exp(log_q * distances[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]);
    }
    out.logvalues[static_cast<std::size_t>(i)] = M * s;
  }
  return out;
}

InformationDensity dehmer_fp(std::span<const double> distances, int n, double q, double M) {
  const double log_q = std::log(q);
  InformationDensity out;
  out.logvalues.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = distances[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
      s += std::exp(log_q * d) * d;
    }
    out.logvalues[static_cast<std::size_t>(i)] = M * s;
  }
  return out;
}

InformationDensity dehmer_fv(const PatchGraph& g, double q, double M) {
  IndexKind{IndexTag::IfV, q, M}.validate();
  return dehmer_fv(all_pairs_distances(g), g.size(), q, M);
}

InformationDensity dehmer_fp(const PatchGraph& g, double q, double M) {
  IndexKind{IndexTag::IfP, q, M}.validate();
  return dehmer_fp(all_pairs_distances(g), g.size(), q, M);
}

double evaluate_index(const PatchGraph& g, const IndexKind& kind) {
  kind.validate();
  switch (kind.tag) {
    case IndexTag::IfV:
      return entropy_from_logdensity(dehmer_fv(g, kind.q, kind.M));
    case IndexTag::IfP:
      return entropy_from_logdensity(dehmer_fp(g, kind.q, kind.M));
    case IndexTag::IDE:
      return mean_information_on_distances(g);
  }
  throw InvalidArgument("unknown index kind");
}

double evaluate_index(const DijkstraTree& t, const IndexKind& kind) {
  return evaluate_index(t.to_graph(), kind);
}

double evaluate_index(const SettingGraph& g, const IndexKind& kind) {
  return std::visit([&](const auto& alt) { return evaluate_index(alt, kind); }, g);
}

}  // namespace graphtex
