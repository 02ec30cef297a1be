#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "graphtex/patch_graph.hpp"

namespace graphtex {

/// Per-vertex natural logarithms a_i = ln f_i of an information functional.
/// Probabilities are p_i = exp(a_i - logsumexp(a)).
struct InformationDensity {
  std::vector<double> logvalues;
};

enum class IndexTag { IfV, IfP, IDE };

std::string_view to_string(IndexTag t) noexcept;
std::optional<IndexTag> parse_index_tag(std::string_view s) noexcept;

/// Which entropy index to evaluate. q and M only matter for IfV/IfP.
struct IndexKind {
  IndexTag tag = IndexTag::IfV;
  double q = 0.1;
  double M = 1.0 / (1.0 - 0.1);

  /// M = 1/(1-q): the weighted form then equals the infinite-horizon sum of
  /// the cumulative sphere definition with c_d = q^d.
  static double default_M(double q) noexcept { return 1.0 / (1.0 - q); }
  static IndexKind ifv(double q) { return {IndexTag::IfV, q, default_M(q)}; }
  static IndexKind ifp(double q) { return {IndexTag::IfP, q, default_M(q)}; }
  static IndexKind ide() { return {IndexTag::IDE, 0.1, default_M(0.1)}; }

  /// Throws InvalidArgument for q outside (0,1) or M <= 0.
  void validate() const;
};

/// Shannon entropy in bits, evaluated in the shifted log domain.
double entropy_from_logdensity(std::span<const double> logvalues);
inline double entropy_from_logdensity(const InformationDensity& a) {
  return entropy_from_logdensity(a.logvalues);
}

/// Bonchev-Trinajstic mean information on distances over hop counts.
/// Throws InvalidArgument for weighted graphs.
double mean_information_on_distances(const PatchGraph& g);
double mean_information_on_distances(const DijkstraTree& t);

/// a_i = M * sum_j q^{d(v_i, v_j)}; d is weighted when g is weighted.
InformationDensity dehmer_fv(const PatchGraph& g, double q, double M);
/// a_i = M * sum_j q^{d(v_i, v_j)} d(v_i, v_j).
InformationDensity dehmer_fp(const PatchGraph& g, double q, double M);

/// Same as above from a precomputed row-major distance matrix.
InformationDensity dehmer_fv(std::span<const double> distances, int n, double q, double M);
InformationDensity dehmer_fp(std::span<const double> distances, int n, double q, double M);

/// Index value in bits. IDE on a weighted graph throws InvalidArgument.
double evaluate_index(const PatchGraph& g, const IndexKind& kind);
double evaluate_index(const DijkstraTree& t, const IndexKind& kind);
double evaluate_index(const SettingGraph& g, const IndexKind& kind);

}  // namespace graphtex
