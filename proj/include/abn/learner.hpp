#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "abn/mdl.hpp"

namespace abn {

enum class StructureMode { naive, tan, abn };

/// Kruskal weight selection. cost runs the spanning-forest step on the
/// conditional-mutual-information annotations; gain runs it on the exact
/// per-edge score decrease, which also stays optimal when attribute
/// cardinalities (and hence per-edge penalties) differ across edges.
enum class WeightMode { cost, gain };

std::string_view to_string(StructureMode mode);
std::string_view to_string(WeightMode mode);
std::optional<StructureMode> structure_mode_from(std::string_view name);
std::optional<WeightMode> weight_mode_from(std::string_view name);

/// Complete scored pair graph over the attributes (class excluded).
struct WeightedPairGraph {
  std::size_t attribute_count = 0;
  std::vector<EdgeScore> edges;  // i < j, lexicographic order before filtering
  WeightMode weight_mode = WeightMode::cost;
};

/// Annotates every attribute pair with cost I(Xi;Xj|C), its threshold, and
/// its gain. Deterministic given the dataset.
WeightedPairGraph score_all_pairs(const Dataset& dataset, WeightMode weight_mode,
                                  LogBase base = LogBase::natural);

using UndirectedEdge = std::pair<std::size_t, std::size_t>;  // schema indices, first < second

/// Kruskal maximum spanning forest over the graph's current edge list, one
/// spanning tree per connected component. Ties break by descending weight,
/// then ascending (i, j). The result is sorted by (i, j).
std::vector<UndirectedEdge> max_spanning_forest(const WeightedPairGraph& graph);

/// Roots each tree at its lowest attribute index and directs arcs outward.
std::vector<Arc> orient_forest(std::span<const UndirectedEdge> edges);

/// naive: no augmenting arcs. tan: unfiltered maximum spanning tree over all
/// attributes. abn: drop every pair whose cost is below its own threshold,
/// then a maximum spanning forest over what remains.
NetworkStructure learn_structure(const Dataset& dataset, StructureMode mode,
                                 WeightMode weight_mode = WeightMode::cost,
                                 LogBase base = LogBase::natural);

}  // namespace abn
