#include "abn/learner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "union_find.hpp"

namespace abn {

std::string_view to_string(StructureMode mode) {
  switch (mode) {
    case StructureMode::naive: return "naive";
    case StructureMode::tan: return "tan";
    case StructureMode::abn: return "abn";
  }
  return "abn";
}

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::cost ? "cost" : "gain";
}

std::optional<StructureMode> structure_mode_from(std::string_view name) {
  if (name == "naive") return StructureMode::naive;
  if (name == "tan") return StructureMode::tan;
  if (name == "abn") return StructureMode::abn;
  return std::nullopt;
}

std::optional<WeightMode> weight_mode_from(std::string_view name) {
  if (name == "cost") return WeightMode::cost;
  if (name == "gain") return WeightMode::gain;
  return std::nullopt;
}

WeightedPairGraph score_all_pairs(const Dataset& dataset, WeightMode weight_mode, LogBase base) {
  const Schema& schema = dataset.schema();
  const std::size_t cls = schema.class_index();
  const std::size_t rows = dataset.row_count();

  WeightedPairGraph graph;
  graph.attribute_count = schema.size() - 1;
  graph.weight_mode = weight_mode;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i == cls) continue;
    for (std::size_t j = i + 1; j < schema.size(); ++j) {
      if (j == cls) continue;
      EdgeScore edge;
      edge.i = i;
      edge.j = j;
      edge.cost = conditional_mutual_information(joint_counts(dataset, {i, j, cls}), base);
      edge.threshold = edge_threshold(schema, i, j, rows, base);
      edge.gain = edge_gain(schema, i, j, edge.cost.value, rows, base);
      graph.edges.push_back(edge);
    }
  }
  return graph;
}

std::vector<UndirectedEdge> max_spanning_forest(const WeightedPairGraph& graph) {
  std::vector<EdgeScore> edges = graph.edges;
  const bool by_cost = graph.weight_mode == WeightMode::cost;
  auto weight = [by_cost](const EdgeScore& e) { return by_cost ? e.cost.value : e.gain; };
  std::sort(edges.begin(), edges.end(), [&](const EdgeScore& a, const EdgeScore& b) {
    if (weight(a) != weight(b)) return weight(a) > weight(b);
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  detail::UnionFind components(graph.attribute_count + 1);
  std::vector<UndirectedEdge> forest;
  for (const EdgeScore& edge : edges)
    if (components.unite(edge.i, edge.j)) forest.emplace_back(edge.i, edge.j);
  std::sort(forest.begin(), forest.end());
  return forest;
}

std::vector<Arc> orient_forest(std::span<const UndirectedEdge> edges) {
  std::map<std::size_t, std::vector<std::size_t>> adjacency;
  for (const auto& [a, b] : edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& [vertex, neighbors] : adjacency) std::sort(neighbors.begin(), neighbors.end());

  std::set<std::size_t> visited;
  std::vector<Arc> arcs;
  // ascending map order makes the first unvisited vertex the component's root
  for (const auto& [root, neighbors] : adjacency) {
    if (visited.contains(root)) continue;
    visited.insert(root);
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t vertex = frontier.front();
      frontier.pop();
      for (std::size_t next : adjacency.at(vertex)) {
        if (visited.contains(next)) continue;
        visited.insert(next);
        arcs.push_back({vertex, next});
        frontier.push(next);
      }
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.parent != b.parent ? a.parent < b.parent : a.child < b.child;
  });
  return arcs;
}

NetworkStructure learn_structure(const Dataset& dataset, StructureMode mode,
                                 WeightMode weight_mode, LogBase base) {
  const Schema& schema = dataset.schema();
  if (mode == StructureMode::naive) return NetworkStructure(schema);
  if (mode == StructureMode::tan && schema.size() < 2)
    throw std::invalid_argument("tan requires at least one non-class attribute");

  WeightedPairGraph graph = score_all_pairs(dataset, weight_mode, base);
  if (mode == StructureMode::abn)
    std::erase_if(graph.edges,
                  [](const EdgeScore& edge) { return edge.cost.value < edge.threshold; });
  const std::vector<UndirectedEdge> forest = max_spanning_forest(graph);
  return NetworkStructure(schema, orient_forest(forest));
}

}  // namespace abn
