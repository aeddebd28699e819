#include "abn/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace abn {

namespace {

std::size_t root_of(const std::vector<std::size_t>& parents, std::size_t x) {
  while (parents[x] != x) x = parents[x];
  return x;
}

struct ForestEnumerator {
  std::vector<UndirectedEdge> all_edges;
  std::vector<UndirectedEdge> chosen;
  const std::function<void(std::span<const UndirectedEdge>)>* visit = nullptr;

  void run(std::size_t edge_index, const std::vector<std::size_t>& parents) {
    if (edge_index == all_edges.size()) {
      (*visit)(chosen);
      return;
    }
    run(edge_index + 1, parents);  // exclude
    const auto [a, b] = all_edges[edge_index];
    const std::size_t root_a = root_of(parents, a);
    const std::size_t root_b = root_of(parents, b);
    if (root_a == root_b) return;  // would close a cycle
    std::vector<std::size_t> merged = parents;
    merged[root_a] = root_b;
    chosen.push_back(all_edges[edge_index]);
    run(edge_index + 1, merged);
    chosen.pop_back();
  }
};

}  // namespace

void enumerate_augmenting_forests(
    std::size_t attribute_count,
    const std::function<void(std::span<const UndirectedEdge>)>& visit, std::size_t cap) {
  if (attribute_count > cap)
    throw std::runtime_error("forest enumeration over " + std::to_string(attribute_count) +
                             " attributes exceeds the cap of " + std::to_string(cap));
  if (cap > kDefaultEnumerationCap)
    std::cerr << "warning: forest enumeration cap raised to " << cap
              << "; expect combinatorial growth\n";

  ForestEnumerator enumerator;
  for (std::size_t i = 0; i < attribute_count; ++i)
    for (std::size_t j = i + 1; j < attribute_count; ++j) enumerator.all_edges.emplace_back(i, j);
  enumerator.visit = &visit;
  std::vector<std::size_t> parents(attribute_count);
  for (std::size_t i = 0; i < attribute_count; ++i) parents[i] = i;
  enumerator.run(0, parents);
}

OptimalityReport brute_force_optimal(const Dataset& dataset, LogBase base,
                                     std::size_t max_attributes) {
  const Schema& schema = dataset.schema();
  std::vector<std::size_t> attributes;
  for (std::size_t i = 0; i < schema.size(); ++i)
    if (i != schema.class_index()) attributes.push_back(i);

  OptimalityReport report;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::vector<UndirectedEdge>>> candidates;

  enumerate_augmenting_forests(
      attributes.size(),
      [&](std::span<const UndirectedEdge> positions) {
        ++report.structures_examined;
        std::vector<UndirectedEdge> edges;
        edges.reserve(positions.size());
        for (const auto& [a, b] : positions) edges.emplace_back(attributes[a], attributes[b]);
        const NetworkStructure structure(schema, orient_forest(edges));
        const double score = mdl_score(structure, dataset, base);
        if (score < best) {
          best = score;
          std::erase_if(candidates,
                        [&](const auto& c) { return c.first > best + kMdlTieTolerance; });
        }
        if (score <= best + kMdlTieTolerance) {
          std::sort(edges.begin(), edges.end());
          candidates.emplace_back(score, std::move(edges));
        }
      },
      max_attributes);

  report.optimal_mdl = best;
  report.optimal_arc_sets.reserve(candidates.size());
  for (auto& [score, edges] : candidates) report.optimal_arc_sets.push_back(std::move(edges));

  const NetworkStructure by_gain = learn_structure(dataset, StructureMode::abn, WeightMode::gain, base);
  report.learner_mdl = mdl_score(by_gain, dataset, base);
  report.learner_matches = report.learner_mdl <= report.optimal_mdl + kMdlTieTolerance;

  const NetworkStructure by_cost = learn_structure(dataset, StructureMode::abn, WeightMode::cost, base);
  report.cost_mode_mdl = mdl_score(by_cost, dataset, base);
  report.cost_mode_matches = report.cost_mode_mdl <= report.optimal_mdl + kMdlTieTolerance;

  assert(report.learner_mdl >= report.optimal_mdl - kMdlTieTolerance);
  return report;
}

}  // namespace abn
