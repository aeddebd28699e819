#include "abn/mdl.hpp"

#include <stdexcept>

#include "union_find.hpp"

namespace abn {

NetworkStructure::NetworkStructure(Schema schema, std::vector<Arc> augmenting_arcs)
    : schema_(std::move(schema)), arcs_(std::move(augmenting_arcs)), parents_(schema_.size()) {
  const std::size_t width = schema_.size();
  const std::size_t cls = schema_.class_index();
  detail::UnionFind components(width);
  for (const Arc& arc : arcs_) {
    if (arc.parent >= width || arc.child >= width)
      throw std::invalid_argument("augmenting arc endpoint out of range");
    if (arc.parent == cls || arc.child == cls)
      throw std::invalid_argument("augmenting arc may not touch the class attribute");
    if (arc.parent == arc.child) throw std::invalid_argument("augmenting arc is a self loop");
    if (parents_[arc.child])
      throw std::invalid_argument("attribute '" + schema_.attribute(arc.child).name +
                                  "' has more than one augmenting parent");
    parents_[arc.child] = arc.parent;
    if (!components.unite(arc.parent, arc.child))
      throw std::invalid_argument("augmenting arcs contain a cycle");
  }
}

std::int64_t parameter_count(const NetworkStructure& structure) {
  const Schema& schema = structure.schema();
  const std::int64_t class_card = static_cast<std::int64_t>(schema.class_cardinality());
  std::int64_t total = class_card - 1;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i == schema.class_index()) continue;
    std::int64_t per_attribute = class_card * (static_cast<std::int64_t>(schema.cardinality(i)) - 1);
    if (const auto parent = structure.augmenting_parent(i))
      per_attribute *= static_cast<std::int64_t>(schema.cardinality(*parent));
    total += per_attribute;
  }
  return total;
}

double mdl_score(const NetworkStructure& structure, const Dataset& dataset, LogBase base) {
  if (structure.schema() != dataset.schema())
    throw std::invalid_argument("mdl_score: structure and dataset schemas differ");
  const Schema& schema = dataset.schema();
  const std::size_t cls = schema.class_index();
  const double n = static_cast<double>(dataset.row_count());

  double information = 0.0;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i == cls) continue;
    information += mutual_information(joint_counts(dataset, {i, cls}), base).value;
  }
  for (const Arc& arc : structure.augmenting_arcs())
    information +=
        conditional_mutual_information(joint_counts(dataset, {arc.child, arc.parent, cls}), base)
            .value;

  return static_cast<double>(parameter_count(structure)) * apply_log(base, n) / 2.0 -
         n * information;
}

double mdl_score_reduced(const NetworkStructure& structure, const Dataset& dataset, LogBase base) {
  if (structure.schema() != dataset.schema())
    throw std::invalid_argument("mdl_score_reduced: structure and dataset schemas differ");
  const Schema& schema = dataset.schema();
  const std::size_t cls = schema.class_index();
  const double n = static_cast<double>(dataset.row_count());

  double information = 0.0;
  for (const Arc& arc : structure.augmenting_arcs())
    information +=
        conditional_mutual_information(joint_counts(dataset, {arc.child, arc.parent, cls}), base)
            .value;

  return static_cast<double>(parameter_count(structure)) * apply_log(base, n) / 2.0 -
         n * information;
}

namespace {

void check_pair(const Schema& schema, std::size_t i, std::size_t j, std::size_t instance_count) {
  if (i >= schema.size() || j >= schema.size())
    throw std::invalid_argument("attribute index out of range");
  if (i == j) throw std::invalid_argument("attribute pair must be distinct");
  if (i == schema.class_index() || j == schema.class_index())
    throw std::invalid_argument("the class attribute cannot be an augmenting arc endpoint");
  if (instance_count == 0) throw std::invalid_argument("instance count must be positive");
}

}  // namespace

double edge_threshold(const Schema& schema, std::size_t i, std::size_t j,
                      std::size_t instance_count, LogBase base) {
  check_pair(schema, i, j, instance_count);
  const double penalty = static_cast<double>(schema.class_cardinality()) *
                         (static_cast<double>(schema.cardinality(i)) - 1.0) *
                         (static_cast<double>(schema.cardinality(j)) - 1.0);
  const double n = static_cast<double>(instance_count);
  return penalty * apply_log(base, n) / (2.0 * n);
}

double edge_gain(const Schema& schema, std::size_t i, std::size_t j, double cost,
                 std::size_t instance_count, LogBase base) {
  const double threshold = edge_threshold(schema, i, j, instance_count, base);
  return static_cast<double>(instance_count) * (cost - threshold);
}

}  // namespace abn
