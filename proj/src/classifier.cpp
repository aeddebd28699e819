#include "abn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace abn {

namespace {

// instance position of a schema attribute once the class column is removed
std::size_t instance_position(const Schema& schema, std::size_t attribute) {
  return attribute > schema.class_index() ? attribute - 1 : attribute;
}

}  // namespace

FittedClassifier fit_parameters(const NetworkStructure& structure, const Dataset& dataset,
                                Smoothing smoothing) {
  if (structure.schema() != dataset.schema())
    throw std::invalid_argument("fit_parameters: structure and dataset schemas differ");
  if (smoothing.kind == Smoothing::Kind::laplace && !(smoothing.alpha > 0.0))
    throw std::invalid_argument("fit_parameters: laplace smoothing needs alpha > 0");
  const double alpha = smoothing.kind == Smoothing::Kind::laplace ? smoothing.alpha : 0.0;

  const Schema& schema = dataset.schema();
  const std::size_t cls = schema.class_index();
  const std::size_t class_card = schema.class_cardinality();
  const double rows = static_cast<double>(dataset.row_count());

  FittedClassifier fitted{structure, {}, {}, smoothing, dataset.row_count()};

  const ContingencyTable class_counts = joint_counts(dataset, {cls});
  fitted.class_prior.resize(class_card);
  for (std::size_t c = 0; c < class_card; ++c) {
    const double count = static_cast<double>(class_counts.counts[c]);
    fitted.class_prior[c] =
        (count + alpha) / (rows + alpha * static_cast<double>(class_card));
  }

  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i == cls) continue;
    ConditionalTable table;
    table.attribute = i;
    table.parent = structure.augmenting_parent(i);
    table.parent_cardinality = table.parent ? schema.cardinality(*table.parent) : 1;
    table.value_cardinality = schema.cardinality(i);

    const ContingencyTable counts =
        table.parent ? joint_counts(dataset, {i, *table.parent, cls})
                     : joint_counts(dataset, {i, cls});
    table.probabilities.resize(class_card * table.parent_cardinality * table.value_cardinality);
    for (std::size_t c = 0; c < class_card; ++c) {
      for (std::size_t p = 0; p < table.parent_cardinality; ++p) {
        double row_total = 0.0;
        for (std::size_t v = 0; v < table.value_cardinality; ++v)
          row_total += static_cast<double>(table.parent ? counts.at({v, p, c}) : counts.at({v, c}));
        for (std::size_t v = 0; v < table.value_cardinality; ++v) {
          const double count =
              static_cast<double>(table.parent ? counts.at({v, p, c}) : counts.at({v, c}));
          double probability;
          if (smoothing.kind == Smoothing::Kind::mle) {
            probability = row_total > 0.0 ? count / row_total
                                          : 1.0 / static_cast<double>(table.value_cardinality);
          } else {
            probability = (count + alpha) /
                          (row_total + alpha * static_cast<double>(table.value_cardinality));
          }
          table.probabilities[(c * table.parent_cardinality + p) * table.value_cardinality + v] =
              probability;
        }
      }
    }
    fitted.tables.push_back(std::move(table));
  }
  return fitted;
}

Prediction predict(const FittedClassifier& classifier, std::span<const std::uint32_t> instance) {
  const Schema& schema = classifier.structure.schema();
  if (instance.size() != schema.size() - 1)
    throw std::invalid_argument("predict: instance length does not match the schema");
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i == schema.class_index()) continue;
    if (instance[instance_position(schema, i)] >= schema.cardinality(i))
      throw std::invalid_argument("predict: value outside the domain of attribute '" +
                                  schema.attribute(i).name + "'");
  }

  const std::size_t class_card = schema.class_cardinality();
  std::vector<double> log_joint(class_card);
  for (std::size_t c = 0; c < class_card; ++c) {
    double sum = std::log(classifier.class_prior[c]);
    for (const ConditionalTable& table : classifier.tables) {
      const std::uint32_t value = instance[instance_position(schema, table.attribute)];
      const std::uint32_t parent_value =
          table.parent ? instance[instance_position(schema, *table.parent)] : 0;
      sum += std::log(table.at(c, parent_value, value));
    }
    log_joint[c] = sum;
  }

  Prediction prediction;
  prediction.posterior.resize(class_card);
  const double peak = *std::max_element(log_joint.begin(), log_joint.end());
  if (peak == -std::numeric_limits<double>::infinity()) {
    // every class assigns the instance probability zero; fall back to uniform
    std::fill(prediction.posterior.begin(), prediction.posterior.end(),
              1.0 / static_cast<double>(class_card));
  } else {
    double normalizer = 0.0;
    for (std::size_t c = 0; c < class_card; ++c) {
      prediction.posterior[c] = std::exp(log_joint[c] - peak);
      normalizer += prediction.posterior[c];
    }
    for (double& p : prediction.posterior) p /= normalizer;
  }

  prediction.class_value = 0;
  for (std::size_t c = 1; c < class_card; ++c)
    if (prediction.posterior[c] > prediction.posterior[prediction.class_value])
      prediction.class_value = c;
  return prediction;
}

Evaluation evaluate(const FittedClassifier& classifier, const Dataset& dataset) {
  if (classifier.structure.schema() != dataset.schema())
    throw std::invalid_argument("evaluate: classifier and dataset schemas differ");
  const Schema& schema = dataset.schema();
  const std::size_t cls = schema.class_index();
  const std::size_t class_card = schema.class_cardinality();

  Evaluation report;
  report.instance_count = dataset.row_count();
  report.confusion.assign(class_card, std::vector<std::uint64_t>(class_card, 0));

  std::vector<std::uint32_t> instance(schema.size() - 1);
  std::uint64_t correct = 0;
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (i != cls) instance[instance_position(schema, i)] = dataset.value(r, i);
    const Prediction prediction = predict(classifier, instance);
    const std::uint32_t truth = dataset.value(r, cls);
    ++report.confusion[truth][prediction.class_value];
    if (truth == prediction.class_value) ++correct;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(dataset.row_count());
  return report;
}

namespace {

std::size_t sample_index(std::span<const double> probabilities, double unit) {
  double cumulative = 0.0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    cumulative += probabilities[k];
    if (unit < cumulative) return k;
  }
  return probabilities.size() - 1;
}

}  // namespace

Dataset sample_dataset(const FittedClassifier& classifier, std::size_t row_count,
                       std::uint64_t seed) {
  if (row_count == 0) throw std::invalid_argument("sample_dataset: row count must be positive");
  const Schema& schema = classifier.structure.schema();
  const std::size_t cls = schema.class_index();

  // topological order over the augmenting forest: parents before children
  std::vector<std::size_t> order;
  std::vector<bool> placed(schema.size(), false);
  placed[cls] = true;
  while (order.size() + 1 < schema.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (placed[i]) continue;
      const auto parent = classifier.structure.augmenting_parent(i);
      if (parent && !placed[*parent]) continue;
      order.push_back(i);
      placed[i] = true;
      progressed = true;
    }
    if (!progressed) throw std::logic_error("sample_dataset: augmenting arcs are not a forest");
  }

  std::mt19937_64 engine(seed);
  auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

  std::vector<std::uint32_t> cells(row_count * schema.size());
  for (std::size_t r = 0; r < row_count; ++r) {
    std::uint32_t* row = cells.data() + r * schema.size();
    row[cls] = static_cast<std::uint32_t>(sample_index(classifier.class_prior, unit()));
    for (std::size_t i : order) {
      const ConditionalTable& table = classifier.tables[instance_position(schema, i)];
      const std::uint32_t parent_value = table.parent ? row[*table.parent] : 0;
      const std::size_t row_offset =
          (row[cls] * table.parent_cardinality + parent_value) * table.value_cardinality;
      const std::span<const double> probabilities(table.probabilities.data() + row_offset,
                                                  table.value_cardinality);
      row[i] = static_cast<std::uint32_t>(sample_index(probabilities, unit()));
    }
  }
  return Dataset(schema, std::move(cells));
}

}  // namespace abn
