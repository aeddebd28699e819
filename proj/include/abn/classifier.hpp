#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abn/mdl.hpp"

namespace abn {

/// Parameter-estimation policy. Structure learning always uses unsmoothed
/// frequencies; smoothing applies to classifier parameters only.
struct Smoothing {
  enum class Kind { mle, laplace };
  Kind kind = Kind::laplace;
  double alpha = 1.0;

  static Smoothing mle() { return {Kind::mle, 0.0}; }
  static Smoothing laplace(double alpha = 1.0) { return {Kind::laplace, alpha}; }
};

/// P(value | class, augmenting parent) for one attribute, stored row-major as
/// [class][parent][value] with parent extent 1 when there is no augmenting
/// parent. Every row over the value axis sums to 1.
struct ConditionalTable {
  std::size_t attribute = 0;
  std::optional<std::size_t> parent;
  std::size_t parent_cardinality = 1;
  std::size_t value_cardinality = 0;
  std::vector<double> probabilities;

  double at(std::size_t class_value, std::size_t parent_value, std::size_t value) const {
    return probabilities[(class_value * parent_cardinality + parent_value) * value_cardinality +
                         value];
  }
};

struct FittedClassifier {
  NetworkStructure structure;
  std::vector<double> class_prior;
  std::vector<ConditionalTable> tables;  // one per non-class attribute, schema order
  Smoothing smoothing;
  std::size_t instance_count = 0;
};

struct Prediction {
  std::size_t class_value = 0;
  std::vector<double> posterior;
};

struct Evaluation {
  double accuracy = 0.0;
  std::vector<std::vector<std::uint64_t>> confusion;  // [true class][predicted class]
  std::size_t instance_count = 0;
};

/// Estimates the class prior and all conditional tables from the dataset.
/// mle rows are relative frequencies (a row with zero support is uniform);
/// laplace rows are (count + alpha) / (row total + alpha * cardinality).
FittedClassifier fit_parameters(const NetworkStructure& structure, const Dataset& dataset,
                                Smoothing smoothing = Smoothing::laplace());

/// Classifies one instance (attribute values in schema order, class column
/// omitted). The per-class joint is computed in log domain and normalized by
/// log-sum-exp; ties break to the lowest class-domain index.
Prediction predict(const FittedClassifier& classifier, std::span<const std::uint32_t> instance);

Evaluation evaluate(const FittedClassifier& classifier, const Dataset& dataset);

/// Ancestral sampling: class first, then each attribute given its sampled
/// parents. Deterministic per seed.
Dataset sample_dataset(const FittedClassifier& classifier, std::size_t row_count,
                       std::uint64_t seed);

}  // namespace abn
