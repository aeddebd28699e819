#pragma once

#include <filesystem>
#include <string>

#include "abn/classifier.hpp"
#include "abn/learner.hpp"

namespace abn {

inline constexpr int kModelFormatVersion = 1;

/// Self-describing model file: schema, learning configuration, structure,
/// and all probabilities. Probabilities are serialized as decimal text with
/// 17 significant digits so a save/load round trip reproduces bit-identical
/// predictions.
struct ModelDocument {
  int format_version = kModelFormatVersion;
  StructureMode mode = StructureMode::abn;
  WeightMode weight_mode = WeightMode::cost;
  LogBase log_base = LogBase::natural;
  double mdl = 0.0;
  FittedClassifier classifier;
};

std::string model_to_json(const ModelDocument& document);
ModelDocument model_from_json(const std::string& text);

void save_model(const ModelDocument& document, const std::filesystem::path& path);
ModelDocument load_model(const std::filesystem::path& path);

}  // namespace abn
