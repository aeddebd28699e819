#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abn/classifier.hpp"
#include "abn/dataset.hpp"
#include "abn/learner.hpp"
#include "abn/model_io.hpp"
#include "abn/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

std::string real_text(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

char parse_delimiter(const std::string& text) {
  if (text.size() != 1) throw std::runtime_error("delimiter must be a single character");
  return text.front();
}

abn::MissingPolicy parse_missing(const std::string& text) {
  if (text == "drop-row") return abn::MissingPolicy::drop_row;
  if (text == "error") return abn::MissingPolicy::error;
  throw std::runtime_error("unknown missing-value policy: " + text);
}

struct LearnOptions {
  std::string input;
  std::string class_name;
  std::string output;
  std::string mode = "abn";
  std::string weight = "cost";
  std::string smoothing = "laplace";
  double alpha = 1.0;
  std::string missing = "drop-row";
  std::string delimiter = ",";
};

int run_learn(const LearnOptions& options) {
  const abn::Dataset dataset = abn::load_csv(options.input, options.class_name,
                                             parse_missing(options.missing),
                                             parse_delimiter(options.delimiter));
  const auto mode = abn::structure_mode_from(options.mode);
  const auto weight = abn::weight_mode_from(options.weight);
  if (!mode || !weight) throw std::runtime_error("unknown mode or weight");
  abn::Smoothing smoothing = options.smoothing == "mle"
                                 ? abn::Smoothing::mle()
                                 : abn::Smoothing::laplace(options.alpha);

  const abn::NetworkStructure structure = abn::learn_structure(dataset, *mode, *weight);
  const double score = abn::mdl_score(structure, dataset);
  const abn::FittedClassifier classifier = abn::fit_parameters(structure, dataset, smoothing);

  const abn::ModelDocument document{abn::kModelFormatVersion, *mode, *weight,
                                    abn::LogBase::natural, score, classifier};
  abn::save_model(document, options.output);

  const abn::Schema& schema = dataset.schema();
  for (const abn::Arc& arc : structure.augmenting_arcs())
    std::cout << "arc " << schema.attribute(arc.parent).name << " -> "
              << schema.attribute(arc.child).name << "\n";
  std::cout << "parameters " << abn::parameter_count(structure) << "\n";
  std::cout << "mdl " << real_text(score) << "\n";
  return kExitOk;
}

struct FileOptions {
  std::string model;
  std::string input;
  std::string delimiter = ",";
};

int run_score(const FileOptions& options) {
  const abn::ModelDocument document = abn::load_model(options.model);
  const abn::RawCsv raw = abn::read_csv_raw(options.input, parse_delimiter(options.delimiter));
  const abn::Dataset dataset =
      abn::encode_with_schema(raw, document.classifier.structure.schema());
  std::cout << "mdl " << real_text(abn::mdl_score(document.classifier.structure, dataset)) << "\n";
  std::cout << "mdl_reduced "
            << real_text(abn::mdl_score_reduced(document.classifier.structure, dataset)) << "\n";
  return kExitOk;
}

int run_predict(const FileOptions& options) {
  const abn::ModelDocument document = abn::load_model(options.model);
  const abn::Schema& schema = document.classifier.structure.schema();
  const abn::RawCsv raw = abn::read_csv_raw(options.input, parse_delimiter(options.delimiter));
  if (raw.header.empty()) throw std::runtime_error("CSV has no header row");

  // map every non-class attribute to an input column; a class column is ignored
  std::vector<std::size_t> columns;
  std::vector<std::size_t> attributes;
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (a == schema.class_index()) continue;
    const auto it = std::find(raw.header.begin(), raw.header.end(), schema.attribute(a).name);
    if (it == raw.header.end())
      throw std::runtime_error("CSV is missing column '" + schema.attribute(a).name + "'");
    columns.push_back(static_cast<std::size_t>(it - raw.header.begin()));
    attributes.push_back(a);
  }

  std::cout << "predicted";
  const auto& class_domain = schema.attribute(schema.class_index()).domain;
  for (const std::string& label : class_domain)
    std::cout << ',' << abn::csv_quote("p_" + label);
  std::cout << "\n";

  std::vector<std::uint32_t> instance(schema.size() - 1);
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    if (row.size() != raw.header.size())
      throw std::runtime_error("ragged CSV row " + std::to_string(r + 1));
    for (std::size_t k = 0; k < attributes.size(); ++k) {
      const std::string& cell = row[columns[k]];
      const auto& domain = schema.attribute(attributes[k]).domain;
      const auto pos = std::find(domain.begin(), domain.end(), cell);
      if (pos == domain.end())
        throw std::runtime_error("value '" + cell + "' is not in the domain of attribute '" +
                                 schema.attribute(attributes[k]).name + "'");
      instance[k] = static_cast<std::uint32_t>(pos - domain.begin());
    }
    const abn::Prediction prediction = abn::predict(document.classifier, instance);
    std::cout << abn::csv_quote(class_domain[prediction.class_value]);
    for (double p : prediction.posterior) std::cout << ',' << real_text(p);
    std::cout << "\n";
  }
  return kExitOk;
}

int run_eval(const FileOptions& options) {
  const abn::ModelDocument document = abn::load_model(options.model);
  const abn::RawCsv raw = abn::read_csv_raw(options.input, parse_delimiter(options.delimiter));
  const abn::Dataset dataset =
      abn::encode_with_schema(raw, document.classifier.structure.schema());
  const abn::Evaluation report = abn::evaluate(document.classifier, dataset);

  const abn::Schema& schema = dataset.schema();
  std::cout << "accuracy " << real_text(report.accuracy) << "\n";
  const auto& class_domain = schema.attribute(schema.class_index()).domain;
  for (std::size_t truth = 0; truth < class_domain.size(); ++truth) {
    std::cout << "confusion " << abn::csv_quote(class_domain[truth], ' ');
    for (std::uint64_t count : report.confusion[truth]) std::cout << ' ' << count;
    std::cout << "\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string input;
  std::string class_name;
  std::size_t max_attributes = abn::kDefaultEnumerationCap;
  std::string missing = "drop-row";
  std::string delimiter = ",";
};

int run_verify(const VerifyOptions& options) {
  const abn::Dataset dataset = abn::load_csv(options.input, options.class_name,
                                             parse_missing(options.missing),
                                             parse_delimiter(options.delimiter));
  const abn::OptimalityReport report =
      abn::brute_force_optimal(dataset, abn::LogBase::natural, options.max_attributes);

  const abn::Schema& schema = dataset.schema();
  auto describe = [&](const std::vector<abn::UndirectedEdge>& edges) {
    if (edges.empty()) return std::string("(empty)");
    std::string text;
    for (const auto& [i, j] : edges) {
      if (!text.empty()) text += ' ';
      text += schema.attribute(i).name + "-" + schema.attribute(j).name;
    }
    return text;
  };

  std::cout << "structures_examined " << report.structures_examined << "\n";
  std::cout << "optimal_mdl " << real_text(report.optimal_mdl) << "\n";
  std::cout << "optimal_arc_sets " << report.optimal_arc_sets.size() << "\n";
  for (const auto& edges : report.optimal_arc_sets)
    std::cout << "optimal_set " << describe(edges) << "\n";
  std::cout << "gain_mdl " << real_text(report.learner_mdl) << ' '
            << (report.learner_matches ? "MATCH" : "MISMATCH") << "\n";
  std::cout << "cost_mdl " << real_text(report.cost_mode_mdl) << ' '
            << (report.cost_mode_matches ? "MATCH" : "MISMATCH");
  if (!report.cost_mode_matches)
    std::cout << " gap " << real_text(report.cost_mode_mdl - report.optimal_mdl);
  std::cout << "\n";
  return report.learner_matches ? kExitOk : kExitMismatch;
}

struct GenOptions {
  std::string model;
  std::size_t rows = 0;
  std::uint64_t seed = 0;
  std::string output;
};

int run_gen(const GenOptions& options) {
  const abn::ModelDocument document = abn::load_model(options.model);
  const abn::Dataset dataset = abn::sample_dataset(document.classifier, options.rows, options.seed);
  if (options.output.empty()) {
    abn::write_csv(dataset, std::cout);
    return kExitOk;
  }
  std::ofstream out(options.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + options.output);
  abn::write_csv(dataset, out);
  if (!out) throw std::runtime_error("failed while writing output file: " + options.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Augmented naive Bayes classifiers with MDL-optimal structure learning"};
  app.require_subcommand(1);

  LearnOptions learn;
  CLI::App* learn_cmd = app.add_subcommand(
      "learn", "Learn a structure from CSV data, fit its parameters, and save a model");
  learn_cmd->add_option("--input", learn.input, "Training CSV file")->required();
  learn_cmd->add_option("--class", learn.class_name, "Class column name")->required();
  learn_cmd->add_option("--output", learn.output, "Model file to write")->required();
  learn_cmd->add_option("--mode", learn.mode, "Structure family")
      ->check(CLI::IsMember({"naive", "tan", "abn"}))
      ->capture_default_str();
  learn_cmd->add_option("--weight", learn.weight, "Spanning-forest weight")
      ->check(CLI::IsMember({"cost", "gain"}))
      ->capture_default_str();
  learn_cmd->add_option("--smoothing", learn.smoothing, "Parameter smoothing")
      ->check(CLI::IsMember({"mle", "laplace"}))
      ->capture_default_str();
  learn_cmd->add_option("--alpha", learn.alpha, "Laplace pseudo-count")->capture_default_str();
  learn_cmd->add_option("--missing", learn.missing, "Missing-value policy")
      ->check(CLI::IsMember({"drop-row", "error"}))
      ->capture_default_str();
  learn_cmd->add_option("--delimiter", learn.delimiter, "CSV delimiter")->capture_default_str();

  FileOptions score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Recompute the MDL score of a saved model on a CSV file");
  score_cmd->add_option("--model", score.model, "Model file")->required();
  score_cmd->add_option("--input", score.input, "CSV file")->required();
  score_cmd->add_option("--delimiter", score.delimiter, "CSV delimiter")->capture_default_str();

  FileOptions predict;
  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "Write one predicted label plus posterior per input row to standard output");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--input", predict.input, "CSV file (class column optional)")->required();
  predict_cmd->add_option("--delimiter", predict.delimiter, "CSV delimiter")->capture_default_str();

  FileOptions eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Report accuracy and the confusion matrix on labeled data");
  eval_cmd->add_option("--model", eval.model, "Model file")->required();
  eval_cmd->add_option("--input", eval.input, "Labeled CSV file")->required();
  eval_cmd->add_option("--delimiter", eval.delimiter, "CSV delimiter")->capture_default_str();

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Check the learner against brute-force enumeration of every augmenting forest");
  verify_cmd->add_option("--input", verify.input, "CSV file")->required();
  verify_cmd->add_option("--class", verify.class_name, "Class column name")->required();
  verify_cmd->add_option("--max-attributes", verify.max_attributes, "Enumeration cap")
      ->capture_default_str();
  verify_cmd->add_option("--missing", verify.missing, "Missing-value policy")
      ->check(CLI::IsMember({"drop-row", "error"}))
      ->capture_default_str();
  verify_cmd->add_option("--delimiter", verify.delimiter, "CSV delimiter")->capture_default_str();

  GenOptions gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Sample synthetic rows from a saved model (ancestral sampling)");
  gen_cmd->add_option("--model", gen.model, "Model file")->required();
  gen_cmd->add_option("--n", gen.rows, "Number of rows to sample")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed (required)")->required();
  gen_cmd->add_option("--output", gen.output, "Output CSV file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (learn_cmd->parsed()) return run_learn(learn);
    if (score_cmd->parsed()) return run_score(score);
    if (predict_cmd->parsed()) return run_predict(predict);
    if (eval_cmd->parsed()) return run_eval(eval);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (gen_cmd->parsed()) return run_gen(gen);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
