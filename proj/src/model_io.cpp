#include "abn/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace abn {

namespace {

using Json = nlohmann::ordered_json;

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_real(const Json& node, const char* what) {
  if (!node.is_string()) throw std::runtime_error(std::string("model field ") + what + " must be decimal text");
  const std::string& text = node.get_ref<const std::string&>();
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(value))
    throw std::runtime_error(std::string("model field ") + what + " is not a finite number: " + text);
  return value;
}

Json prior_to_json(const std::vector<double>& prior) {
  Json out = Json::array();
  for (double p : prior) out.push_back(format_real(p));
  return out;
}

Json cpt_to_json(const ConditionalTable& table, std::size_t class_card) {
  Json classes = Json::array();
  for (std::size_t c = 0; c < class_card; ++c) {
    if (table.parent) {
      Json parents = Json::array();
      for (std::size_t p = 0; p < table.parent_cardinality; ++p) {
        Json row = Json::array();
        for (std::size_t v = 0; v < table.value_cardinality; ++v)
          row.push_back(format_real(table.at(c, p, v)));
        parents.push_back(std::move(row));
      }
      classes.push_back(std::move(parents));
    } else {
      Json row = Json::array();
      for (std::size_t v = 0; v < table.value_cardinality; ++v)
        row.push_back(format_real(table.at(c, 0, v)));
      classes.push_back(std::move(row));
    }
  }
  return classes;
}

void check_row_sum(std::span<const double> row, const char* what) {
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::runtime_error(std::string("model has a negative or non-finite probability in ") + what);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::runtime_error(std::string("model probability row does not sum to 1 in ") + what);
}

}  // namespace

std::string model_to_json(const ModelDocument& document) {
  const FittedClassifier& classifier = document.classifier;
  const Schema& schema = classifier.structure.schema();

  Json doc;
  doc["format_version"] = document.format_version;
  doc["mode"] = std::string(to_string(document.mode));
  doc["weight_mode"] = std::string(to_string(document.weight_mode));
  doc["mdl"] = format_real(document.mdl);

  Json attributes = Json::array();
  for (const Attribute& attribute : schema.attributes())
    attributes.push_back({{"name", attribute.name}, {"domain", attribute.domain}});
  doc["schema"] = {{"class", schema.attribute(schema.class_index()).name},
                   {"attributes", std::move(attributes)}};

  Json arcs = Json::array();
  for (const Arc& arc : classifier.structure.augmenting_arcs())
    arcs.push_back({{"parent", schema.attribute(arc.parent).name},
                    {"child", schema.attribute(arc.child).name}});
  doc["arcs"] = std::move(arcs);

  doc["class_prior"] = prior_to_json(classifier.class_prior);

  Json cpts = Json::array();
  for (const ConditionalTable& table : classifier.tables) {
    Json entry;
    entry["attribute"] = schema.attribute(table.attribute).name;
    entry["parent"] = table.parent ? Json(schema.attribute(*table.parent).name) : Json(nullptr);
    entry["table"] = cpt_to_json(table, schema.class_cardinality());
    cpts.push_back(std::move(entry));
  }
  doc["cpts"] = std::move(cpts);

  doc["fit"] = {{"instances", classifier.instance_count},
                {"smoothing", classifier.smoothing.kind == Smoothing::Kind::mle ? "mle" : "laplace"},
                {"alpha", format_real(classifier.smoothing.alpha)},
                {"log_base", std::string(to_string(document.log_base))}};
  return doc.dump(2) + "\n";
}

ModelDocument model_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& error) {
    throw std::runtime_error(std::string("invalid model file: ") + error.what());
  }

  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw std::runtime_error("unsupported model format version " + std::to_string(version));

    const auto mode = structure_mode_from(doc.at("mode").get<std::string>());
    const auto weight_mode = weight_mode_from(doc.at("weight_mode").get<std::string>());
    if (!mode || !weight_mode) throw std::runtime_error("model has an unknown mode");

    const Json& schema_node = doc.at("schema");
    std::vector<Attribute> attributes;
    for (const Json& node : schema_node.at("attributes"))
      attributes.push_back(
          {node.at("name").get<std::string>(), node.at("domain").get<std::vector<std::string>>()});
    const std::string class_name = schema_node.at("class").get<std::string>();
    std::size_t class_index = attributes.size();
    for (std::size_t i = 0; i < attributes.size(); ++i)
      if (attributes[i].name == class_name) class_index = i;
    if (class_index == attributes.size())
      throw std::runtime_error("model class attribute '" + class_name + "' is not in the schema");
    Schema schema(std::move(attributes), class_index);

    std::vector<Arc> arcs;
    for (const Json& node : doc.at("arcs")) {
      const auto parent = schema.index_of(node.at("parent").get<std::string>());
      const auto child = schema.index_of(node.at("child").get<std::string>());
      if (!parent || !child) throw std::runtime_error("model arc names an unknown attribute");
      arcs.push_back({*parent, *child});
    }
    NetworkStructure structure(schema, std::move(arcs));

    const Json& prior_node = doc.at("class_prior");
    if (prior_node.size() != schema.class_cardinality())
      throw std::runtime_error("model class prior length does not match the class domain");
    std::vector<double> prior;
    for (const Json& p : prior_node) prior.push_back(parse_real(p, "class_prior"));
    check_row_sum(prior, "class_prior");

    const Json& cpts_node = doc.at("cpts");
    if (cpts_node.size() != schema.size() - 1)
      throw std::runtime_error("model must carry one conditional table per non-class attribute");
    std::vector<ConditionalTable> tables;
    std::size_t expected_attribute = 0;
    for (const Json& node : cpts_node) {
      ConditionalTable table;
      const auto attribute = schema.index_of(node.at("attribute").get<std::string>());
      if (!attribute) throw std::runtime_error("model conditional table names an unknown attribute");
      if (expected_attribute == schema.class_index()) ++expected_attribute;
      if (*attribute != expected_attribute)
        throw std::runtime_error("model conditional tables must follow schema order");
      ++expected_attribute;

      table.attribute = *attribute;
      if (!node.at("parent").is_null()) {
        const auto parent = schema.index_of(node.at("parent").get<std::string>());
        if (!parent) throw std::runtime_error("model conditional table names an unknown parent");
        table.parent = *parent;
      }
      if (table.parent != structure.augmenting_parent(table.attribute))
        throw std::runtime_error("model conditional table parent disagrees with the arc list");
      table.parent_cardinality = table.parent ? schema.cardinality(*table.parent) : 1;
      table.value_cardinality = schema.cardinality(table.attribute);

      const Json& classes = node.at("table");
      if (classes.size() != schema.class_cardinality())
        throw std::runtime_error("model conditional table has the wrong class extent");
      table.probabilities.reserve(schema.class_cardinality() * table.parent_cardinality *
                                  table.value_cardinality);
      for (const Json& per_class : classes) {
        const std::size_t parent_rows = table.parent ? table.parent_cardinality : 1;
        if (table.parent && per_class.size() != parent_rows)
          throw std::runtime_error("model conditional table has the wrong parent extent");
        for (std::size_t p = 0; p < parent_rows; ++p) {
          const Json& row_node = table.parent ? per_class.at(p) : per_class;
          if (row_node.size() != table.value_cardinality)
            throw std::runtime_error("model conditional table has the wrong value extent");
          std::vector<double> row;
          for (const Json& v : row_node) row.push_back(parse_real(v, "cpt"));
          check_row_sum(row, "cpt");
          table.probabilities.insert(table.probabilities.end(), row.begin(), row.end());
        }
      }
      tables.push_back(std::move(table));
    }

    const Json& fit = doc.at("fit");
    Smoothing smoothing;
    const std::string smoothing_name = fit.at("smoothing").get<std::string>();
    if (smoothing_name == "mle")
      smoothing = Smoothing::mle();
    else if (smoothing_name == "laplace")
      smoothing = Smoothing::laplace(parse_real(fit.at("alpha"), "alpha"));
    else
      throw std::runtime_error("model has an unknown smoothing mode: " + smoothing_name);
    const auto log_base = log_base_from(fit.at("log_base").get<std::string>());
    if (!log_base) throw std::runtime_error("model has an unknown log base");

    FittedClassifier classifier{std::move(structure), std::move(prior), std::move(tables),
                                smoothing, fit.at("instances").get<std::size_t>()};
    return ModelDocument{version,    *mode,
                         *weight_mode, *log_base,
                         parse_real(doc.at("mdl"), "mdl"), std::move(classifier)};
  } catch (const Json::exception& error) {
    throw std::runtime_error(std::string("invalid model file: ") + error.what());
  }
}

void save_model(const ModelDocument& document, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path.string());
  out << model_to_json(document);
  if (!out) throw std::runtime_error("failed while writing model file: " + path.string());
}

ModelDocument load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace abn
