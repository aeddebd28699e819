#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abn {

/// One named discrete attribute with a finite ordered domain of category labels.
struct Attribute {
  std::string name;
  std::vector<std::string> domain;

  bool operator==(const Attribute&) const = default;
};

/// Ordered attribute list with one attribute designated as the class.
/// Domains are non-empty, labels within a domain are distinct, and attribute
/// names are distinct; construction throws std::invalid_argument otherwise.
class Schema {
 public:
  Schema(std::vector<Attribute> attributes, std::size_t class_index);

  std::size_t size() const { return attributes_.size(); }
  std::size_t class_index() const { return class_index_; }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& attribute(std::size_t index) const { return attributes_.at(index); }
  std::size_t cardinality(std::size_t index) const { return attributes_.at(index).domain.size(); }
  std::size_t class_cardinality() const { return cardinality(class_index_); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Attribute> attributes_;
  std::size_t class_index_ = 0;
};

/// Immutable table of N complete instances; every cell is an index into the
/// corresponding attribute's domain (class column included).
class Dataset {
 public:
  /// cells is row-major, N x schema.size(). Throws std::invalid_argument on
  /// shape or range violations, or when there are no rows.
  Dataset(Schema schema, std::vector<std::uint32_t> cells);

  const Schema& schema() const { return schema_; }
  std::size_t row_count() const { return row_count_; }
  std::uint32_t value(std::size_t row, std::size_t attribute) const {
    return cells_[row * schema_.size() + attribute];
  }
  std::span<const std::uint32_t> row(std::size_t row) const {
    return std::span<const std::uint32_t>(cells_).subspan(row * schema_.size(), schema_.size());
  }

  bool operator==(const Dataset&) const = default;

 private:
  Schema schema_;
  std::vector<std::uint32_t> cells_;
  std::size_t row_count_ = 0;
};

/// Dense joint occurrence counts over an ordered subset of attributes.
/// counts is row-major with the last variable's axis fastest.
struct ContingencyTable {
  std::vector<std::size_t> variables;  // schema attribute indices, one per axis
  std::vector<std::size_t> extents;    // domain cardinality per axis
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t arity() const { return variables.size(); }
  std::size_t offset(std::span<const std::size_t> values) const;
  std::uint64_t at(std::span<const std::size_t> values) const { return counts[offset(values)]; }
  std::uint64_t at(std::initializer_list<std::size_t> values) const {
    return at(std::span<const std::size_t>(values.begin(), values.size()));
  }
};

/// Counts every value combination of the given distinct attributes across all
/// rows. The table total always equals the dataset row count.
ContingencyTable joint_counts(const Dataset& dataset, std::span<const std::size_t> variables);
ContingencyTable joint_counts(const Dataset& dataset, std::initializer_list<std::size_t> variables);

enum class MissingPolicy { drop_row, error };

/// Header plus field strings, exactly as parsed; no coercion applied.
struct RawCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Parses a CSV file: header row required, quoted fields honored (embedded
/// delimiters, doubled quotes, embedded newlines), blank lines skipped.
RawCsv read_csv_raw(const std::filesystem::path& path, char delimiter = ',');

/// Loads a discrete dataset. Domains are inferred per column as the sorted
/// set of distinct values among retained rows. Rows with an empty cell are
/// dropped or abort ingestion depending on the policy. Throws
/// std::runtime_error on unreadable input, absent header, unknown class
/// column, ragged rows, or when no rows remain.
Dataset load_csv(const std::filesystem::path& path, std::string_view class_column,
                 MissingPolicy missing = MissingPolicy::drop_row, char delimiter = ',');

/// Encodes raw CSV rows against an existing schema, matching columns by name
/// (extra columns ignored). A value outside the schema's domain or an empty
/// cell is an error, not a silent domain extension.
Dataset encode_with_schema(const RawCsv& raw, const Schema& schema);

std::string csv_quote(std::string_view field, char delimiter = ',');
void write_csv(const Dataset& dataset, std::ostream& out, char delimiter = ',');

}  // namespace abn
