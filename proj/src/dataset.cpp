#include "abn/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace abn {

Schema::Schema(std::vector<Attribute> attributes, std::size_t class_index)
    : attributes_(std::move(attributes)), class_index_(class_index) {
  if (attributes_.empty()) throw std::invalid_argument("schema has no attributes");
  if (class_index_ >= attributes_.size()) throw std::invalid_argument("class index out of range");
  std::set<std::string_view> names;
  for (const Attribute& attr : attributes_) {
    if (attr.name.empty()) throw std::invalid_argument("empty attribute name");
    if (!names.insert(attr.name).second)
      throw std::invalid_argument("duplicate attribute name: " + attr.name);
    if (attr.domain.empty())
      throw std::invalid_argument("attribute '" + attr.name + "' has an empty domain");
    std::set<std::string_view> labels(attr.domain.begin(), attr.domain.end());
    if (labels.size() != attr.domain.size())
      throw std::invalid_argument("attribute '" + attr.name + "' has duplicate domain labels");
  }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i].name == name) return i;
  return std::nullopt;
}

Dataset::Dataset(Schema schema, std::vector<std::uint32_t> cells)
    : schema_(std::move(schema)), cells_(std::move(cells)) {
  const std::size_t width = schema_.size();
  if (cells_.empty() || cells_.size() % width != 0)
    throw std::invalid_argument("cell buffer is not a non-empty multiple of the schema width");
  row_count_ = cells_.size() / width;
  for (std::size_t r = 0; r < row_count_; ++r)
    for (std::size_t a = 0; a < width; ++a)
      if (cells_[r * width + a] >= schema_.cardinality(a))
        throw std::invalid_argument("cell value out of domain range");
}

std::size_t ContingencyTable::offset(std::span<const std::size_t> values) const {
  if (values.size() != extents.size())
    throw std::invalid_argument("index arity does not match table arity");
  std::size_t off = 0;
  for (std::size_t k = 0; k < extents.size(); ++k) {
    if (values[k] >= extents[k]) throw std::out_of_range("table index out of range");
    off = off * extents[k] + values[k];
  }
  return off;
}

ContingencyTable joint_counts(const Dataset& dataset, std::span<const std::size_t> variables) {
  if (variables.empty()) throw std::invalid_argument("joint_counts: no variables given");
  const Schema& schema = dataset.schema();
  ContingencyTable table;
  table.variables.assign(variables.begin(), variables.end());
  std::set<std::size_t> distinct;
  std::size_t cells = 1;
  for (std::size_t v : variables) {
    if (v >= schema.size()) throw std::invalid_argument("joint_counts: variable index out of range");
    if (!distinct.insert(v).second) throw std::invalid_argument("joint_counts: duplicate variable index");
    table.extents.push_back(schema.cardinality(v));
    cells *= schema.cardinality(v);
  }
  table.counts.assign(cells, 0);
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < table.variables.size(); ++k)
      off = off * table.extents[k] + dataset.value(r, table.variables[k]);
    ++table.counts[off];
  }
  table.total = dataset.row_count();
  return table;
}

ContingencyTable joint_counts(const Dataset& dataset, std::initializer_list<std::size_t> variables) {
  return joint_counts(dataset, std::span<const std::size_t>(variables.begin(), variables.size()));
}

namespace {

// Character-level CSV record parser. Quotes are only special at field start;
// inside a quoted field "" is a literal quote and newlines are kept.
std::vector<std::vector<std::string>> parse_records(const std::string& text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool quote_closed = false;  // current field was quoted and the quote has closed
  bool any_in_record = false;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    quote_closed = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(fields));
    fields.clear();
    any_in_record = false;
  };

  std::size_t i = 0;
  // skip a UTF-8 byte-order mark
  if (text.size() >= 3 && text.compare(0, 3, "\xef\xbb\xbf") == 0) i = 3;

  const std::size_t n = text.size();
  while (i < n) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        quote_closed = true;
        ++i;
        continue;
      }
      field += ch;
      ++i;
      continue;
    }
    if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
      ++i;
      if (any_in_record) end_record();
      continue;
    }
    if (ch == delimiter) {
      end_field();
      any_in_record = true;
      ++i;
      continue;
    }
    if (quote_closed)
      throw std::runtime_error("malformed CSV: data after a closing quote");
    if (ch == '"' && field.empty()) {
      in_quotes = true;
      any_in_record = true;
      ++i;
      continue;
    }
    field += ch;
    any_in_record = true;
    ++i;
  }
  if (in_quotes) throw std::runtime_error("malformed CSV: unterminated quoted field");
  if (any_in_record) end_record();
  return records;
}

}  // namespace

RawCsv read_csv_raw(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::vector<std::vector<std::string>> records = parse_records(buffer.str(), delimiter);
  RawCsv raw;
  if (records.empty()) return raw;
  raw.header = std::move(records.front());
  raw.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
  return raw;
}

Dataset load_csv(const std::filesystem::path& path, std::string_view class_column,
                 MissingPolicy missing, char delimiter) {
  const RawCsv raw = read_csv_raw(path, delimiter);
  if (raw.header.empty()) throw std::runtime_error("CSV has no header row: " + path.string());

  std::set<std::string_view> seen;
  for (const std::string& name : raw.header) {
    if (name.empty()) throw std::runtime_error("CSV header contains an empty attribute name");
    if (!seen.insert(name).second)
      throw std::runtime_error("CSV header contains a duplicate attribute name: " + name);
  }
  const auto class_it = std::find(raw.header.begin(), raw.header.end(), class_column);
  if (class_it == raw.header.end())
    throw std::runtime_error("class column '" + std::string(class_column) + "' not found in header");
  const std::size_t class_index = static_cast<std::size_t>(class_it - raw.header.begin());
  const std::size_t width = raw.header.size();

  std::vector<const std::vector<std::string>*> retained;
  retained.reserve(raw.rows.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    if (row.size() != width)
      throw std::runtime_error("ragged CSV row " + std::to_string(r + 1) + ": expected " +
                               std::to_string(width) + " fields, got " + std::to_string(row.size()));
    const bool has_missing = std::any_of(row.begin(), row.end(),
                                         [](const std::string& cell) { return cell.empty(); });
    if (has_missing) {
      if (missing == MissingPolicy::error)
        throw std::runtime_error("missing value in CSV row " + std::to_string(r + 1));
      continue;
    }
    retained.push_back(&row);
  }
  if (retained.empty()) throw std::runtime_error("zero rows remaining after ingestion");

  // infer domains: sorted distinct values per column over retained rows
  std::vector<std::set<std::string>> values(width);
  for (const auto* row : retained)
    for (std::size_t a = 0; a < width; ++a) values[a].insert((*row)[a]);

  std::vector<Attribute> attributes(width);
  std::vector<std::map<std::string_view, std::uint32_t>> codes(width);
  for (std::size_t a = 0; a < width; ++a) {
    attributes[a].name = raw.header[a];
    attributes[a].domain.assign(values[a].begin(), values[a].end());
    for (std::uint32_t code = 0; code < attributes[a].domain.size(); ++code)
      codes[a][attributes[a].domain[code]] = code;
  }

  std::vector<std::uint32_t> cells;
  cells.reserve(retained.size() * width);
  for (const auto* row : retained)
    for (std::size_t a = 0; a < width; ++a) cells.push_back(codes[a].at((*row)[a]));
  return Dataset(Schema(std::move(attributes), class_index), std::move(cells));
}

Dataset encode_with_schema(const RawCsv& raw, const Schema& schema) {
  if (raw.header.empty()) throw std::runtime_error("CSV has no header row");
  std::vector<std::size_t> columns(schema.size());
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const auto it = std::find(raw.header.begin(), raw.header.end(), schema.attribute(a).name);
    if (it == raw.header.end())
      throw std::runtime_error("CSV is missing column '" + schema.attribute(a).name + "'");
    columns[a] = static_cast<std::size_t>(it - raw.header.begin());
  }
  if (raw.rows.empty()) throw std::runtime_error("CSV has no data rows");

  std::vector<std::uint32_t> cells;
  cells.reserve(raw.rows.size() * schema.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    if (row.size() != raw.header.size())
      throw std::runtime_error("ragged CSV row " + std::to_string(r + 1));
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const std::string& cell = row[columns[a]];
      if (cell.empty()) throw std::runtime_error("missing value in CSV row " + std::to_string(r + 1));
      const auto& domain = schema.attribute(a).domain;
      const auto pos = std::find(domain.begin(), domain.end(), cell);
      if (pos == domain.end())
        throw std::runtime_error("value '" + cell + "' is not in the domain of attribute '" +
                                 schema.attribute(a).name + "'");
      cells.push_back(static_cast<std::uint32_t>(pos - domain.begin()));
    }
  }
  return Dataset(schema, std::move(cells));
}

std::string csv_quote(std::string_view field, char delimiter) {
  const bool needs_quotes =
      field.find_first_of("\"\r\n") != std::string_view::npos ||
      field.find(delimiter) != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const Dataset& dataset, std::ostream& out, char delimiter) {
  const Schema& schema = dataset.schema();
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (a) out << delimiter;
    out << csv_quote(schema.attribute(a).name, delimiter);
  }
  out << '\n';
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (a) out << delimiter;
      out << csv_quote(schema.attribute(a).domain[dataset.value(r, a)], delimiter);
    }
    out << '\n';
  }
}

}  // namespace abn
