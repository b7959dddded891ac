#include "narmkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "narmkit/errors.hpp"
#include "narmkit/rule.hpp"

namespace narmkit {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_full_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) return false;
  return std::isfinite(out);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void fnv1a(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= 0x1f;  // field separator
  h *= 1099511628211ULL;
}

}  // namespace

Dataset::Dataset(std::vector<Attribute> attributes,
                 std::vector<std::vector<double>> numeric_columns,
                 std::vector<std::vector<std::int32_t>> code_columns)
    : attributes_(std::move(attributes)),
      numeric_columns_(std::move(numeric_columns)),
      code_columns_(std::move(code_columns)) {
  if (attributes_.empty()) throw FormatError("dataset has no attributes");
  if (numeric_columns_.size() != attributes_.size() ||
      code_columns_.size() != attributes_.size())
    throw FormatError("column storage does not match attribute count");

  rows_ = 0;
  for (std::size_t j = 0; j < attributes_.size(); ++j) {
    const Attribute& a = attributes_[j];
    std::size_t n = a.kind == AttributeKind::Numeric ? numeric_columns_[j].size()
                                                     : code_columns_[j].size();
    if (j == 0)
      rows_ = n;
    else if (n != rows_)
      throw FormatError("ragged columns in dataset");
    if (a.kind == AttributeKind::Numeric) {
      if (!(a.min <= a.max) || !std::isfinite(a.min) || !std::isfinite(a.max))
        throw FormatError("invalid bounds for attribute " + a.name);
      for (double v : numeric_columns_[j])
        if (v < a.min || v > a.max)
          throw FormatError("cell outside declared bounds for attribute " + a.name);
    } else {
      if (a.categories.empty())
        throw FormatError("categorical attribute " + a.name + " has no categories");
      for (std::int32_t c : code_columns_[j])
        if (c < 0 || static_cast<std::size_t>(c) >= a.categories.size())
          throw FormatError("category code out of range for attribute " + a.name);
    }
  }
  if (rows_ == 0) throw FormatError("dataset has no transactions");
}

Dataset Dataset::from_numeric_columns(std::vector<std::string> names,
                                      std::vector<std::vector<double>> columns) {
  if (names.size() != columns.size())
    throw FormatError("names and columns differ in length");
  std::vector<Attribute> attrs(names.size());
  std::vector<std::vector<std::int32_t>> codes(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (columns[j].empty()) throw FormatError("empty column " + names[j]);
    auto [lo, hi] = std::minmax_element(columns[j].begin(), columns[j].end());
    attrs[j] = Attribute{std::move(names[j]), AttributeKind::Numeric, *lo, *hi, {}};
  }
  return Dataset(std::move(attrs), std::move(columns), std::move(codes));
}

const Attribute& Dataset::attribute(std::size_t index) const {
  if (index >= attributes_.size())
    throw IndexError("attribute index " + std::to_string(index) + " out of range");
  return attributes_[index];
}

std::optional<std::size_t> Dataset::attribute_index(const std::string& name) const {
  for (std::size_t j = 0; j < attributes_.size(); ++j)
    if (attributes_[j].name == name) return j;
  return std::nullopt;
}

double Dataset::numeric_at(std::size_t row, std::size_t column) const {
  return numeric_columns_[column][row];
}

std::int32_t Dataset::code_at(std::size_t row, std::size_t column) const {
  return code_columns_[column][row];
}

std::string Dataset::cell_text(std::size_t row, std::size_t column) const {
  const Attribute& a = attribute(column);
  if (a.kind == AttributeKind::Numeric) return format_double(numeric_at(row, column));
  return a.categories[static_cast<std::size_t>(code_at(row, column))];
}

std::uint64_t Dataset::fingerprint() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (const Attribute& a : attributes_) {
    fnv1a(h, a.name);
    fnv1a(h, a.kind == AttributeKind::Numeric ? "num" : "cat");
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < attributes_.size(); ++j) fnv1a(h, cell_text(i, j));
  return h;
}

SchemaOverride load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file " + path);
  SchemaOverride schema;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    auto cells = split_csv_line(t);
    if (cells.size() != 2)
      throw FormatError("schema line " + std::to_string(lineno) + ": expected name,kind");
    AttributeKind kind;
    if (cells[1] == "numeric")
      kind = AttributeKind::Numeric;
    else if (cells[1] == "categorical")
      kind = AttributeKind::Categorical;
    else
      throw FormatError("schema line " + std::to_string(lineno) + ": unknown kind '" +
                        cells[1] + "'");
    schema.columns.push_back({cells[0], kind});
  }
  if (schema.columns.empty()) throw FormatError("schema file " + path + " is empty");
  return schema;
}

Dataset load_csv(const std::string& path, bool header,
                 const std::optional<SchemaOverride>& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    rows.push_back(split_csv_line(line));
  }
  if (in.bad()) throw IoError("error while reading " + path);
  if (rows.empty()) throw FormatError(path + ": empty file");

  const std::size_t n_cols = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != n_cols)
      throw FormatError(path + ": ragged row " + std::to_string(i + 1));
  if (n_cols < 2) throw FormatError(path + ": need at least 2 columns");

  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (header) {
    names = rows.front();
    first_data = 1;
  } else {
    for (std::size_t j = 0; j < n_cols; ++j) names.push_back("c" + std::to_string(j));
  }
  if (rows.size() <= first_data) throw FormatError(path + ": no data rows");
  const std::size_t m = rows.size() - first_data;

  if (schema) {
    if (schema->columns.size() != n_cols)
      throw FormatError(path + ": schema declares " +
                        std::to_string(schema->columns.size()) + " columns, file has " +
                        std::to_string(n_cols));
    for (std::size_t j = 0; j < n_cols; ++j) names[j] = schema->columns[j].name;
  }

  std::vector<Attribute> attrs(n_cols);
  std::vector<std::vector<double>> numeric_cols(n_cols);
  std::vector<std::vector<std::int32_t>> code_cols(n_cols);

  for (std::size_t j = 0; j < n_cols; ++j) {
    bool numeric = true;
    std::vector<double> parsed(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::string& cell = rows[first_data + i][j];
      if (cell.empty())
        throw FormatError(path + ": blank cell at row " +
                          std::to_string(first_data + i + 1) + ", column " +
                          std::to_string(j + 1));
      if (numeric && !parse_full_double(cell, parsed[i])) numeric = false;
    }
    if (schema) {
      bool forced_numeric = schema->columns[j].kind == AttributeKind::Numeric;
      if (forced_numeric && !numeric)
        throw FormatError(path + ": column " + names[j] +
                          " declared numeric but contains non-numeric cells");
      numeric = forced_numeric;
    }

    if (numeric) {
      auto [lo, hi] = std::minmax_element(parsed.begin(), parsed.end());
      attrs[j] = Attribute{names[j], AttributeKind::Numeric, *lo, *hi, {}};
      numeric_cols[j] = std::move(parsed);
    } else {
      std::vector<std::string> categories;
      std::unordered_map<std::string, std::int32_t> index;
      std::vector<std::int32_t> codes(m);
      for (std::size_t i = 0; i < m; ++i) {
        const std::string& cell = rows[first_data + i][j];
        auto it = index.find(cell);
        if (it == index.end()) {
          it = index.emplace(cell, static_cast<std::int32_t>(categories.size())).first;
          categories.push_back(cell);
        }
        codes[i] = it->second;
      }
      attrs[j] = Attribute{names[j], AttributeKind::Categorical, 0.0, 0.0,
                           std::move(categories)};
      code_cols[j] = std::move(codes);
    }
  }

  return Dataset(std::move(attrs), std::move(numeric_cols), std::move(code_cols));
}

void write_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t j = 0; j < dataset.attribute_count(); ++j) {
    if (j) out << ',';
    out << dataset.attribute(j).name;
  }
  out << '\n';
  for (std::size_t i = 0; i < dataset.transaction_count(); ++i) {
    for (std::size_t j = 0; j < dataset.attribute_count(); ++j) {
      if (j) out << ',';
      out << dataset.cell_text(i, j);
    }
    out << '\n';
  }
  if (!out) throw IoError("error while writing " + path);
}

namespace {

bool satisfied(const Dataset& dataset, const Condition& cond, std::size_t row) {
  if (cond.is_numeric()) {
    double v = dataset.numeric_at(row, cond.attribute_index);
    return v >= cond.interval().lb && v <= cond.interval().ub;
  }
  return dataset.code_at(row, cond.attribute_index) == cond.category().category_index;
}

}  // namespace

CoverageCounts coverage(const Dataset& dataset, const Rule& rule) {
  for (const auto* side : {&rule.antecedent, &rule.consequent}) {
    for (const Condition& c : *side) {
      if (c.attribute_index >= dataset.attribute_count())
        throw IndexError("rule references attribute " +
                         std::to_string(c.attribute_index) + " of " +
                         std::to_string(dataset.attribute_count()));
      const Attribute& a = dataset.attribute(c.attribute_index);
      if (c.is_numeric() != (a.kind == AttributeKind::Numeric))
        throw IndexError("condition kind does not match attribute " + a.name);
    }
  }

  CoverageCounts counts;
  const std::size_t m = dataset.transaction_count();
  for (std::size_t i = 0; i < m; ++i) {
    bool ant = true;
    for (const Condition& c : rule.antecedent)
      if (!satisfied(dataset, c, i)) {
        ant = false;
        break;
      }
    bool cons = true;
    for (const Condition& c : rule.consequent)
      if (!satisfied(dataset, c, i)) {
        cons = false;
        break;
      }
    counts.antecedent_count += ant;
    counts.consequent_count += cons;
    counts.both_count += ant && cons;
  }
  return counts;
}

}  // namespace narmkit
