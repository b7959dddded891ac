#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace narmkit {

struct Rule;

enum class AttributeKind { Numeric, Categorical };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::Numeric;
  double min = 0.0;  // numeric only, observed column minimum
  double max = 0.0;  // numeric only, observed column maximum
  std::vector<std::string> categories;  // categorical only, first-occurrence order

  double range() const { return max - min; }
};

struct CoverageCounts {
  std::size_t antecedent_count = 0;
  std::size_t both_count = 0;
  std::size_t consequent_count = 0;
};

/// Immutable in-memory transaction table. Column storage: numeric columns
/// hold doubles, categorical columns hold codes into Attribute::categories.
/// Safe for concurrent reads once constructed.
class Dataset {
public:
  Dataset(std::vector<Attribute> attributes,
          std::vector<std::vector<double>> numeric_columns,
          std::vector<std::vector<std::int32_t>> code_columns);

  // Builds a purely numeric dataset; bounds become the observed extrema.
  static Dataset from_numeric_columns(std::vector<std::string> names,
                                      std::vector<std::vector<double>> columns);

  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t transaction_count() const { return rows_; }

  const Attribute& attribute(std::size_t index) const;
  const std::vector<Attribute>& attributes() const { return attributes_; }
  std::optional<std::size_t> attribute_index(const std::string& name) const;

  double numeric_at(std::size_t row, std::size_t column) const;
  std::int32_t code_at(std::size_t row, std::size_t column) const;

  // Cell rendered as CSV text; numeric cells round-trip exactly.
  std::string cell_text(std::size_t row, std::size_t column) const;

  // FNV-1a hash over schema and cells, recorded in provenance.
  std::uint64_t fingerprint() const;

private:
  std::vector<Attribute> attributes_;
  std::vector<std::vector<double>> numeric_columns_;
  std::vector<std::vector<std::int32_t>> code_columns_;
  std::size_t rows_ = 0;
};

/// Per-column schema forcing names and kinds, line format "name,kind"
/// with kind one of numeric|categorical.
struct SchemaOverride {
  struct Column {
    std::string name;
    AttributeKind kind;
  };
  std::vector<Column> columns;
};

SchemaOverride load_schema(const std::string& path);

/// Loads a comma-separated UTF-8 file. Attribute kinds are inferred per
/// column (full numeric parse -> Numeric, anything else -> Categorical)
/// unless a schema override is given. Blank cells are rejected.
Dataset load_csv(const std::string& path, bool header,
                 const std::optional<SchemaOverride>& schema = std::nullopt);

void write_csv(const Dataset& dataset, const std::string& path);

/// Counts transactions satisfying the antecedent, the consequent, and both.
/// Numeric conditions are closed intervals; categorical conditions are
/// exact category matches.
CoverageCounts coverage(const Dataset& dataset, const Rule& rule);

}  // namespace narmkit
