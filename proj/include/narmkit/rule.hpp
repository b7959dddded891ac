#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "narmkit/dataset.hpp"

namespace narmkit {

struct NumericInterval {
  double lb = 0.0;
  double ub = 0.0;
};

struct CategoryEquals {
  std::int32_t category_index = 0;
};

/// One attribute condition: a closed numeric interval or an exact category.
struct Condition {
  std::size_t attribute_index = 0;
  std::variant<NumericInterval, CategoryEquals> payload;

  bool is_numeric() const { return std::holds_alternative<NumericInterval>(payload); }
  const NumericInterval& interval() const { return std::get<NumericInterval>(payload); }
  const CategoryEquals& category() const { return std::get<CategoryEquals>(payload); }
};

Condition numeric_condition(std::size_t attribute_index, double lb, double ub);
Condition category_condition(std::size_t attribute_index, std::int32_t category_index);

/// An association rule: antecedent implies consequent. Both sides non-empty,
/// no attribute may appear twice anywhere in the rule.
struct Rule {
  std::vector<Condition> antecedent;
  std::vector<Condition> consequent;

  std::size_t condition_count() const { return antecedent.size() + consequent.size(); }
};

struct Metrics {
  double support = 0.0;
  double confidence = 0.0;
  double comprehensibility = 0.0;
  double interestingness = 0.0;
  double amplitude = 0.0;
};

enum class InterestingnessVariant { Normalized, Literal };

const char* interestingness_variant_name(InterestingnessVariant variant);

// Quality measures. All are maximized and depend only on their arguments.

double support(const CoverageCounts& counts, std::size_t transaction_count);

// both/antecedent; 0 when the antecedent covers nothing.
double confidence(const CoverageCounts& counts);

// log(1+consequent)/log(1+total) over condition counts.
double comprehensibility(std::size_t consequent_conditions, std::size_t total_conditions);
double comprehensibility(const Rule& rule);

// (s_xy/s_y)*(s_xy/s_x)*third, with third = 1-s_xy (Normalized) or
// 1-s_xy/m (Literal). Zero when either side covers nothing.
double interestingness(const CoverageCounts& counts, std::size_t transaction_count,
                       InterestingnessVariant variant);

// 1 - mean interval width ratio over all conditions; categorical conditions
// and zero-range attributes contribute ratio 0.
double amplitude(const Rule& rule, const Dataset& dataset);

Metrics metrics_from_counts(const Rule& rule, const Dataset& dataset,
                            const CoverageCounts& counts, InterestingnessVariant variant);
Metrics compute_metrics(const Rule& rule, const Dataset& dataset,
                        InterestingnessVariant variant);

/// Structural validation: attribute indices in range, payload kind matches
/// the attribute, lb <= ub, category index in range, both sides non-empty,
/// no duplicate attributes. Throws IndexError or FormatError.
void validate_rule(const Rule& rule, const Dataset& dataset);

/// Canonical serialization used for deduplication: conditions sorted by
/// attribute index, interval endpoints rounded to 6 decimal places.
std::string canonical_key(const Rule& rule);

std::string to_line(const Rule& rule, const Dataset& dataset);
std::string to_line(const Rule& rule, const Dataset& dataset, const Metrics& metrics);

}  // namespace narmkit
