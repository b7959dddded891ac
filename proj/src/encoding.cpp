#include "narmkit/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "narmkit/errors.hpp"

namespace narmkit {

namespace {

enum class Membership { Antecedent, Consequent, Absent };

Membership classify(double control) {
  if (control <= kAntecedentMax) return Membership::Antecedent;
  if (control <= kConsequentMax) return Membership::Consequent;
  return Membership::Absent;
}

std::int32_t bin_category(double u, std::size_t n_categories) {
  auto k = static_cast<std::int64_t>(std::floor(u * static_cast<double>(n_categories)));
  k = std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(n_categories) - 1);
  return static_cast<std::int32_t>(k);
}

// Interval from two unit components with swap ordering; the smaller one
// scales to the lower bound. Results clamp into the attribute domain to
// absorb floating point spill at the edges.
NumericInterval interval_from_pair(double v1, double v2, const Attribute& attr) {
  double lo = std::min(v1, v2);
  double hi = std::max(v1, v2);
  double lb = attr.min + lo * attr.range();
  double ub = attr.min + hi * attr.range();
  lb = std::clamp(lb, attr.min, attr.max);
  ub = std::clamp(ub, lb, attr.max);
  return NumericInterval{lb, ub};
}

Condition value_condition(std::size_t attr_index, const Attribute& attr, double v1,
                          double v2) {
  if (attr.kind == AttributeKind::Categorical)
    return category_condition(attr_index, bin_category(v1, attr.categories.size()));
  return Condition{attr_index, interval_from_pair(v1, v2, attr)};
}

void require_length(std::span<const double> values, std::size_t expected) {
  if (values.size() != expected)
    throw DimensionError("genotype length " + std::to_string(values.size()) +
                         ", expected " + std::to_string(expected));
}

DecodeOutcome finish(Rule&& rule) {
  if (rule.antecedent.empty()) return {std::nullopt, DecodeReason::EmptyAntecedent};
  if (rule.consequent.empty()) return {std::nullopt, DecodeReason::EmptyConsequent};
  return {std::move(rule), DecodeReason::Ok};
}

}  // namespace

std::size_t genotype_dimension(EncodingScheme scheme, std::size_t attribute_count) {
  return scheme == EncodingScheme::CutPoint ? attribute_count + 1 : 3 * attribute_count;
}

DecodeOutcome decode_triplet(std::span<const double> values, const Dataset& dataset) {
  const std::size_t n = dataset.attribute_count();
  require_length(values, 3 * n);
  Rule rule;
  for (std::size_t j = 0; j < n; ++j) {
    Membership side = classify(values[3 * j]);
    if (side == Membership::Absent) continue;
    Condition cond = value_condition(j, dataset.attribute(j), values[3 * j + 1],
                                     values[3 * j + 2]);
    (side == Membership::Antecedent ? rule.antecedent : rule.consequent)
        .push_back(std::move(cond));
  }
  return finish(std::move(rule));
}

DecodeOutcome decode_ae_av(std::span<const double> values, const Dataset& dataset) {
  const std::size_t n = dataset.attribute_count();
  require_length(values, 3 * n);

  // Existence part only separates included from absent, so the included
  // attribute with the largest existence value serves as the consequent
  // (first such index on ties).
  std::vector<std::size_t> included;
  for (std::size_t j = 0; j < n; ++j)
    if (values[3 * j] <= 0.5) included.push_back(j);
  if (included.empty()) return {std::nullopt, DecodeReason::EmptyAntecedent};

  std::size_t consequent_attr = included[0];
  for (std::size_t j : included)
    if (values[3 * j] > values[3 * consequent_attr]) consequent_attr = j;

  Rule rule;
  for (std::size_t j : included) {
    Condition cond = value_condition(j, dataset.attribute(j), values[3 * j + 1],
                                     values[3 * j + 2]);
    (j == consequent_attr ? rule.consequent : rule.antecedent)
        .push_back(std::move(cond));
  }
  return finish(std::move(rule));
}

DecodeOutcome decode_gaussian(std::span<const double> values, const Dataset& dataset) {
  const std::size_t n = dataset.attribute_count();
  require_length(values, 3 * n);
  Rule rule;
  for (std::size_t j = 0; j < n; ++j) {
    Membership side = classify(values[3 * j]);
    if (side == Membership::Absent) continue;
    const Attribute& attr = dataset.attribute(j);
    Condition cond;
    if (attr.kind == AttributeKind::Categorical) {
      cond = category_condition(j, bin_category(values[3 * j + 1],
                                                attr.categories.size()));
    } else {
      double center = attr.min + values[3 * j + 1] * attr.range();
      double half_width = values[3 * j + 2] * attr.range() / 2.0;
      double lb = std::max(attr.min, center - half_width);
      double ub = std::min(attr.max, center + half_width);
      cond = Condition{j, NumericInterval{lb, std::max(lb, ub)}};
    }
    (side == Membership::Antecedent ? rule.antecedent : rule.consequent)
        .push_back(std::move(cond));
  }
  return finish(std::move(rule));
}

DecodeOutcome decode_cutpoint(std::span<const double> values, const Dataset& dataset) {
  const std::size_t n = dataset.attribute_count();
  require_length(values, n + 1);

  // Positions map to indices 0..n where 0 omits the attribute and k refers
  // to attribute k-1. Duplicates after the first occurrence are dropped.
  // The fractional remainder of the position component picks the category
  // for categorical attributes, which carry no interval of their own here.
  std::vector<std::size_t> selected;
  std::vector<double> fractions;
  std::vector<bool> used(n, false);
  for (std::size_t p = 1; p <= n; ++p) {
    double scaled = values[p] * static_cast<double>(n + 1);
    auto idx = static_cast<std::int64_t>(std::floor(scaled));
    idx = std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(n));
    if (idx == 0) continue;
    std::size_t attr = static_cast<std::size_t>(idx - 1);
    if (used[attr]) continue;
    used[attr] = true;
    selected.push_back(attr);
    fractions.push_back(std::clamp(scaled - std::floor(scaled), 0.0, 1.0));
  }

  const std::size_t k = selected.size();
  if (k == 0) return {std::nullopt, DecodeReason::EmptyAntecedent};
  if (k == 1) return {std::nullopt, DecodeReason::EmptyConsequent};

  auto cut = static_cast<std::size_t>(
      1 + std::floor(values[0] * static_cast<double>(k - 1)));
  cut = std::min(cut, k - 1);

  Rule rule;
  for (std::size_t i = 0; i < k; ++i) {
    const Attribute& attr = dataset.attribute(selected[i]);
    Condition cond;
    if (attr.kind == AttributeKind::Categorical) {
      cond = category_condition(selected[i],
                                bin_category(fractions[i], attr.categories.size()));
    } else {
      cond = Condition{selected[i], NumericInterval{attr.min, attr.max}};
    }
    (i < cut ? rule.antecedent : rule.consequent).push_back(std::move(cond));
  }
  return finish(std::move(rule));
}

DecodeOutcome decode(const Genotype& genotype, const Dataset& dataset) {
  switch (genotype.scheme) {
    case EncodingScheme::Triplet:
      return decode_triplet(genotype.values, dataset);
    case EncodingScheme::AeAv:
      return decode_ae_av(genotype.values, dataset);
    case EncodingScheme::Gaussian:
      return decode_gaussian(genotype.values, dataset);
    case EncodingScheme::CutPoint:
      return decode_cutpoint(genotype.values, dataset);
  }
  throw ConfigError("unknown encoding scheme");
}

const char* scheme_name(EncodingScheme scheme) {
  switch (scheme) {
    case EncodingScheme::Triplet:
      return "triplet";
    case EncodingScheme::AeAv:
      return "aeav";
    case EncodingScheme::Gaussian:
      return "gaussian";
    case EncodingScheme::CutPoint:
      return "cutpoint";
  }
  return "?";
}

std::optional<EncodingScheme> scheme_from_name(std::string_view name) {
  if (name == "triplet") return EncodingScheme::Triplet;
  if (name == "aeav") return EncodingScheme::AeAv;
  if (name == "gaussian") return EncodingScheme::Gaussian;
  if (name == "cutpoint") return EncodingScheme::CutPoint;
  return std::nullopt;
}

}  // namespace narmkit
