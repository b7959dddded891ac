#include "narmkit/rule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "narmkit/errors.hpp"

namespace narmkit {

namespace {

std::string short_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<Condition> sorted_by_attribute(const std::vector<Condition>& side) {
  std::vector<Condition> out = side;
  std::sort(out.begin(), out.end(), [](const Condition& a, const Condition& b) {
    return a.attribute_index < b.attribute_index;
  });
  return out;
}

void append_side_key(std::string& key, const std::vector<Condition>& side) {
  bool first = true;
  for (const Condition& c : sorted_by_attribute(side)) {
    if (!first) key += '&';
    first = false;
    key += 'a' + std::to_string(c.attribute_index);
    if (c.is_numeric()) {
      key += "=[" + fixed6(c.interval().lb) + ',' + fixed6(c.interval().ub) + ']';
    } else {
      key += "=#" + std::to_string(c.category().category_index);
    }
  }
}

void append_side_line(std::string& out, const std::vector<Condition>& side,
                      const Dataset& dataset) {
  bool first = true;
  for (const Condition& c : side) {
    if (!first) out += ", ";
    first = false;
    const Attribute& a = dataset.attribute(c.attribute_index);
    out += a.name;
    if (c.is_numeric()) {
      out += "∈[" + short_double(c.interval().lb) + ',' +
             short_double(c.interval().ub) + ']';
    } else {
      out += '=' + a.categories[static_cast<std::size_t>(c.category().category_index)];
    }
  }
}

}  // namespace

Condition numeric_condition(std::size_t attribute_index, double lb, double ub) {
  return Condition{attribute_index, NumericInterval{lb, ub}};
}

Condition category_condition(std::size_t attribute_index, std::int32_t category_index) {
  return Condition{attribute_index, CategoryEquals{category_index}};
}

const char* interestingness_variant_name(InterestingnessVariant variant) {
  return variant == InterestingnessVariant::Normalized ? "normalized" : "literal";
}

double support(const CoverageCounts& counts, std::size_t transaction_count) {
  return static_cast<double>(counts.both_count) /
         static_cast<double>(transaction_count);
}

double confidence(const CoverageCounts& counts) {
  if (counts.antecedent_count == 0) return 0.0;
  return static_cast<double>(counts.both_count) /
         static_cast<double>(counts.antecedent_count);
}

double comprehensibility(std::size_t consequent_conditions, std::size_t total_conditions) {
  return std::log(1.0 + static_cast<double>(consequent_conditions)) /
         std::log(1.0 + static_cast<double>(total_conditions));
}

double comprehensibility(const Rule& rule) {
  return comprehensibility(rule.consequent.size(), rule.condition_count());
}

double interestingness(const CoverageCounts& counts, std::size_t transaction_count,
                       InterestingnessVariant variant) {
  if (counts.antecedent_count == 0 || counts.consequent_count == 0) return 0.0;
  const double m = static_cast<double>(transaction_count);
  const double s_xy = static_cast<double>(counts.both_count) / m;
  const double s_x = static_cast<double>(counts.antecedent_count) / m;
  const double s_y = static_cast<double>(counts.consequent_count) / m;
  const double third = variant == InterestingnessVariant::Normalized
                           ? 1.0 - s_xy
                           : 1.0 - s_xy / m;
  return (s_xy / s_y) * (s_xy / s_x) * third;
}

double amplitude(const Rule& rule, const Dataset& dataset) {
  double ratio_sum = 0.0;
  std::size_t n = 0;
  for (const auto* side : {&rule.antecedent, &rule.consequent}) {
    for (const Condition& c : *side) {
      ++n;
      if (!c.is_numeric()) continue;  // a single category is a point
      const Attribute& a = dataset.attribute(c.attribute_index);
      if (a.range() <= 0.0) continue;  // zero-range attribute, point interval
      double ratio = (c.interval().ub - c.interval().lb) / a.range();
      ratio_sum += std::clamp(ratio, 0.0, 1.0);
    }
  }
  if (n == 0) return 0.0;
  return 1.0 - ratio_sum / static_cast<double>(n);
}

Metrics metrics_from_counts(const Rule& rule, const Dataset& dataset,
                            const CoverageCounts& counts,
                            InterestingnessVariant variant) {
  const std::size_t m = dataset.transaction_count();
  Metrics metrics;
  metrics.support = support(counts, m);
  metrics.confidence = confidence(counts);
  metrics.comprehensibility = comprehensibility(rule);
  metrics.interestingness = interestingness(counts, m, variant);
  metrics.amplitude = amplitude(rule, dataset);
  return metrics;
}

Metrics compute_metrics(const Rule& rule, const Dataset& dataset,
                        InterestingnessVariant variant) {
  return metrics_from_counts(rule, dataset, coverage(dataset, rule), variant);
}

void validate_rule(const Rule& rule, const Dataset& dataset) {
  if (rule.antecedent.empty()) throw FormatError("rule has an empty antecedent");
  if (rule.consequent.empty()) throw FormatError("rule has an empty consequent");
  std::set<std::size_t> seen;
  for (const auto* side : {&rule.antecedent, &rule.consequent}) {
    for (const Condition& c : *side) {
      if (c.attribute_index >= dataset.attribute_count())
        throw IndexError("rule references attribute " +
                         std::to_string(c.attribute_index) + " of " +
                         std::to_string(dataset.attribute_count()));
      const Attribute& a = dataset.attribute(c.attribute_index);
      if (!seen.insert(c.attribute_index).second)
        throw FormatError("attribute " + a.name + " appears twice in the rule");
      if (c.is_numeric()) {
        if (a.kind != AttributeKind::Numeric)
          throw FormatError("interval condition on categorical attribute " + a.name);
        if (!(c.interval().lb <= c.interval().ub))
          throw FormatError("interval bounds out of order on attribute " + a.name);
      } else {
        if (a.kind != AttributeKind::Categorical)
          throw FormatError("category condition on numeric attribute " + a.name);
        std::int32_t k = c.category().category_index;
        if (k < 0 || static_cast<std::size_t>(k) >= a.categories.size())
          throw IndexError("category index out of range on attribute " + a.name);
      }
    }
  }
}

std::string canonical_key(const Rule& rule) {
  std::string key;
  append_side_key(key, rule.antecedent);
  key += "=>";
  append_side_key(key, rule.consequent);
  return key;
}

std::string to_line(const Rule& rule, const Dataset& dataset) {
  std::string out = "A: ";
  append_side_line(out, rule.antecedent, dataset);
  out += " => C: ";
  append_side_line(out, rule.consequent, dataset);
  return out;
}

std::string to_line(const Rule& rule, const Dataset& dataset, const Metrics& metrics) {
  std::string out = to_line(rule, dataset);
  out += " | supp=" + short_double(metrics.support);
  out += ", conf=" + short_double(metrics.confidence);
  out += ", comp=" + short_double(metrics.comprehensibility);
  out += ", int=" + short_double(metrics.interestingness);
  out += ", ampl=" + short_double(metrics.amplitude);
  return out;
}

}  // namespace narmkit
