#include "narmkit/rule_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "narmkit/errors.hpp"

namespace narmkit {

namespace {

using json = nlohmann::ordered_json;

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json side_to_json(const std::vector<Condition>& side, const Dataset& dataset) {
  json out = json::array();
  for (const Condition& c : side) {
    const Attribute& a = dataset.attribute(c.attribute_index);
    json record;
    record["attribute"] = a.name;
    if (c.is_numeric())
      record["interval"] = {c.interval().lb, c.interval().ub};
    else
      record["category"] =
          a.categories[static_cast<std::size_t>(c.category().category_index)];
    out.push_back(std::move(record));
  }
  return out;
}

json rule_to_json(const Rule& rule, const Dataset& dataset) {
  json out;
  out["antecedent"] = side_to_json(rule.antecedent, dataset);
  out["consequent"] = side_to_json(rule.consequent, dataset);
  return out;
}

json metrics_to_json(const Metrics& metrics) {
  json out;
  out["support"] = metrics.support;
  out["confidence"] = metrics.confidence;
  out["comprehensibility"] = metrics.comprehensibility;
  out["interestingness"] = metrics.interestingness;
  out["amplitude"] = metrics.amplitude;
  return out;
}

json provenance_to_json(const Provenance& provenance) {
  const MiningConfig& config = provenance.config;
  json out;
  out["algorithm"] = algorithm_name(config.optimizer.algorithm);
  out["encoding"] = scheme_name(config.scheme);
  json objectives = json::array();
  for (const ObjectiveSpec& spec : config.objectives) objectives.push_back(spec.name);
  out["objectives"] = std::move(objectives);
  out["mode"] = mo_mode_name(config.mo_mode);
  if (config.mo_mode == MoMode::WeightedSum) out["weights"] = config.weights;
  out["seed"] = config.optimizer.seed;
  out["population"] = config.optimizer.population_size;
  out["evaluations"] = config.optimizer.max_evaluations;
  out["min_support"] = config.min_support;
  out["min_confidence"] = config.min_confidence;
  out["interestingness"] = interestingness_variant_name(config.interestingness);
  if (config.mo_mode == MoMode::Pareto) out["archive_capacity"] = config.archive_capacity;
  switch (config.optimizer.algorithm) {
    case Algorithm::Pso:
      out["params"] = {{"inertia", config.optimizer.pso.inertia},
                       {"cognitive", config.optimizer.pso.cognitive},
                       {"social", config.optimizer.pso.social},
                       {"vmax", config.optimizer.pso.vmax}};
      break;
    case Algorithm::Bat:
      out["params"] = {{"freq_min", config.optimizer.bat.freq_min},
                       {"freq_max", config.optimizer.bat.freq_max},
                       {"loudness", config.optimizer.bat.loudness},
                       {"pulse_rate", config.optimizer.bat.pulse_rate},
                       {"alpha", config.optimizer.bat.alpha},
                       {"gamma", config.optimizer.bat.gamma}};
      break;
    case Algorithm::AcoR:
      out["params"] = {{"archive_size", config.optimizer.aco.archive_size},
                       {"locality", config.optimizer.aco.locality},
                       {"xi", config.optimizer.aco.xi}};
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(provenance.dataset_fingerprint));
  out["dataset_fingerprint"] = buf;
  return out;
}

}  // namespace

std::string ruleset_json_string(const RuleSet& ruleset, const Dataset& dataset) {
  json out;
  out["provenance"] = provenance_to_json(ruleset.provenance);
  json rules = json::array();
  const bool weighted = ruleset.provenance.config.mo_mode == MoMode::WeightedSum;
  for (const MinedRule& mined : ruleset.rules) {
    json record = rule_to_json(mined.rule, dataset);
    record["metrics"] = metrics_to_json(mined.metrics);
    if (weighted) record["score"] = mined.score;
    record["rule"] = to_line(mined.rule, dataset);
    rules.push_back(std::move(record));
  }
  out["rules"] = std::move(rules);
  return out.dump(2) + "\n";
}

std::string ruleset_csv_string(const RuleSet& ruleset, const Dataset& dataset) {
  const bool weighted = ruleset.provenance.config.mo_mode == MoMode::WeightedSum;
  std::string out = "rule,support,confidence,comprehensibility,interestingness,amplitude";
  if (weighted) out += ",score";
  out += '\n';
  for (const MinedRule& mined : ruleset.rules) {
    out += csv_quote(to_line(mined.rule, dataset));
    out += ',' + g17(mined.metrics.support);
    out += ',' + g17(mined.metrics.confidence);
    out += ',' + g17(mined.metrics.comprehensibility);
    out += ',' + g17(mined.metrics.interestingness);
    out += ',' + g17(mined.metrics.amplitude);
    if (weighted) out += ',' + g17(mined.score);
    out += '\n';
  }
  return out;
}

std::string archive_json_string(const ParetoArchive& archive,
                                const std::vector<ObjectiveSpec>& objectives,
                                const Dataset& dataset) {
  json out;
  json names = json::array();
  for (const ObjectiveSpec& spec : objectives) names.push_back(spec.name);
  out["objectives"] = std::move(names);
  json entries = json::array();
  for (const ParetoArchive::Entry& entry : archive.entries()) {
    json record = rule_to_json(entry.rule, dataset);
    record["values"] = entry.objectives.values;
    record["rule"] = to_line(entry.rule, dataset);
    entries.push_back(std::move(record));
  }
  out["entries"] = std::move(entries);
  return out.dump(2) + "\n";
}

std::string archive_csv_string(const ParetoArchive& archive,
                               const std::vector<ObjectiveSpec>& objectives,
                               const Dataset& dataset) {
  std::string out = "rule";
  for (const ObjectiveSpec& spec : objectives) out += ',' + spec.name;
  out += '\n';
  for (const ParetoArchive::Entry& entry : archive.entries()) {
    out += csv_quote(to_line(entry.rule, dataset));
    for (double v : entry.objectives.values) out += ',' + g17(v);
    out += '\n';
  }
  return out;
}

namespace {

Condition condition_from_json(const json& record, const Dataset& dataset,
                              const std::string& where) {
  if (!record.is_object())
    throw FormatError(where + ": condition must be an object");
  if (!record.contains("attribute") || !record["attribute"].is_string())
    throw FormatError(where + ": missing string field 'attribute'");
  const std::string name = record["attribute"].get<std::string>();
  auto index = dataset.attribute_index(name);
  if (!index) throw FormatError(where + ": unknown attribute '" + name + "'");
  const Attribute& attr = dataset.attribute(*index);

  if (record.contains("interval")) {
    const json& interval = record["interval"];
    if (!interval.is_array() || interval.size() != 2 || !interval[0].is_number() ||
        !interval[1].is_number())
      throw FormatError(where + ": 'interval' must be [lb, ub]");
    if (attr.kind != AttributeKind::Numeric)
      throw FormatError(where + ": attribute '" + name + "' is categorical");
    return numeric_condition(*index, interval[0].get<double>(),
                             interval[1].get<double>());
  }
  if (record.contains("category")) {
    if (!record["category"].is_string())
      throw FormatError(where + ": 'category' must be a string");
    if (attr.kind != AttributeKind::Categorical)
      throw FormatError(where + ": attribute '" + name + "' is numeric");
    const std::string cat = record["category"].get<std::string>();
    for (std::size_t k = 0; k < attr.categories.size(); ++k)
      if (attr.categories[k] == cat)
        return category_condition(*index, static_cast<std::int32_t>(k));
    throw FormatError(where + ": unknown category '" + cat + "' of attribute '" + name +
                      "'");
  }
  throw FormatError(where + ": condition needs 'interval' or 'category'");
}

std::vector<Condition> side_from_json(const json& side, const Dataset& dataset,
                                      const std::string& where) {
  if (!side.is_array()) throw FormatError(where + ": must be an array");
  std::vector<Condition> out;
  for (std::size_t i = 0; i < side.size(); ++i)
    out.push_back(
        condition_from_json(side[i], dataset, where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::vector<Rule> rules_from_json_string(const std::string& text, const Dataset& dataset) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("rules file is not valid JSON: ") + e.what());
  }
  const json* array = &doc;
  if (doc.is_object()) {
    if (!doc.contains("rules"))
      throw FormatError("rules file object lacks a 'rules' array");
    array = &doc["rules"];
  }
  if (!array->is_array()) throw FormatError("rules payload must be an array");

  std::vector<Rule> rules;
  for (std::size_t i = 0; i < array->size(); ++i) {
    const json& record = (*array)[i];
    const std::string where = "rules[" + std::to_string(i) + "]";
    if (!record.is_object()) throw FormatError(where + ": must be an object");
    if (!record.contains("antecedent") || !record.contains("consequent"))
      throw FormatError(where + ": needs 'antecedent' and 'consequent'");
    Rule rule;
    rule.antecedent = side_from_json(record["antecedent"], dataset, where + ".antecedent");
    rule.consequent = side_from_json(record["consequent"], dataset, where + ".consequent");
    try {
      validate_rule(rule, dataset);
    } catch (const std::runtime_error& e) {
      throw FormatError(where + ": " + e.what());
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<Rule> rules_from_json_file(const std::string& path, const Dataset& dataset) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return rules_from_json_string(buffer.str(), dataset);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("error while writing " + path);
}

std::string objective_list_string(const std::vector<ObjectiveSpec>& objectives) {
  std::string out;
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    if (i) out += ',';
    out += objectives[i].name;
  }
  return out;
}

}  // namespace narmkit
