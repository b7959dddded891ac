#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "narmkit/dataset.hpp"
#include "narmkit/encoding.hpp"
#include "narmkit/errors.hpp"
#include "narmkit/fitness.hpp"
#include "narmkit/miner.hpp"
#include "narmkit/optimizer.hpp"
#include "narmkit/rule.hpp"
#include "narmkit/rule_io.hpp"

namespace py = pybind11;
using namespace narmkit;

namespace {

Condition condition_from_py(const Dataset& ds, const py::dict& record) {
  std::string name = record["attribute"].cast<std::string>();
  auto index = ds.attribute_index(name);
  if (!index) throw IndexError("unknown attribute '" + name + "'");
  if (record.contains("interval")) {
    auto pair = record["interval"].cast<std::pair<double, double>>();
    return numeric_condition(*index, pair.first, pair.second);
  }
  if (record.contains("category")) {
    const Attribute& attr = ds.attribute(*index);
    std::string cat = record["category"].cast<std::string>();
    for (std::size_t k = 0; k < attr.categories.size(); ++k)
      if (attr.categories[k] == cat)
        return category_condition(*index, static_cast<std::int32_t>(k));
    throw IndexError("unknown category '" + cat + "'");
  }
  throw FormatError("condition needs 'interval' or 'category'");
}

Rule rule_from_py(const Dataset& ds, const py::list& antecedent,
                  const py::list& consequent) {
  Rule rule;
  for (auto item : antecedent)
    rule.antecedent.push_back(condition_from_py(ds, item.cast<py::dict>()));
  for (auto item : consequent)
    rule.consequent.push_back(condition_from_py(ds, item.cast<py::dict>()));
  validate_rule(rule, ds);
  return rule;
}

py::dict condition_to_py(const Dataset& ds, const Condition& cond) {
  py::dict out;
  out["attribute"] = ds.attribute(cond.attribute_index).name;
  if (cond.is_numeric()) {
    out["interval"] = py::make_tuple(cond.interval().lb, cond.interval().ub);
  } else {
    out["category"] = ds.attribute(cond.attribute_index)
                          .categories[cond.category().category_index];
  }
  return out;
}

py::dict rule_to_py(const Dataset& ds, const Rule& rule) {
  py::list antecedent, consequent;
  for (const Condition& c : rule.antecedent) antecedent.append(condition_to_py(ds, c));
  for (const Condition& c : rule.consequent) consequent.append(condition_to_py(ds, c));
  py::dict out;
  out["antecedent"] = antecedent;
  out["consequent"] = consequent;
  out["text"] = to_line(rule, ds);
  return out;
}

py::dict metrics_to_py(const Metrics& m) {
  py::dict out;
  out["support"] = m.support;
  out["confidence"] = m.confidence;
  out["comprehensibility"] = m.comprehensibility;
  out["interestingness"] = m.interestingness;
  out["amplitude"] = m.amplitude;
  return out;
}

InterestingnessVariant variant_from_string(const std::string& name) {
  if (name == "normalized") return InterestingnessVariant::Normalized;
  if (name == "literal") return InterestingnessVariant::Literal;
  throw ConfigError("unknown interestingness variant '" + name + "'");
}

MiningConfig config_from_kwargs(const std::string& algorithm, const std::string& encoding,
                                const std::vector<std::string>& objectives,
                                const std::string& mode,
                                const std::vector<double>& weights, std::uint64_t seed,
                                std::size_t population, std::size_t evaluations,
                                double min_support, double min_confidence,
                                const std::string& interestingness,
                                std::size_t archive_capacity, unsigned threads) {
  MiningConfig config;
  auto alg = algorithm_from_name(algorithm);
  if (!alg) throw ConfigError("unknown algorithm '" + algorithm + "'");
  auto scheme = scheme_from_name(encoding);
  if (!scheme) throw ConfigError("unknown encoding '" + encoding + "'");
  config.optimizer.algorithm = *alg;
  config.scheme = *scheme;
  for (const std::string& text : objectives)
    config.objectives.push_back(parse_objective(text));
  if (mode == "weighted")
    config.mo_mode = MoMode::WeightedSum;
  else if (mode == "pareto")
    config.mo_mode = MoMode::Pareto;
  else
    throw ConfigError("mode must be 'weighted' or 'pareto'");
  config.weights = weights;
  config.optimizer.seed = seed;
  config.optimizer.population_size = population;
  config.optimizer.max_evaluations = evaluations;
  config.optimizer.threads = threads;
  config.min_support = min_support;
  config.min_confidence = min_confidence;
  config.interestingness = variant_from_string(interestingness);
  config.archive_capacity = archive_capacity;
  return config;
}

}  // namespace

PYBIND11_MODULE(_narmkit, m) {
  m.doc() = "Numerical association rule mining with swarm optimizers";

  py::register_exception<IoError>(m, "IoError");
  py::register_exception<FormatError>(m, "FormatError");
  py::register_exception<narmkit::IndexError>(m, "RuleIndexError");
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<Attribute>(m, "Attribute")
      .def_readonly("name", &Attribute::name)
      .def_property_readonly(
          "kind",
          [](const Attribute& a) {
            return a.kind == AttributeKind::Numeric ? "numeric" : "categorical";
          })
      .def_readonly("min", &Attribute::min)
      .def_readonly("max", &Attribute::max)
      .def_readonly("categories", &Attribute::categories);

  py::class_<Dataset>(m, "Dataset")
      .def_static(
          "load_csv",
          [](const std::string& path, bool header) { return load_csv(path, header); },
          py::arg("path"), py::arg("header") = true)
      .def_static("from_columns", &Dataset::from_numeric_columns, py::arg("names"),
                  py::arg("columns"))
      .def_property_readonly("attribute_count", &Dataset::attribute_count)
      .def_property_readonly("transaction_count", &Dataset::transaction_count)
      .def_property_readonly("attributes", &Dataset::attributes)
      .def("fingerprint", &Dataset::fingerprint);

  m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("path"));

  m.def(
      "evaluate_rule",
      [](const Dataset& ds, const py::list& antecedent, const py::list& consequent,
         const std::string& interestingness) {
        Rule rule = rule_from_py(ds, antecedent, consequent);
        Metrics metrics =
            compute_metrics(rule, ds, variant_from_string(interestingness));
        return metrics_to_py(metrics);
      },
      py::arg("dataset"), py::arg("antecedent"), py::arg("consequent"),
      py::arg("interestingness") = "normalized",
      "Quality measures of one rule over a dataset");

  m.def(
      "decode",
      [](const Dataset& ds, const std::vector<double>& values,
         const std::string& scheme_name_str) {
        auto scheme = scheme_from_name(scheme_name_str);
        if (!scheme) throw ConfigError("unknown encoding '" + scheme_name_str + "'");
        DecodeOutcome out = decode(Genotype{values, *scheme}, ds);
        py::dict result;
        result["feasible"] = out.ok();
        if (out.ok()) {
          result["rule"] = rule_to_py(ds, *out.rule);
        } else {
          result["reason"] = out.reason == DecodeReason::EmptyAntecedent
                                 ? "empty_antecedent"
                                 : "empty_consequent";
        }
        return result;
      },
      py::arg("dataset"), py::arg("values"), py::arg("encoding"),
      "Genotype to rule mapping; returns feasibility and the decoded rule");

  m.def(
      "genotype_dimension",
      [](const std::string& scheme_name_str, std::size_t attribute_count) {
        auto scheme = scheme_from_name(scheme_name_str);
        if (!scheme) throw ConfigError("unknown encoding '" + scheme_name_str + "'");
        return genotype_dimension(*scheme, attribute_count);
      },
      py::arg("encoding"), py::arg("attribute_count"));

  m.def(
      "generate_planted",
      [](std::size_t attributes, std::size_t rows, double frequency, std::uint64_t seed) {
        auto [dataset, rule] = generate_planted(attributes, rows, frequency, seed);
        return py::make_tuple(dataset, rule_to_py(dataset, rule));
      },
      py::arg("attributes"), py::arg("rows"), py::arg("frequency"), py::arg("seed"),
      "Synthetic benchmark dataset with a planted implication");

  m.def(
      "mine",
      [](const Dataset& dataset, const std::string& algorithm, const std::string& encoding,
         const std::vector<std::string>& objectives, const std::string& mode,
         const std::vector<double>& weights, std::uint64_t seed, std::size_t population,
         std::size_t evaluations, double min_support, double min_confidence,
         const std::string& interestingness, std::size_t archive_capacity,
         unsigned threads) {
        std::vector<double> effective_weights = weights;
        if (mode == "weighted" && effective_weights.empty())
          effective_weights.assign(objectives.size(), 1.0);
        MiningConfig config = config_from_kwargs(
            algorithm, encoding, objectives, mode, effective_weights, seed, population,
            evaluations, min_support, min_confidence, interestingness, archive_capacity,
            threads);
        RuleSet ruleset = mine(dataset, config);
        py::list rules;
        for (const MinedRule& mined : ruleset.rules) {
          py::dict record = rule_to_py(dataset, mined.rule);
          record["metrics"] = metrics_to_py(mined.metrics);
          if (config.mo_mode == MoMode::WeightedSum) record["score"] = mined.score;
          rules.append(record);
        }
        py::dict out;
        out["rules"] = rules;
        out["evaluations"] = ruleset.trace.evaluations_used;
        out["json"] = ruleset_json_string(ruleset, dataset);
        return out;
      },
      py::arg("dataset"), py::arg("algorithm") = "pso", py::arg("encoding") = "triplet",
      py::arg("objectives") = std::vector<std::string>{"support", "confidence"},
      py::arg("mode") = "weighted",
      py::arg("weights") = std::vector<double>{}, py::arg("seed") = 1,
      py::arg("population") = 30, py::arg("evaluations") = 10000,
      py::arg("min_support") = 0.0, py::arg("min_confidence") = 0.0,
      py::arg("interestingness") = "normalized", py::arg("archive_capacity") = 100,
      py::arg("threads") = 1, "Run one mining pass and return the rule set");

  m.def(
      "optimize",
      [](const std::function<double(const std::vector<double>&)>& objective,
         std::size_t dimension, const std::string& algorithm, std::size_t population,
         std::size_t evaluations, std::uint64_t seed) {
        auto alg = algorithm_from_name(algorithm);
        if (!alg) throw ConfigError("unknown algorithm '" + algorithm + "'");
        OptimizerConfig config;
        config.algorithm = *alg;
        config.population_size = population;
        config.max_evaluations = evaluations;
        config.seed = seed;
        config.threads = 1;  // python callbacks hold the GIL
        RunResult result = run(SearchSpace{dimension}, objective, config);
        py::dict out;
        out["best"] = result.best_genotype;
        out["fitness"] = result.best_fitness;
        out["trace"] = result.trace.best_fitness_by_generation;
        return out;
      },
      py::arg("objective"), py::arg("dimension"), py::arg("algorithm") = "pso",
      py::arg("population") = 30, py::arg("evaluations") = 3000, py::arg("seed") = 1,
      "Maximize a python objective over the unit box");

  m.attr("__version__") = "0.1.0";
}
