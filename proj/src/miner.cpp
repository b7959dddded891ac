#include "narmkit/miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "narmkit/errors.hpp"
#include "parallel.hpp"

namespace narmkit {

const char* mo_mode_name(MoMode mode) {
  return mode == MoMode::WeightedSum ? "weighted" : "pareto";
}

void validate_config(const MiningConfig& config, const Dataset& dataset) {
  if (dataset.attribute_count() < 2)
    throw ConfigError("mining needs a dataset with at least 2 attributes");
  if (config.objectives.empty()) throw ConfigError("no objectives selected");
  for (const ObjectiveSpec& spec : config.objectives) {
    if (spec.terms.empty()) throw ConfigError("objective '" + spec.name + "' has no terms");
    for (const ObjectiveTerm& term : spec.terms)
      if (term.weight < 0.0 || !std::isfinite(term.weight))
        throw ConfigError("objective '" + spec.name + "' has a negative term weight");
  }
  if (config.mo_mode == MoMode::WeightedSum) {
    if (config.weights.size() != config.objectives.size())
      throw ConfigError("weight count does not match objective count");
    for (double w : config.weights)
      if (w < 0.0 || !std::isfinite(w)) throw ConfigError("weights must be >= 0");
  } else {
    if (!config.weights.empty())
      throw ConfigError("weights only apply to weighted-sum mode");
    if (config.archive_capacity == 0)
      throw ConfigError("archive capacity must be positive");
  }
  for (double t : {config.min_support, config.min_confidence})
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("thresholds must lie in [0,1]");
}

namespace {

DecodeOutcome decode_span(EncodingScheme scheme, std::span<const double> values,
                          const Dataset& dataset) {
  switch (scheme) {
    case EncodingScheme::Triplet:
      return decode_triplet(values, dataset);
    case EncodingScheme::AeAv:
      return decode_ae_av(values, dataset);
    case EncodingScheme::Gaussian:
      return decode_gaussian(values, dataset);
    case EncodingScheme::CutPoint:
      return decode_cutpoint(values, dataset);
  }
  throw ConfigError("unknown encoding scheme");
}

struct Evaluation {
  bool feasible = false;
  Rule rule;
  Metrics metrics;
  ObjectiveVector objectives;
  double scalar = 0.0;
};

}  // namespace

RuleSet mine(const Dataset& dataset, const MiningConfig& config) {
  validate_config(config, dataset);

  const SearchSpace space{genotype_dimension(config.scheme, dataset.attribute_count())};
  const bool pareto = config.mo_mode == MoMode::Pareto;

  // The single-objective engine needs a scalar even in Pareto mode. Plain
  // support/confidence scalarization peaks at vacuous full-domain rules, so
  // the driving scalar is the mean of the configured objectives extended by
  // interestingness and amplitude when those are not already selected; the
  // archive itself tracks only the configured objectives.
  bool have_interest = false;
  bool have_amplitude = false;
  for (const ObjectiveSpec& spec : config.objectives)
    for (const ObjectiveTerm& term : spec.terms) {
      have_interest |= term.measure == Measure::Interestingness;
      have_amplitude |= term.measure == Measure::Amplitude;
    }

  std::map<std::string, MinedRule> harvest;
  std::optional<ParetoArchive> archive;
  if (pareto) archive.emplace(config.objectives.size(), config.archive_capacity);

  const unsigned threads = config.optimizer.threads;

  BatchObjective objective = [&](const std::vector<std::vector<double>>& batch) {
    std::vector<Evaluation> evaluations(batch.size());
    detail::parallel_for(batch.size(), threads, [&](std::size_t i) {
      Evaluation& ev = evaluations[i];
      DecodeOutcome outcome = decode_span(config.scheme, batch[i], dataset);
      if (!outcome.ok()) return;  // infeasible keeps scalar 0
      ev.feasible = true;
      ev.rule = std::move(*outcome.rule);
      CoverageCounts counts = coverage(dataset, ev.rule);
      ev.metrics = metrics_from_counts(ev.rule, dataset, counts, config.interestingness);
      ev.objectives.values.reserve(config.objectives.size());
      for (const ObjectiveSpec& spec : config.objectives)
        ev.objectives.values.push_back(objective_value(spec, ev.metrics));
      if (!pareto) {
        ev.scalar = weighted_sum(ev.objectives, config.weights);
      } else {
        double total = 0.0;
        std::size_t parts = ev.objectives.values.size();
        for (double v : ev.objectives.values) total += v;
        if (!have_interest) {
          total += ev.metrics.interestingness;
          ++parts;
        }
        if (!have_amplitude) {
          total += ev.metrics.amplitude;
          ++parts;
        }
        ev.scalar = total / static_cast<double>(parts);
      }
    });

    // Harvest and archive maintenance run sequentially in batch order so the
    // result cannot depend on evaluation scheduling.
    std::vector<double> fitness(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Evaluation& ev = evaluations[i];
      fitness[i] = ev.scalar;
      if (!ev.feasible) continue;
      if (ev.metrics.support < config.min_support ||
          ev.metrics.confidence < config.min_confidence)
        continue;
      if (pareto) {
        archive->insert(ev.rule, std::move(ev.objectives));
      } else {
        std::string key = canonical_key(ev.rule);
        auto it = harvest.find(key);
        if (it == harvest.end())
          harvest.emplace(std::move(key),
                          MinedRule{std::move(ev.rule), ev.metrics, ev.scalar});
        else if (ev.metrics.support > it->second.metrics.support)
          it->second = MinedRule{std::move(ev.rule), ev.metrics, ev.scalar};
      }
    }
    return fitness;
  };

  RunResult run_result = run(space, objective, config.optimizer);

  RuleSet out;
  out.provenance.config = config;
  out.provenance.dataset_fingerprint = dataset.fingerprint();
  out.trace = std::move(run_result.trace);

  if (pareto) {
    struct Keyed {
      MinedRule mined;
      std::string key;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(archive->size());
    for (const ParetoArchive::Entry& entry : archive->entries()) {
      Metrics metrics = compute_metrics(entry.rule, dataset, config.interestingness);
      keyed.push_back({MinedRule{entry.rule, metrics, 0.0}, entry.key});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
      if (a.mined.metrics.support != b.mined.metrics.support)
        return a.mined.metrics.support > b.mined.metrics.support;
      if (a.mined.metrics.confidence != b.mined.metrics.confidence)
        return a.mined.metrics.confidence > b.mined.metrics.confidence;
      return a.key < b.key;
    });
    for (Keyed& k : keyed) out.rules.push_back(std::move(k.mined));
  } else {
    std::vector<std::pair<std::string, MinedRule>> keyed;
    keyed.reserve(harvest.size());
    for (auto& [key, mined] : harvest) keyed.emplace_back(key, std::move(mined));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.second.score != b.second.score) return a.second.score > b.second.score;
      return a.first < b.first;
    });
    for (auto& [key, mined] : keyed) out.rules.push_back(std::move(mined));
  }
  return out;
}

std::vector<MinedRule> dedup(std::vector<MinedRule> rules) {
  std::map<std::string, std::size_t> first_seen;
  std::vector<MinedRule> out;
  out.reserve(rules.size());
  for (MinedRule& mined : rules) {
    std::string key = canonical_key(mined.rule);
    auto it = first_seen.find(key);
    if (it == first_seen.end()) {
      first_seen.emplace(std::move(key), out.size());
      out.push_back(std::move(mined));
    } else if (mined.metrics.support > out[it->second].metrics.support) {
      out[it->second] = std::move(mined);
    }
  }
  return out;
}

std::pair<Dataset, Rule> generate_planted(std::size_t n_attributes, std::size_t rows,
                                          double planted_frequency, std::uint64_t seed) {
  if (n_attributes < 2) throw ConfigError("planted dataset needs at least 2 attributes");
  if (rows < 20) throw ConfigError("planted dataset needs at least 20 rows");
  if (!(planted_frequency > 0.0 && planted_frequency < 1.0))
    throw ConfigError("planted frequency must lie in (0,1)");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> low(0.0, 0.5);
  std::uniform_real_distribution<double> high(0.5, 1.0);

  // Share of non-planted rows that still fall into the antecedent band; those
  // rows keep attr1 below the consequent band and are the only confidence
  // leak, so conf = freq / (freq + (1-freq) * kAntecedentLeak).
  constexpr double kAntecedentLeak = 0.1;

  std::vector<std::vector<double>> columns(n_attributes, std::vector<double>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    if (unit(rng) < planted_frequency) {
      columns[0][i] = low(rng);
      columns[1][i] = high(rng);
    } else if (unit(rng) < kAntecedentLeak) {
      columns[0][i] = low(rng);
      columns[1][i] = low(rng);
    } else {
      columns[0][i] = 0.5 + 0.5 * unit(rng);
      columns[1][i] = unit(rng);
    }
    for (std::size_t j = 2; j < n_attributes; ++j) columns[j][i] = unit(rng);
  }

  std::vector<std::string> names(n_attributes);
  for (std::size_t j = 0; j < n_attributes; ++j) names[j] = "a" + std::to_string(j);

  Rule truth;
  truth.antecedent.push_back(numeric_condition(0, 0.0, 0.5));
  truth.consequent.push_back(numeric_condition(1, 0.5, 1.0));

  return {Dataset::from_numeric_columns(std::move(names), std::move(columns)),
          std::move(truth)};
}

}  // namespace narmkit
