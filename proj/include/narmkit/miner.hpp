#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "narmkit/dataset.hpp"
#include "narmkit/encoding.hpp"
#include "narmkit/fitness.hpp"
#include "narmkit/optimizer.hpp"
#include "narmkit/rule.hpp"

namespace narmkit {

enum class MoMode { WeightedSum, Pareto };

const char* mo_mode_name(MoMode mode);

struct MiningConfig {
  EncodingScheme scheme = EncodingScheme::Triplet;
  std::vector<ObjectiveSpec> objectives;
  MoMode mo_mode = MoMode::WeightedSum;
  std::vector<double> weights;  // WeightedSum only, one per objective
  OptimizerConfig optimizer;
  double min_support = 0.0;
  double min_confidence = 0.0;
  InterestingnessVariant interestingness = InterestingnessVariant::Normalized;
  std::size_t archive_capacity = 100;  // Pareto only
};

void validate_config(const MiningConfig& config, const Dataset& dataset);

struct MinedRule {
  Rule rule;
  Metrics metrics;
  double score = 0.0;  // weighted score in WeightedSum mode, 0 in Pareto mode
};

struct Provenance {
  MiningConfig config;
  std::uint64_t dataset_fingerprint = 0;
};

struct RuleSet {
  std::vector<MinedRule> rules;
  Provenance provenance;
  RunTrace trace;
};

/// Runs one mining pass: decode, coverage, measures, then either weighted-sum
/// scalarization or Pareto archive maintenance. WeightedSum mode harvests
/// every distinct feasible rule whose thresholds pass; Pareto mode returns
/// the archive front. Deterministic given config, seed and dataset,
/// independent of the thread count.
RuleSet mine(const Dataset& dataset, const MiningConfig& config);

/// Collapses rules with identical canonical serialization, keeping the
/// higher-support instance. Exact-match policy only.
std::vector<MinedRule> dedup(std::vector<MinedRule> rules);

/// Synthetic benchmark: numeric dataset with a planted implication
/// attr0 in [0,0.5] => attr1 in [0.5,1] holding in ~frequency of the rows,
/// while rows violating the antecedent-consequent link keep attr1 below 0.5.
/// Returns the dataset and the planted ground-truth rule.
std::pair<Dataset, Rule> generate_planted(std::size_t n_attributes, std::size_t rows,
                                          double planted_frequency, std::uint64_t seed);

}  // namespace narmkit
