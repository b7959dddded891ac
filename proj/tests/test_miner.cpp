#include <doctest.h>

#include <set>

#include "narmkit/errors.hpp"
#include "narmkit/miner.hpp"
#include "narmkit/rule_io.hpp"
#include "test_support.hpp"

using namespace narmkit;

namespace {

MiningConfig quick_config(MoMode mode) {
  MiningConfig config;
  config.scheme = EncodingScheme::Triplet;
  config.objectives = {parse_objective("support"), parse_objective("confidence")};
  config.mo_mode = mode;
  if (mode == MoMode::WeightedSum) config.weights = {0.5, 0.5};
  config.optimizer.population_size = 20;
  config.optimizer.max_evaluations = 2000;
  config.optimizer.seed = 7;
  return config;
}

}  // namespace

TEST_CASE("generate_planted is deterministic and carries the stated structure") {
  auto [ds_a, rule_a] = generate_planted(4, 1000, 0.6, 99);
  auto [ds_b, rule_b] = generate_planted(4, 1000, 0.6, 99);
  CHECK(ds_a.fingerprint() == ds_b.fingerprint());
  CHECK(canonical_key(rule_a) == canonical_key(rule_b));

  auto [ds_c, rule_c] = generate_planted(4, 1000, 0.6, 100);
  CHECK(ds_a.fingerprint() != ds_c.fingerprint());

  CoverageCounts counts = coverage(ds_a, rule_a);
  double supp = support(counts, ds_a.transaction_count());
  double conf = confidence(counts);
  CHECK(supp == doctest::Approx(0.6).epsilon(0.09));  // within +-0.05 absolute
  CHECK(supp >= 0.55);
  CHECK(supp <= 0.65);
  // confidence tracks freq / P(antecedent), with a small antecedent leak
  double ant_share = double(counts.antecedent_count) / double(ds_a.transaction_count());
  CHECK(conf == doctest::Approx(supp / ant_share).epsilon(1e-12));
  CHECK(conf >= 0.9);

  CHECK_THROWS_AS(generate_planted(1, 100, 0.5, 1), ConfigError);
  CHECK_THROWS_AS(generate_planted(4, 5, 0.5, 1), ConfigError);
  CHECK_THROWS_AS(generate_planted(4, 100, 1.5, 1), ConfigError);
  CHECK_THROWS_AS(generate_planted(4, 100, 0.0, 1), ConfigError);
}

TEST_CASE("low planted frequency gives low ground-truth support") {
  auto [ds, rule] = generate_planted(3, 500, 0.02, 5);
  CHECK(support(coverage(ds, rule), ds.transaction_count()) <= 0.06);
}

TEST_CASE("config validation") {
  auto [ds, rule] = generate_planted(3, 50, 0.5, 1);

  MiningConfig config = quick_config(MoMode::WeightedSum);
  CHECK_NOTHROW(validate_config(config, ds));

  MiningConfig no_objectives = config;
  no_objectives.objectives.clear();
  CHECK_THROWS_AS(validate_config(no_objectives, ds), ConfigError);

  MiningConfig short_weights = config;
  short_weights.weights = {1.0};
  CHECK_THROWS_AS(validate_config(short_weights, ds), ConfigError);

  MiningConfig pareto_weights = quick_config(MoMode::Pareto);
  pareto_weights.weights = {0.5, 0.5};
  CHECK_THROWS_AS(validate_config(pareto_weights, ds), ConfigError);

  MiningConfig bad_threshold = config;
  bad_threshold.min_support = 1.5;
  CHECK_THROWS_AS(validate_config(bad_threshold, ds), ConfigError);
}

TEST_CASE("mine is deterministic and threshold-closed") {
  auto [ds, truth] = generate_planted(3, 200, 0.5, 11);

  MiningConfig config = quick_config(MoMode::WeightedSum);
  config.min_support = 0.2;
  config.min_confidence = 0.4;

  RuleSet a = mine(ds, config);
  RuleSet b = mine(ds, config);
  REQUIRE(a.rules.size() == b.rules.size());
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    CHECK(canonical_key(a.rules[i].rule) == canonical_key(b.rules[i].rule));
    CHECK(a.rules[i].metrics.support == b.rules[i].metrics.support);
  }

  CHECK(!a.rules.empty());
  for (const MinedRule& mined : a.rules) {
    CHECK(mined.metrics.support >= config.min_support);
    CHECK(mined.metrics.confidence >= config.min_confidence);
  }

  // stored metrics re-validate against the dataset
  for (const MinedRule& mined : a.rules) {
    Metrics again = compute_metrics(mined.rule, ds, config.interestingness);
    CHECK(again.support == mined.metrics.support);
    CHECK(again.confidence == mined.metrics.confidence);
    CHECK(again.comprehensibility == mined.metrics.comprehensibility);
    CHECK(again.interestingness == mined.metrics.interestingness);
    CHECK(again.amplitude == mined.metrics.amplitude);
  }

  // no duplicate canonical keys and scores sorted descending
  std::set<std::string> keys;
  for (const MinedRule& mined : a.rules) CHECK(keys.insert(canonical_key(mined.rule)).second);
  for (std::size_t i = 1; i < a.rules.size(); ++i)
    CHECK(a.rules[i - 1].score >= a.rules[i].score);

  CHECK(a.provenance.dataset_fingerprint == ds.fingerprint());
}

TEST_CASE("a full support threshold keeps only constant-attribute rules") {
  // categorical data: an equality condition covers every row only when the
  // column is constant
  std::vector<Attribute> varied_attrs{
      {"u", AttributeKind::Categorical, 0, 0, {"p", "q"}},
      {"w", AttributeKind::Categorical, 0, 0, {"s", "t"}},
  };
  Dataset varied(varied_attrs, {{}, {}}, {{0, 1, 0, 1}, {0, 0, 1, 1}});

  std::vector<Attribute> mixed_attrs{
      {"u", AttributeKind::Categorical, 0, 0, {"p", "q"}},
      {"v", AttributeKind::Categorical, 0, 0, {"k"}},   // constant
      {"z", AttributeKind::Categorical, 0, 0, {"m"}},   // constant
  };
  Dataset with_constant(mixed_attrs, {{}, {}, {}},
                        {{0, 1, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}});

  MiningConfig config = quick_config(MoMode::WeightedSum);
  config.min_support = 1.0;

  CHECK(mine(varied, config).rules.empty());

  RuleSet ruleset = mine(with_constant, config);
  CHECK(!ruleset.rules.empty());
  for (const MinedRule& mined : ruleset.rules) {
    CHECK(mined.metrics.support == 1.0);
    for (const auto* side : {&mined.rule.antecedent, &mined.rule.consequent})
      for (const Condition& c : *side) CHECK(c.attribute_index >= 1);
  }
}

TEST_CASE("mine results do not depend on the thread count") {
  auto [ds, truth] = generate_planted(3, 200, 0.5, 13);
  MiningConfig config = quick_config(MoMode::Pareto);
  config.optimizer.threads = 1;
  RuleSet serial = mine(ds, config);
  config.optimizer.threads = 4;
  RuleSet parallel = mine(ds, config);
  REQUIRE(serial.rules.size() == parallel.rules.size());
  for (std::size_t i = 0; i < serial.rules.size(); ++i)
    CHECK(canonical_key(serial.rules[i].rule) ==
          canonical_key(parallel.rules[i].rule));
}

TEST_CASE("pareto output is mutually non-dominated and sorted") {
  auto [ds, truth] = generate_planted(3, 200, 0.5, 17);
  MiningConfig config = quick_config(MoMode::Pareto);
  RuleSet ruleset = mine(ds, config);
  REQUIRE(!ruleset.rules.empty());

  for (const MinedRule& a : ruleset.rules)
    for (const MinedRule& b : ruleset.rules) {
      ObjectiveVector va{{a.metrics.support, a.metrics.confidence}};
      ObjectiveVector vb{{b.metrics.support, b.metrics.confidence}};
      CHECK(!dominates(va, vb));
    }

  for (std::size_t i = 1; i < ruleset.rules.size(); ++i) {
    const Metrics& prev = ruleset.rules[i - 1].metrics;
    const Metrics& cur = ruleset.rules[i].metrics;
    CHECK((prev.support > cur.support ||
           (prev.support == cur.support && prev.confidence >= cur.confidence)));
  }
}

TEST_CASE("a larger budget never worsens the best weighted score") {
  auto [ds, truth] = generate_planted(3, 100, 0.5, 19);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    MiningConfig small = quick_config(MoMode::WeightedSum);
    small.optimizer.seed = seed;
    small.optimizer.max_evaluations = 600;
    MiningConfig large = small;
    large.optimizer.max_evaluations = 1800;
    RuleSet rs_small = mine(ds, small);
    RuleSet rs_large = mine(ds, large);
    REQUIRE(!rs_small.rules.empty());
    REQUIRE(!rs_large.rules.empty());
    // same seed: the larger run extends the smaller one's evaluation stream
    CHECK(rs_large.rules.front().score >= rs_small.rules.front().score);
  }
}

TEST_CASE("dedup collapses exact duplicates keeping higher support") {
  Rule rule;
  rule.antecedent.push_back(numeric_condition(0, 0.0, 0.5));
  rule.consequent.push_back(numeric_condition(1, 0.5, 1.0));
  Rule other;
  other.antecedent.push_back(numeric_condition(0, 0.0, 0.51));
  other.consequent.push_back(numeric_condition(1, 0.5, 1.0));

  Metrics lo{0.3, 0.5, 0.6, 0.1, 0.5};
  Metrics hi{0.4, 0.5, 0.6, 0.1, 0.5};

  std::vector<MinedRule> rules{{rule, lo, 0.0}, {rule, hi, 0.0}, {rule, lo, 0.0},
                               {other, lo, 0.0}};
  std::vector<MinedRule> out = dedup(rules);
  REQUIRE(out.size() == 2);
  CHECK(out[0].metrics.support == doctest::Approx(0.4));

  CHECK(dedup({}).empty());
}

TEST_CASE("ruleset serializes to json and csv") {
  auto [ds, truth] = generate_planted(3, 100, 0.5, 23);
  MiningConfig config = quick_config(MoMode::WeightedSum);
  config.optimizer.max_evaluations = 400;
  RuleSet ruleset = mine(ds, config);
  REQUIRE(!ruleset.rules.empty());

  std::string json_text = ruleset_json_string(ruleset, ds);
  CHECK(json_text.find("\"provenance\"") != std::string::npos);
  CHECK(json_text.find("\"rules\"") != std::string::npos);
  CHECK(json_text.find("\"dataset_fingerprint\"") != std::string::npos);

  std::vector<Rule> parsed = rules_from_json_string(json_text, ds);
  REQUIRE(parsed.size() == ruleset.rules.size());
  for (std::size_t i = 0; i < parsed.size(); ++i)
    CHECK(canonical_key(parsed[i]) == canonical_key(ruleset.rules[i].rule));

  std::string csv_text = ruleset_csv_string(ruleset, ds);
  CHECK(csv_text.rfind("rule,support,confidence,", 0) == 0);
  CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') ==
        std::ptrdiff_t(ruleset.rules.size()) + 1);
}

TEST_CASE("objective groups drive pareto mining") {
  auto [ds, truth] = generate_planted(3, 150, 0.5, 37);
  MiningConfig config;
  config.scheme = EncodingScheme::Gaussian;
  config.objectives = {parse_objective("0.5*support+0.5*confidence"),
                       parse_objective("amplitude")};
  config.mo_mode = MoMode::Pareto;
  config.optimizer.population_size = 15;
  config.optimizer.max_evaluations = 900;
  config.optimizer.seed = 3;

  RuleSet ruleset = mine(ds, config);
  REQUIRE(!ruleset.rules.empty());
  for (const MinedRule& a : ruleset.rules)
    for (const MinedRule& b : ruleset.rules) {
      ObjectiveVector va{{0.5 * a.metrics.support + 0.5 * a.metrics.confidence,
                          a.metrics.amplitude}};
      ObjectiveVector vb{{0.5 * b.metrics.support + 0.5 * b.metrics.confidence,
                          b.metrics.amplitude}};
      CHECK(!dominates(va, vb));
    }
}

TEST_CASE("archive exports to json and csv") {
  std::vector<ObjectiveSpec> objectives{parse_objective("support"),
                                        parse_objective("confidence")};
  Dataset ds = testsup::numeric_dataset({{0, 1}, {0, 1}});
  ParetoArchive archive(2);
  Rule rule;
  rule.antecedent.push_back(numeric_condition(0, 0.0, 0.5));
  rule.consequent.push_back(numeric_condition(1, 0.5, 1.0));
  archive.insert(rule, {{0.6, 0.9}});

  std::string json_text = archive_json_string(archive, objectives, ds);
  CHECK(json_text.find("\"objectives\"") != std::string::npos);
  CHECK(json_text.find("\"support\"") != std::string::npos);
  CHECK(json_text.find("\"entries\"") != std::string::npos);

  std::string csv_text = archive_csv_string(archive, objectives, ds);
  CHECK(csv_text.rfind("rule,support,confidence\n", 0) == 0);
  CHECK(csv_text.find("0.9") != std::string::npos);
}

TEST_CASE("rules json parsing reports schema problems") {
  auto [ds, truth] = generate_planted(2, 50, 0.5, 29);
  CHECK_THROWS_AS(rules_from_json_string("not json", ds), FormatError);
  CHECK_THROWS_AS(rules_from_json_string("{\"norules\":[]}", ds), FormatError);
  CHECK_THROWS_AS(rules_from_json_string(
                      R"([{"antecedent":[{"attribute":"zzz","interval":[0,1]}],
                           "consequent":[{"attribute":"a1","interval":[0,1]}]}])",
                      ds),
                  FormatError);
  CHECK_THROWS_AS(rules_from_json_string(
                      R"([{"antecedent":[{"attribute":"a0"}],
                           "consequent":[{"attribute":"a1","interval":[0,1]}]}])",
                      ds),
                  FormatError);
  CHECK(rules_from_json_string("[]", ds).empty());
}
