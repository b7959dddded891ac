#include <doctest.h>

#include <algorithm>
#include <random>

#include "narmkit/errors.hpp"
#include "narmkit/fitness.hpp"
#include "test_support.hpp"

using namespace narmkit;

namespace {

// distinct throwaway rules so archive entries never collide
Rule dummy_rule(int id) {
  Rule rule;
  rule.antecedent.push_back(numeric_condition(0, id * 1e-3, id * 1e-3));
  rule.consequent.push_back(numeric_condition(1, 0.0, 1.0));
  return rule;
}

}  // namespace

TEST_CASE("objective parsing") {
  ObjectiveSpec plain = parse_objective("support");
  CHECK(plain.terms.size() == 1);
  CHECK(plain.terms[0].measure == Measure::Support);
  CHECK(plain.terms[0].weight == 1.0);

  ObjectiveSpec group = parse_objective("0.7*support+0.3*confidence");
  REQUIRE(group.terms.size() == 2);
  CHECK(group.terms[0].weight == doctest::Approx(0.7));
  CHECK(group.terms[1].measure == Measure::Confidence);

  ObjectiveSpec sum = parse_objective("comprehensibility+amplitude");
  CHECK(sum.terms.size() == 2);
  CHECK(sum.terms[1].weight == 1.0);

  CHECK_THROWS_AS(parse_objective("lift"), ConfigError);
  CHECK_THROWS_AS(parse_objective("x*support"), ConfigError);
}

TEST_CASE("objective groups evaluate as inner weighted sums") {
  Metrics m{0.5, 0.8, 0.6, 0.2, 0.4};
  CHECK(objective_value(parse_objective("support"), m) == doctest::Approx(0.5));
  CHECK(objective_value(parse_objective("0.5*support+0.5*confidence"), m) ==
        doctest::Approx(0.65));
}

TEST_CASE("weighted_sum") {
  ObjectiveVector v{{0.4, 0.8}};
  std::vector<double> w{0.5, 0.5};
  CHECK(weighted_sum(v, w) == doctest::Approx(0.6));

  ObjectiveVector abc{{0.3, 0.7, 0.9}};
  std::vector<double> proj{1, 0, 0};
  CHECK(weighted_sum(abc, proj) == doctest::Approx(0.3));

  std::vector<double> zeros{0, 0, 0};
  CHECK(weighted_sum(abc, zeros) == 0.0);

  std::vector<double> short_w{1.0};
  CHECK_THROWS_AS(weighted_sum(abc, short_w), DimensionError);
}

TEST_CASE("weighted_sum is linear") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ObjectiveVector a{{unit(rng), unit(rng), unit(rng)}};
    ObjectiveVector b{{unit(rng), unit(rng), unit(rng)}};
    std::vector<double> w{unit(rng), unit(rng), unit(rng)};
    ObjectiveVector sum{{a.values[0] + b.values[0], a.values[1] + b.values[1],
                         a.values[2] + b.values[2]}};
    CHECK(weighted_sum(sum, w) ==
          doctest::Approx(weighted_sum(a, w) + weighted_sum(b, w)));
    std::vector<double> scaled{3.7 * w[0], 3.7 * w[1], 3.7 * w[2]};
    CHECK(weighted_sum(a, scaled) == doctest::Approx(3.7 * weighted_sum(a, w)));
  }
}

TEST_CASE("dominates definition") {
  CHECK(dominates({{0.9, 0.9}}, {{0.5, 0.9}}));
  CHECK(!dominates({{0.9, 0.1}}, {{0.1, 0.9}}));
  CHECK(!dominates({{0.1, 0.9}}, {{0.9, 0.1}}));
  CHECK(!dominates({{0.5, 0.5}}, {{0.5, 0.5}}));
  CHECK_THROWS_AS(dominates({{0.1}}, {{0.1, 0.2}}), DimensionError);
}

TEST_CASE("dominates is a strict partial order") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 3);  // encourage ties
  std::vector<ObjectiveVector> points;
  for (int i = 0; i < 60; ++i)
    points.push_back({{coarse(rng) / 3.0, coarse(rng) / 3.0, unit(rng)}});
  for (const auto& a : points) {
    CHECK(!dominates(a, a));
    for (const auto& b : points) {
      if (dominates(a, b)) CHECK(!dominates(b, a));
      for (const auto& c : points)
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    }
  }
}

TEST_CASE("archive insert outcomes") {
  ParetoArchive archive(2);

  CHECK(archive.insert(dummy_rule(1), {{0.5, 0.5}}) == InsertResult::Inserted);
  CHECK(archive.size() == 1);

  CHECK(archive.insert(dummy_rule(2), {{0.4, 0.4}}) == InsertResult::Dominated);
  CHECK(archive.size() == 1);

  CHECK(archive.insert(dummy_rule(1), {{0.5, 0.5}}) == InsertResult::Duplicate);
  CHECK(archive.size() == 1);

  // a dominating point replaces what it beats
  CHECK(archive.insert(dummy_rule(3), {{0.9, 0.9}}) == InsertResult::Inserted);
  CHECK(archive.size() == 1);
  CHECK(archive.entries()[0].objectives.values[0] == doctest::Approx(0.9));

  // incomparable points accumulate
  CHECK(archive.insert(dummy_rule(4), {{1.0, 0.1}}) == InsertResult::Inserted);
  CHECK(archive.size() == 2);

  CHECK_THROWS_AS(archive.insert(dummy_rule(5), ObjectiveVector{{0.1, 0.2, 0.3}}),
                  DimensionError);
}

TEST_CASE("archive keeps equal objective vectors with distinct rules") {
  ParetoArchive archive(2);
  CHECK(archive.insert(dummy_rule(1), {{0.5, 0.5}}) == InsertResult::Inserted);
  CHECK(archive.insert(dummy_rule(2), {{0.5, 0.5}}) == InsertResult::Inserted);
  CHECK(archive.size() == 2);
}

TEST_CASE("capacity eviction keeps boundary points") {
  ParetoArchive archive(2, 3);
  // incomparable staircase
  CHECK(archive.insert(dummy_rule(1), {{0.1, 0.9}}) == InsertResult::Inserted);
  CHECK(archive.insert(dummy_rule(2), {{0.5, 0.5}}) == InsertResult::Inserted);
  CHECK(archive.insert(dummy_rule(3), {{0.45, 0.55}}) == InsertResult::Inserted);
  CHECK(archive.insert(dummy_rule(4), {{0.9, 0.1}}) == InsertResult::Inserted);
  CHECK(archive.size() == 3);
  // the extreme points in each objective survived
  bool low = false, high = false;
  for (const auto& entry : archive.entries()) {
    if (entry.objectives.values[0] == doctest::Approx(0.1)) low = true;
    if (entry.objectives.values[0] == doctest::Approx(0.9)) high = true;
  }
  CHECK(low);
  CHECK(high);
}

TEST_CASE("archive matches a brute-force filter on random input") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int round = 0; round < 5; ++round) {
    std::vector<ObjectiveVector> points;
    for (int i = 0; i < 120; ++i) points.push_back({{unit(rng), unit(rng)}});

    ParetoArchive archive(2, ParetoArchive::kUnbounded);
    for (int i = 0; i < 120; ++i) archive.insert(dummy_rule(i), points[i]);

    std::size_t expected = 0;
    for (int i = 0; i < 120; ++i) {
      bool dominated = false;
      for (int j = 0; j < 120 && !dominated; ++j)
        dominated = dominates(points[j], points[i]);
      expected += !dominated;
    }
    CHECK(archive.size() == expected);
  }
}
