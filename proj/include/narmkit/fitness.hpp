#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "narmkit/rule.hpp"

namespace narmkit {

enum class Measure { Support, Confidence, Comprehensibility, Interestingness, Amplitude };

const char* measure_name(Measure measure);
std::optional<Measure> measure_from_name(std::string_view name);
double measure_value(const Metrics& metrics, Measure measure);

/// One optimization objective: a weighted combination of quality measures.
/// A plain measure is a single term with weight 1.
struct ObjectiveTerm {
  Measure measure = Measure::Support;
  double weight = 1.0;
};

struct ObjectiveSpec {
  std::string name;
  std::vector<ObjectiveTerm> terms;
};

// "support", "support+confidence", "0.7*support+0.3*confidence"
ObjectiveSpec parse_objective(std::string_view text);

double objective_value(const ObjectiveSpec& objective, const Metrics& metrics);

/// Values of the selected objectives for one rule; all maximized.
struct ObjectiveVector {
  std::vector<double> values;
};

double weighted_sum(const ObjectiveVector& objectives, std::span<const double> weights);

/// True iff a is componentwise >= b and strictly greater somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

enum class InsertResult { Inserted, Dominated, Duplicate };

/// Bounded set of mutually non-dominated (rule, objectives) entries. When
/// full, the entry with the smallest crowding distance is evicted; boundary
/// entries of each objective are never evicted.
class ParetoArchive {
public:
  struct Entry {
    Rule rule;
    ObjectiveVector objectives;
    std::string key;  // canonical rule serialization
  };

  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  explicit ParetoArchive(std::size_t objective_count, std::size_t capacity = 100);

  InsertResult insert(const Rule& rule, ObjectiveVector objectives);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t objective_count() const { return objective_count_; }
  std::size_t capacity() const { return capacity_; }

private:
  std::vector<double> crowding_distances() const;

  std::size_t objective_count_;
  std::size_t capacity_;
  std::vector<Entry> entries_;
  std::unordered_set<std::string> keys_;
};

}  // namespace narmkit
