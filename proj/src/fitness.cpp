#include "narmkit/fitness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "narmkit/errors.hpp"

namespace narmkit {

const char* measure_name(Measure measure) {
  switch (measure) {
    case Measure::Support:
      return "support";
    case Measure::Confidence:
      return "confidence";
    case Measure::Comprehensibility:
      return "comprehensibility";
    case Measure::Interestingness:
      return "interestingness";
    case Measure::Amplitude:
      return "amplitude";
  }
  return "?";
}

std::optional<Measure> measure_from_name(std::string_view name) {
  if (name == "support") return Measure::Support;
  if (name == "confidence") return Measure::Confidence;
  if (name == "comprehensibility") return Measure::Comprehensibility;
  if (name == "interestingness") return Measure::Interestingness;
  if (name == "amplitude") return Measure::Amplitude;
  return std::nullopt;
}

double measure_value(const Metrics& metrics, Measure measure) {
  switch (measure) {
    case Measure::Support:
      return metrics.support;
    case Measure::Confidence:
      return metrics.confidence;
    case Measure::Comprehensibility:
      return metrics.comprehensibility;
    case Measure::Interestingness:
      return metrics.interestingness;
    case Measure::Amplitude:
      return metrics.amplitude;
  }
  return 0.0;
}

ObjectiveSpec parse_objective(std::string_view text) {
  ObjectiveSpec spec;
  spec.name = std::string(text);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string_view term =
        text.substr(pos, plus == std::string_view::npos ? plus : plus - pos);
    double weight = 1.0;
    std::string_view name = term;
    if (std::size_t star = term.find('*'); star != std::string_view::npos) {
      std::string_view wtext = term.substr(0, star);
      auto [p, ec] = std::from_chars(wtext.data(), wtext.data() + wtext.size(), weight);
      if (ec != std::errc() || p != wtext.data() + wtext.size() || weight < 0.0 ||
          !std::isfinite(weight))
        throw ConfigError("bad objective term weight in '" + std::string(text) + "'");
      name = term.substr(star + 1);
    }
    auto measure = measure_from_name(name);
    if (!measure)
      throw ConfigError("unknown measure '" + std::string(name) + "' in objective '" +
                        std::string(text) + "'");
    spec.terms.push_back({*measure, weight});
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  if (spec.terms.empty()) throw ConfigError("empty objective");
  return spec;
}

double objective_value(const ObjectiveSpec& objective, const Metrics& metrics) {
  double total = 0.0;
  for (const ObjectiveTerm& term : objective.terms)
    total += term.weight * measure_value(metrics, term.measure);
  return total;
}

double weighted_sum(const ObjectiveVector& objectives, std::span<const double> weights) {
  if (weights.size() != objectives.values.size())
    throw DimensionError("weight count " + std::to_string(weights.size()) +
                         " does not match objective count " +
                         std::to_string(objectives.values.size()));
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k)
    total += weights[k] * objectives.values[k];
  return total;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.values.size() != b.values.size())
    throw DimensionError("objective vectors differ in length");
  bool strictly_better = false;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    if (a.values[k] < b.values[k]) return false;
    if (a.values[k] > b.values[k]) strictly_better = true;
  }
  return strictly_better;
}

ParetoArchive::ParetoArchive(std::size_t objective_count, std::size_t capacity)
    : objective_count_(objective_count), capacity_(capacity) {
  if (objective_count_ == 0) throw ConfigError("archive needs at least one objective");
  if (capacity_ == 0) throw ConfigError("archive capacity must be positive");
}

std::vector<double> ParetoArchive::crowding_distances() const {
  const std::size_t n = entries_.size();
  std::vector<double> distance(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < objective_count_; ++k) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double va = entries_[a].objectives.values[k];
      double vb = entries_[b].objectives.values[k];
      return va != vb ? va < vb : a < b;
    });
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    double span = entries_[order.back()].objectives.values[k] -
                  entries_[order.front()].objectives.values[k];
    if (span <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double below = entries_[order[i - 1]].objectives.values[k];
      double above = entries_[order[i + 1]].objectives.values[k];
      distance[order[i]] += (above - below) / span;
    }
  }
  return distance;
}

InsertResult ParetoArchive::insert(const Rule& rule, ObjectiveVector objectives) {
  if (objectives.values.size() != objective_count_)
    throw DimensionError("objective vector length " +
                         std::to_string(objectives.values.size()) + ", archive expects " +
                         std::to_string(objective_count_));

  for (const Entry& entry : entries_)
    if (dominates(entry.objectives, objectives)) return InsertResult::Dominated;

  std::string key = canonical_key(rule);
  if (keys_.contains(key)) return InsertResult::Duplicate;

  // Remove entries the newcomer dominates.
  std::size_t kept = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (dominates(objectives, entries_[i].objectives)) {
      keys_.erase(entries_[i].key);
      continue;
    }
    if (kept != i) entries_[kept] = std::move(entries_[i]);
    ++kept;
  }
  entries_.resize(kept);

  keys_.insert(key);
  entries_.push_back(Entry{rule, std::move(objectives), std::move(key)});

  if (entries_.size() > capacity_) {
    std::vector<double> distance = crowding_distances();
    std::size_t victim = entries_.size();
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (std::isfinite(distance[i]) &&
          (victim == entries_.size() || distance[i] < distance[victim]))
        victim = i;
    // Every entry can be a boundary point; then the newest yields.
    if (victim == entries_.size()) victim = entries_.size() - 1;
    keys_.erase(entries_[victim].key);
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return InsertResult::Inserted;
}

}  // namespace narmkit
