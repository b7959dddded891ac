#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "narmkit/dataset.hpp"
#include "narmkit/rule.hpp"

namespace narmkit {

enum class EncodingScheme { Triplet, AeAv, Gaussian, CutPoint };

// Membership thresholds of the attribute-control map: values up to 1/3 put
// the attribute in the antecedent, up to 2/3 in the consequent, above that
// the attribute is absent.
inline constexpr double kAntecedentMax = 1.0 / 3.0;
inline constexpr double kConsequentMax = 2.0 / 3.0;

struct Genotype {
  std::vector<double> values;
  EncodingScheme scheme = EncodingScheme::Triplet;
};

enum class DecodeReason { Ok, EmptyAntecedent, EmptyConsequent };

struct DecodeOutcome {
  std::optional<Rule> rule;
  DecodeReason reason = DecodeReason::Ok;

  bool ok() const { return reason == DecodeReason::Ok; }
};

/// Genotype length required by a scheme: 3n for the per-attribute schemes,
/// n+1 for the cut-point scheme.
std::size_t genotype_dimension(EncodingScheme scheme, std::size_t attribute_count);

// Per-attribute triples (control, v1, v2); interval from the two value
// components with swap ordering.
DecodeOutcome decode_triplet(std::span<const double> values, const Dataset& dataset);

// Per-attribute triples (existence, v1, v2); existence <= 0.5 includes the
// attribute, the included attribute with the largest existence value becomes
// the consequent.
DecodeOutcome decode_ae_av(std::span<const double> values, const Dataset& dataset);

// Per-attribute triples (control, center, spread); interval center +- half
// width, clamped to the attribute domain.
DecodeOutcome decode_gaussian(std::span<const double> values, const Dataset& dataset);

// Cut point plus per-position attribute indices; selected attributes receive
// full-domain conditions, the cut point splits them into antecedent and
// consequent.
DecodeOutcome decode_cutpoint(std::span<const double> values, const Dataset& dataset);

DecodeOutcome decode(const Genotype& genotype, const Dataset& dataset);

const char* scheme_name(EncodingScheme scheme);
std::optional<EncodingScheme> scheme_from_name(std::string_view name);

}  // namespace narmkit
