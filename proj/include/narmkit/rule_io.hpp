#pragma once

#include <string>
#include <vector>

#include "narmkit/dataset.hpp"
#include "narmkit/fitness.hpp"
#include "narmkit/miner.hpp"
#include "narmkit/rule.hpp"

namespace narmkit {

// JSON and CSV serialization of mined rules, archives and traces. Attribute
// references use names in JSON so rule files stay meaningful across runs.

std::string ruleset_json_string(const RuleSet& ruleset, const Dataset& dataset);
std::string ruleset_csv_string(const RuleSet& ruleset, const Dataset& dataset);

std::string archive_json_string(const ParetoArchive& archive,
                                const std::vector<ObjectiveSpec>& objectives,
                                const Dataset& dataset);
std::string archive_csv_string(const ParetoArchive& archive,
                               const std::vector<ObjectiveSpec>& objectives,
                               const Dataset& dataset);

/// Parses a rules file: either {"rules":[...]} or a bare array of rule
/// records with antecedent/consequent condition lists. Throws FormatError
/// with the offending rule index and field on schema mismatch.
std::vector<Rule> rules_from_json_file(const std::string& path, const Dataset& dataset);
std::vector<Rule> rules_from_json_string(const std::string& text, const Dataset& dataset);

void write_text_file(const std::string& path, const std::string& content);
std::string objective_list_string(const std::vector<ObjectiveSpec>& objectives);

}  // namespace narmkit
