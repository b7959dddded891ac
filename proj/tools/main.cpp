#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "narmkit/dataset.hpp"
#include "narmkit/errors.hpp"
#include "narmkit/miner.hpp"
#include "narmkit/rule_io.hpp"

namespace {

using namespace narmkit;

struct MineArgs {
  std::string input;
  std::string schema;
  bool no_header = false;
  std::string algorithm;
  std::string encoding;
  std::vector<std::string> objectives;
  std::string mo;
  std::vector<double> weights;
  std::uint64_t seed = 1;
  std::size_t pop = 30;
  std::size_t evals = 10000;
  double min_supp = 0.0;
  double min_conf = 0.0;
  std::string output;
  std::string format = "json";
  std::string interestingness = "normalized";
  std::size_t capacity = 100;
  unsigned threads = 0;
  std::string trace_path;
  std::vector<std::string> params;
};

struct EvaluateArgs {
  std::string input;
  std::string schema;
  bool no_header = false;
  std::string rules;
  std::string interestingness = "normalized";
};

struct GenerateArgs {
  std::size_t attrs = 4;
  std::size_t rows = 500;
  double freq = 0.5;
  std::uint64_t seed = 1;
  std::string output;
};

void apply_param(OptimizerConfig& config, const std::string& text) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--param expects key=value, got '" + text + "'");
  std::string key = text.substr(0, eq);
  double value = 0.0;
  try {
    value = std::stod(text.substr(eq + 1));
  } catch (...) {
    throw ConfigError("--param " + key + ": not a number");
  }
  if (key == "inertia")
    config.pso.inertia = value;
  else if (key == "cognitive")
    config.pso.cognitive = value;
  else if (key == "social")
    config.pso.social = value;
  else if (key == "vmax")
    config.pso.vmax = value;
  else if (key == "freq-min")
    config.bat.freq_min = value;
  else if (key == "freq-max")
    config.bat.freq_max = value;
  else if (key == "loudness")
    config.bat.loudness = value;
  else if (key == "pulse-rate")
    config.bat.pulse_rate = value;
  else if (key == "alpha")
    config.bat.alpha = value;
  else if (key == "gamma")
    config.bat.gamma = value;
  else if (key == "archive-size")
    config.aco.archive_size = static_cast<std::size_t>(value);
  else if (key == "locality")
    config.aco.locality = value;
  else if (key == "xi")
    config.aco.xi = value;
  else
    throw ConfigError("unknown --param key '" + key + "'");
}

Dataset load_input(const std::string& input, const std::string& schema_path,
                   bool no_header) {
  std::optional<SchemaOverride> schema;
  if (!schema_path.empty()) schema = load_schema(schema_path);
  return load_csv(input, !no_header, schema);
}

// Expands `--config <file>` into flags: one key=value per line, each mapping
// onto --key value. Flags given on the command line win over the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open config file " + config_path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string flag = "--" + line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    bool given = false;
    for (const std::string& arg : args)
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    if (given) continue;
    if (flag == "--no-header") {
      if (value == "true" || value == "1") args.push_back(flag);
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

int cmd_mine(const MineArgs& args) {
  Dataset dataset = load_input(args.input, args.schema, args.no_header);

  MiningConfig config;
  config.scheme = *scheme_from_name(args.encoding);
  for (const std::string& text : args.objectives)
    config.objectives.push_back(parse_objective(text));
  config.mo_mode = args.mo == "weighted" ? MoMode::WeightedSum : MoMode::Pareto;
  config.weights = args.weights;
  config.min_support = args.min_supp;
  config.min_confidence = args.min_conf;
  config.interestingness = args.interestingness == "literal"
                               ? InterestingnessVariant::Literal
                               : InterestingnessVariant::Normalized;
  config.archive_capacity = args.capacity;
  config.optimizer.algorithm = *algorithm_from_name(args.algorithm);
  config.optimizer.population_size = args.pop;
  config.optimizer.max_evaluations = args.evals;
  config.optimizer.seed = args.seed;
  config.optimizer.threads = args.threads;
  for (const std::string& p : args.params) apply_param(config.optimizer, p);

  RuleSet ruleset = mine(dataset, config);

  write_text_file(args.output, args.format == "csv"
                                   ? ruleset_csv_string(ruleset, dataset)
                                   : ruleset_json_string(ruleset, dataset));
  if (!args.trace_path.empty())
    write_text_file(args.trace_path, trace_csv_string(ruleset.trace));

  std::printf("mined %zu rules with %s/%s in %s mode (%zu evaluations, %.2f s)\n",
              ruleset.rules.size(), args.algorithm.c_str(), args.encoding.c_str(),
              mo_mode_name(config.mo_mode), ruleset.trace.evaluations_used,
              ruleset.trace.wall_time.count());
  if (!ruleset.rules.empty())
    std::printf("best: %s\n",
                to_line(ruleset.rules.front().rule, dataset,
                        ruleset.rules.front().metrics)
                    .c_str());
  char fp[32];
  std::snprintf(fp, sizeof(fp), "%016llx",
                static_cast<unsigned long long>(ruleset.provenance.dataset_fingerprint));
  std::printf(
      "provenance: input=%s algorithm=%s encoding=%s objectives=%s mo=%s seed=%llu "
      "pop=%zu evals=%zu min-supp=%g min-conf=%g interestingness=%s threads=%u "
      "fingerprint=%s\n",
      args.input.c_str(), args.algorithm.c_str(), args.encoding.c_str(),
      objective_list_string(config.objectives).c_str(), args.mo.c_str(),
      static_cast<unsigned long long>(args.seed), args.pop, args.evals, args.min_supp,
      args.min_conf, args.interestingness.c_str(), args.threads, fp);
  return 0;
}

int cmd_evaluate(const EvaluateArgs& args) {
  Dataset dataset = load_input(args.input, args.schema, args.no_header);
  std::vector<Rule> rules = rules_from_json_file(args.rules, dataset);
  InterestingnessVariant variant = args.interestingness == "literal"
                                       ? InterestingnessVariant::Literal
                                       : InterestingnessVariant::Normalized;
  std::printf("%-10s %-10s %-10s %-10s %-10s rule\n", "support", "confidence", "compreh",
              "interest", "amplitude");
  for (const Rule& rule : rules) {
    Metrics metrics = compute_metrics(rule, dataset, variant);
    std::printf("%-10.6f %-10.6f %-10.6f %-10.6f %-10.6f %s\n", metrics.support,
                metrics.confidence, metrics.comprehensibility, metrics.interestingness,
                metrics.amplitude, to_line(rule, dataset).c_str());
  }
  return 0;
}

int cmd_generate(const GenerateArgs& args) {
  auto [dataset, truth] = generate_planted(args.attrs, args.rows, args.freq, args.seed);
  write_csv(dataset, args.output);

  CoverageCounts counts = coverage(dataset, truth);
  Metrics metrics = metrics_from_counts(truth, dataset, counts,
                                        InterestingnessVariant::Normalized);
  // sidecar with the planted ground truth next to the dataset
  RuleSet truth_set;
  truth_set.rules.push_back(MinedRule{truth, metrics, 0.0});
  truth_set.provenance.config.mo_mode = MoMode::Pareto;
  truth_set.provenance.config.optimizer.seed = args.seed;
  truth_set.provenance.dataset_fingerprint = dataset.fingerprint();

  std::string sidecar = args.output + ".json";
  std::string payload = ruleset_json_string(truth_set, dataset);
  write_text_file(sidecar, payload);

  std::printf("wrote %zu rows x %zu attributes to %s (planted rule in %s)\n",
              dataset.transaction_count(), dataset.attribute_count(),
              args.output.c_str(), sidecar.c_str());
  std::printf("planted: %s\n", to_line(truth, dataset, metrics).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discretization-free association rule mining over numeric and "
               "categorical data with swarm optimizers"};
  app.require_subcommand(1);

  std::string config_doc;
  MineArgs mine_args;
  CLI::App* mine_cmd = app.add_subcommand("mine", "Search a dataset for rules");
  mine_cmd->add_option("--config", config_doc, "Flat key=value file mapped onto flags");
  mine_cmd->add_option("--input", mine_args.input, "Input CSV file")->required();
  mine_cmd->add_option("--schema", mine_args.schema,
                       "Schema override file (name,kind per column)");
  mine_cmd->add_flag("--no-header", mine_args.no_header, "Input has no header row");
  mine_cmd->add_option("--algorithm", mine_args.algorithm, "Search algorithm")
      ->required()
      ->check(CLI::IsMember({"pso", "bat", "acor"}));
  mine_cmd->add_option("--encoding", mine_args.encoding, "Genotype encoding")
      ->required()
      ->check(CLI::IsMember({"triplet", "aeav", "gaussian", "cutpoint"}));
  mine_cmd
      ->add_option("--objectives", mine_args.objectives,
                   "Comma list of measures or +-joined groups")
      ->required()
      ->delimiter(',');
  mine_cmd->add_option("--mo", mine_args.mo, "Multi-objective handling")
      ->required()
      ->check(CLI::IsMember({"weighted", "pareto"}));
  mine_cmd
      ->add_option("--weights", mine_args.weights,
                   "Comma list of objective weights (weighted mode)")
      ->delimiter(',');
  mine_cmd->add_option("--seed", mine_args.seed, "Random seed");
  mine_cmd->add_option("--pop", mine_args.pop, "Population size");
  mine_cmd->add_option("--evals", mine_args.evals, "Evaluation budget");
  mine_cmd->add_option("--min-supp", mine_args.min_supp, "Minimum support")
      ->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_option("--min-conf", mine_args.min_conf, "Minimum confidence")
      ->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_option("--output", mine_args.output, "Output rules file")->required();
  mine_cmd->add_option("--format", mine_args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  mine_cmd
      ->add_option("--interestingness", mine_args.interestingness,
                   "Interestingness variant")
      ->check(CLI::IsMember({"normalized", "literal"}));
  mine_cmd->add_option("--capacity", mine_args.capacity,
                       "Pareto archive capacity (pareto mode)");
  mine_cmd->add_option("--threads", mine_args.threads,
                       "Evaluation threads (0 = available parallelism)");
  mine_cmd->add_option("--trace", mine_args.trace_path,
                       "Write per-generation best fitness CSV here");
  mine_cmd->add_option("--param", mine_args.params,
                       "Algorithm parameter override key=value (repeatable)");

  EvaluateArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Compute measures for a rules file");
  eval_cmd->add_option("--config", config_doc, "Flat key=value file mapped onto flags");
  eval_cmd->add_option("--input", eval_args.input, "Input CSV file")->required();
  eval_cmd->add_option("--schema", eval_args.schema, "Schema override file");
  eval_cmd->add_flag("--no-header", eval_args.no_header, "Input has no header row");
  eval_cmd->add_option("--rules", eval_args.rules, "Rules JSON file")->required();
  eval_cmd
      ->add_option("--interestingness", eval_args.interestingness,
                   "Interestingness variant")
      ->check(CLI::IsMember({"normalized", "literal"}));

  GenerateArgs gen_args;
  CLI::App* gen_cmd =
      app.add_subcommand("generate", "Write a synthetic planted-rule dataset");
  gen_cmd->add_option("--config", config_doc, "Flat key=value file mapped onto flags");
  gen_cmd->add_option("--attrs", gen_args.attrs, "Attribute count")->required();
  gen_cmd->add_option("--rows", gen_args.rows, "Row count")->required();
  gen_cmd->add_option("--freq", gen_args.freq, "Planted rule frequency")->required();
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed")->required();
  gen_cmd->add_option("--output", gen_args.output, "Output CSV path")->required();

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
  try {
    std::vector<const char*> argv2{argv[0]};
    for (const std::string& arg : args) argv2.push_back(arg.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (mine_cmd->parsed()) {
      if (mine_args.mo == "weighted" && mine_args.weights.empty())
        throw ConfigError("--mo weighted requires --weights");
      if (mine_args.mo == "pareto" && !mine_args.weights.empty())
        throw ConfigError("--weights only applies to --mo weighted");
      return cmd_mine(mine_args);
    }
    if (eval_cmd->parsed()) return cmd_evaluate(eval_args);
    return cmd_generate(gen_args);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const IndexError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
}
