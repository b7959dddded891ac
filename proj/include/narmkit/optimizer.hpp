#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace narmkit {

/// All searches run over the unit box [0,1]^dimension; encodings expect
/// exactly that.
struct SearchSpace {
  std::size_t dimension = 1;

  double lower(std::size_t) const { return 0.0; }
  double upper(std::size_t) const { return 1.0; }
};

enum class Algorithm { Pso, Bat, AcoR };

const char* algorithm_name(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct PsoParams {
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  double vmax = 0.5;
};

struct BatParams {
  double freq_min = 0.0;
  double freq_max = 2.0;
  double loudness = 1.0;    // initial loudness A0
  double pulse_rate = 0.5;  // asymptotic pulse rate r0
  double alpha = 0.9;       // loudness decay per acceptance
  double gamma = 0.9;       // pulse rate ramp
};

struct AcoRParams {
  std::size_t archive_size = 0;  // 0: use population_size
  double locality = 0.1;         // q, rank-weighting spread
  double xi = 0.85;              // deviation scale
};

struct OptimizerConfig {
  std::size_t population_size = 30;
  std::size_t max_evaluations = 10000;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::Pso;
  unsigned threads = 1;  // used by the point-objective entry; 0 = hardware
  PsoParams pso;
  BatParams bat;
  AcoRParams aco;
};

struct RunTrace {
  std::vector<double> best_fitness_by_generation;  // non-decreasing
  std::vector<std::size_t> evaluations_by_generation;
  std::size_t evaluations_used = 0;
  std::chrono::duration<double> wall_time{0};
};

struct RunResult {
  std::vector<double> best_genotype;
  double best_fitness = 0.0;
  RunTrace trace;
};

/// Evaluates one batch of points, one fitness per point, in order. Batches
/// are formed deterministically; any parallelism lives inside the callback.
using BatchObjective =
    std::function<std::vector<double>(const std::vector<std::vector<double>>&)>;
using PointObjective = std::function<double(const std::vector<double>&)>;

/// Runs the configured algorithm until the evaluation budget is spent and
/// returns the best genotype ever evaluated. Deterministic given (seed,
/// config, objective): all random draws happen sequentially per generation,
/// never inside the evaluation callback.
RunResult run(const SearchSpace& space, const BatchObjective& objective,
              const OptimizerConfig& config);

/// Convenience entry: evaluates generations with config.threads workers.
RunResult run(const SearchSpace& space, const PointObjective& objective,
              const OptimizerConfig& config);

std::string trace_csv_string(const RunTrace& trace);

// ---- algorithm internals, exposed for testing ----

struct PsoState {
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> pbest_positions;
  std::vector<double> pbest_fitness;
  std::vector<double> gbest_position;
  double gbest_fitness = 0.0;
};

/// Velocity/position update with inertia, cognitive and social pulls.
/// Velocities clamp to +-vmax, positions to the unit box.
void pso_step(PsoState& state, const PsoParams& params, std::mt19937_64& rng);
void pso_select(PsoState& state, std::span<const double> fitness, std::size_t evaluated);

struct BatState {
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<double> fitness;
  std::vector<double> loudness;
  std::vector<double> pulse_rate;
  std::vector<std::vector<double>> candidates;   // proposals of the current step
  std::vector<double> accept_draw;               // pre-drawn acceptance uniforms
  std::vector<double> gbest_position;
  double gbest_fitness = 0.0;
  std::size_t generation = 0;
};

/// Proposes one candidate per bat: frequency-scaled velocity update plus a
/// loudness-scaled random walk around the best position, gated by the pulse
/// rate. Consumes all random draws for the step, including acceptance draws.
void bat_step(BatState& state, const BatParams& params, std::mt19937_64& rng);
void bat_select(BatState& state, const BatParams& params,
                std::span<const double> candidate_fitness, std::size_t evaluated);

double bat_pulse_rate_at(double r0, double gamma, std::size_t generation);

struct AcoRArchive {
  std::vector<std::vector<double>> solutions;  // sorted by fitness, best first
  std::vector<double> fitness;
};

/// Draws a guide by rank-weighted probability (locality q), then samples each
/// coordinate from a Gaussian centered at the guide with deviation
/// xi * mean absolute distance to the other archive members.
std::vector<double> aco_r_sample(const AcoRArchive& archive, const AcoRParams& params,
                                 std::mt19937_64& rng);

}  // namespace narmkit
