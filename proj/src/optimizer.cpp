#include "narmkit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "narmkit/errors.hpp"
#include "parallel.hpp"

namespace narmkit {

namespace {

using Point = std::vector<double>;

void clamp_unit(Point& x) {
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
}

void validate(const SearchSpace& space, const OptimizerConfig& config) {
  if (space.dimension == 0) throw ConfigError("search space dimension must be >= 1");
  if (config.population_size < 2) throw ConfigError("population size must be >= 2");
  if (config.max_evaluations < config.population_size)
    throw ConfigError("evaluation budget smaller than one population");
}

std::vector<double> evaluate_batch(const BatchObjective& objective,
                                   const std::vector<Point>& batch) {
  std::vector<double> fitness = objective(batch);
  if (fitness.size() != batch.size())
    throw EvaluationError("objective returned " + std::to_string(fitness.size()) +
                          " values for a batch of " + std::to_string(batch.size()));
  for (double f : fitness)
    if (!std::isfinite(f)) throw EvaluationError("objective returned a non-finite value");
  return fitness;
}

struct BestTracker {
  Point genotype;
  double fitness = -std::numeric_limits<double>::infinity();

  void offer(const Point& x, double f) {
    if (f > fitness) {
      fitness = f;
      genotype = x;
    }
  }
  void offer_all(const std::vector<Point>& xs, std::span<const double> fs,
                 std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) offer(xs[i], fs[i]);
  }
};

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Pso:
      return "pso";
    case Algorithm::Bat:
      return "bat";
    case Algorithm::AcoR:
      return "acor";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "pso") return Algorithm::Pso;
  if (name == "bat") return Algorithm::Bat;
  if (name == "acor") return Algorithm::AcoR;
  return std::nullopt;
}

void pso_step(PsoState& state, const PsoParams& params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t dim = state.gbest_position.size();
  for (std::size_t i = 0; i < state.positions.size(); ++i) {
    Point& x = state.positions[i];
    Point& v = state.velocities[i];
    const Point& pbest = state.pbest_positions[i];
    for (std::size_t d = 0; d < dim; ++d) {
      double r1 = unit(rng);
      double r2 = unit(rng);
      v[d] = params.inertia * v[d] + params.cognitive * r1 * (pbest[d] - x[d]) +
             params.social * r2 * (state.gbest_position[d] - x[d]);
      v[d] = std::clamp(v[d], -params.vmax, params.vmax);
      x[d] += v[d];
    }
    clamp_unit(x);
  }
}

void pso_select(PsoState& state, std::span<const double> fitness, std::size_t evaluated) {
  for (std::size_t i = 0; i < evaluated; ++i) {
    if (fitness[i] > state.pbest_fitness[i]) {
      state.pbest_fitness[i] = fitness[i];
      state.pbest_positions[i] = state.positions[i];
    }
    if (fitness[i] > state.gbest_fitness) {
      state.gbest_fitness = fitness[i];
      state.gbest_position = state.positions[i];
    }
  }
}

double bat_pulse_rate_at(double r0, double gamma, std::size_t generation) {
  return r0 * (1.0 - std::exp(-gamma * static_cast<double>(generation)));
}

void bat_step(BatState& state, const BatParams& params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const std::size_t pop = state.positions.size();
  const std::size_t dim = state.gbest_position.size();
  state.generation += 1;
  state.candidates.resize(pop);
  state.accept_draw.resize(pop);

  double mean_loudness =
      std::accumulate(state.loudness.begin(), state.loudness.end(), 0.0) /
      static_cast<double>(pop);

  for (std::size_t i = 0; i < pop; ++i) {
    double beta = unit(rng);
    double freq = params.freq_min + (params.freq_max - params.freq_min) * beta;
    Point cand = state.positions[i];
    Point& v = state.velocities[i];
    for (std::size_t d = 0; d < dim; ++d) {
      v[d] += (state.positions[i][d] - state.gbest_position[d]) * freq;
      cand[d] += v[d];
    }
    if (unit(rng) > state.pulse_rate[i]) {
      // local walk around the best position, scaled by the mean loudness
      for (std::size_t d = 0; d < dim; ++d)
        cand[d] = state.gbest_position[d] + sym(rng) * mean_loudness;
    }
    clamp_unit(cand);
    state.candidates[i] = std::move(cand);
    state.accept_draw[i] = unit(rng);
  }
}

void bat_select(BatState& state, const BatParams& params,
                std::span<const double> candidate_fitness, std::size_t evaluated) {
  for (std::size_t i = 0; i < evaluated; ++i) {
    if (candidate_fitness[i] > state.fitness[i]) {
      state.positions[i] = state.candidates[i];
      state.fitness[i] = candidate_fitness[i];
    }
    if (state.fitness[i] > state.gbest_fitness) {
      state.gbest_fitness = state.fitness[i];
      state.gbest_position = state.positions[i];
    }
  }
  // loudness decays and the pulse rate ramps every generation
  for (std::size_t i = 0; i < state.positions.size(); ++i) {
    state.loudness[i] *= params.alpha;
    state.pulse_rate[i] =
        bat_pulse_rate_at(params.pulse_rate, params.gamma, state.generation);
  }
}

std::vector<double> aco_r_sample(const AcoRArchive& archive, const AcoRParams& params,
                                 std::mt19937_64& rng) {
  const std::size_t k = archive.solutions.size();
  if (k < 2) throw ConfigError("solution archive needs at least 2 entries");
  const std::size_t dim = archive.solutions.front().size();

  // rank-weighted guide selection; small locality concentrates on the best
  std::vector<double> weight(k);
  const double qk = std::max(params.locality, 1e-12) * static_cast<double>(k);
  double total = 0.0;
  for (std::size_t rank = 0; rank < k; ++rank) {
    double z = static_cast<double>(rank) / qk;
    weight[rank] = std::exp(-0.5 * z * z);
    total += weight[rank];
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double pick = unit(rng) * total;
  std::size_t guide = k - 1;
  double acc = 0.0;
  for (std::size_t rank = 0; rank < k; ++rank) {
    acc += weight[rank];
    if (pick <= acc) {
      guide = rank;
      break;
    }
  }

  Point out(dim);
  const Point& center = archive.solutions[guide];
  for (std::size_t d = 0; d < dim; ++d) {
    double spread = 0.0;
    for (std::size_t r = 0; r < k; ++r)
      spread += std::abs(archive.solutions[r][d] - center[d]);
    spread = params.xi * spread / static_cast<double>(k - 1);
    if (spread > 0.0) {
      std::normal_distribution<double> gauss(center[d], spread);
      out[d] = std::clamp(gauss(rng), 0.0, 1.0);
    } else {
      out[d] = center[d];
    }
  }
  return out;
}

namespace {

// Shared driver. Each strategy proposes a full population of candidates per
// generation; the loop trims the batch to the remaining budget, evaluates it
// and feeds the fitness back. All random draws happen in propose(), in
// population order, so evaluation scheduling cannot shift the stream.
template <typename Strategy>
RunResult drive(const SearchSpace& space, const BatchObjective& objective,
                const OptimizerConfig& config, Strategy strategy) {
  const auto started = std::chrono::steady_clock::now();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t init_count = strategy.init_count(config);
  std::vector<Point> initial(init_count, Point(space.dimension));
  for (Point& x : initial)
    for (double& v : x) v = unit(rng);

  std::vector<double> fitness = evaluate_batch(objective, initial);

  RunResult result;
  BestTracker best;
  best.offer_all(initial, fitness, initial.size());
  result.trace.evaluations_used = initial.size();
  result.trace.best_fitness_by_generation.push_back(best.fitness);
  result.trace.evaluations_by_generation.push_back(result.trace.evaluations_used);

  strategy.init(std::move(initial), fitness);

  while (result.trace.evaluations_used < config.max_evaluations) {
    const std::vector<Point>& proposals = strategy.propose(rng);
    std::size_t count = std::min<std::size_t>(
        proposals.size(), config.max_evaluations - result.trace.evaluations_used);
    std::vector<Point> batch(proposals.begin(),
                             proposals.begin() + static_cast<std::ptrdiff_t>(count));
    fitness = evaluate_batch(objective, batch);
    best.offer_all(batch, fitness, count);
    strategy.select(fitness, count);
    result.trace.evaluations_used += count;
    result.trace.best_fitness_by_generation.push_back(best.fitness);
    result.trace.evaluations_by_generation.push_back(result.trace.evaluations_used);
  }

  result.best_genotype = std::move(best.genotype);
  result.best_fitness = best.fitness;
  result.trace.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

struct PsoStrategy {
  PsoParams params;
  PsoState state;

  std::size_t init_count(const OptimizerConfig& config) const {
    return config.population_size;
  }

  void init(std::vector<Point> positions, const std::vector<double>& fitness) {
    const std::size_t dim = positions.front().size();
    state.positions = std::move(positions);
    state.velocities.assign(state.positions.size(), Point(dim, 0.0));
    state.pbest_positions = state.positions;
    state.pbest_fitness.assign(fitness.begin(), fitness.end());
    std::size_t best = 0;
    for (std::size_t i = 1; i < fitness.size(); ++i)
      if (fitness[i] > fitness[best]) best = i;
    state.gbest_position = state.positions[best];
    state.gbest_fitness = fitness[best];
  }

  const std::vector<Point>& propose(std::mt19937_64& rng) {
    pso_step(state, params, rng);
    return state.positions;
  }

  void select(const std::vector<double>& fitness, std::size_t count) {
    pso_select(state, fitness, count);
  }
};

struct BatStrategy {
  BatParams params;
  BatState state;

  std::size_t init_count(const OptimizerConfig& config) const {
    return config.population_size;
  }

  void init(std::vector<Point> positions, const std::vector<double>& fitness) {
    const std::size_t dim = positions.front().size();
    const std::size_t pop = positions.size();
    state.positions = std::move(positions);
    state.velocities.assign(pop, Point(dim, 0.0));
    state.fitness.assign(fitness.begin(), fitness.end());
    state.loudness.assign(pop, params.loudness);
    state.pulse_rate.assign(pop, bat_pulse_rate_at(params.pulse_rate, params.gamma, 0));
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop; ++i)
      if (fitness[i] > fitness[best]) best = i;
    state.gbest_position = state.positions[best];
    state.gbest_fitness = fitness[best];
  }

  const std::vector<Point>& propose(std::mt19937_64& rng) {
    bat_step(state, params, rng);
    return state.candidates;
  }

  void select(const std::vector<double>& fitness, std::size_t count) {
    bat_select(state, params, fitness, count);
  }
};

struct AcoRStrategy {
  AcoRParams params;
  std::size_t sample_count = 0;
  std::size_t archive_capacity = 0;
  AcoRArchive archive;
  std::vector<Point> proposals;

  std::size_t init_count(const OptimizerConfig& config) const {
    return config.population_size;
  }

  void init(std::vector<Point> positions, const std::vector<double>& fitness) {
    archive.solutions = std::move(positions);
    archive.fitness.assign(fitness.begin(), fitness.end());
    sort_archive();
    trim_archive();
  }

  const std::vector<Point>& propose(std::mt19937_64& rng) {
    proposals.clear();
    for (std::size_t i = 0; i < sample_count; ++i)
      proposals.push_back(aco_r_sample(archive, params, rng));
    return proposals;
  }

  void select(const std::vector<double>& fitness, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      archive.solutions.push_back(proposals[i]);
      archive.fitness.push_back(fitness[i]);
    }
    sort_archive();
    trim_archive();
  }

private:
  void sort_archive() {
    std::vector<std::size_t> order(archive.solutions.size());
    std::iota(order.begin(), order.end(), 0);
    // stable on ties so older entries keep their rank
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return archive.fitness[a] > archive.fitness[b];
    });
    std::vector<Point> solutions(order.size());
    std::vector<double> fitness(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      solutions[i] = std::move(archive.solutions[order[i]]);
      fitness[i] = archive.fitness[order[i]];
    }
    archive.solutions = std::move(solutions);
    archive.fitness = std::move(fitness);
  }

  void trim_archive() {
    if (archive.solutions.size() > archive_capacity) {
      archive.solutions.resize(archive_capacity);
      archive.fitness.resize(archive_capacity);
    }
  }
};

}  // namespace

RunResult run(const SearchSpace& space, const BatchObjective& objective,
              const OptimizerConfig& config) {
  validate(space, config);
  switch (config.algorithm) {
    case Algorithm::Pso: {
      PsoStrategy strategy;
      strategy.params = config.pso;
      return drive(space, objective, config, std::move(strategy));
    }
    case Algorithm::Bat: {
      BatStrategy strategy;
      strategy.params = config.bat;
      return drive(space, objective, config, std::move(strategy));
    }
    case Algorithm::AcoR: {
      AcoRStrategy strategy;
      strategy.params = config.aco;
      strategy.sample_count = config.population_size;
      strategy.archive_capacity =
          config.aco.archive_size == 0 ? config.population_size : config.aco.archive_size;
      if (strategy.archive_capacity < 2)
        throw ConfigError("solution archive needs at least 2 entries");
      return drive(space, objective, config, std::move(strategy));
    }
  }
  throw ConfigError("unknown algorithm");
}

RunResult run(const SearchSpace& space, const PointObjective& objective,
              const OptimizerConfig& config) {
  const unsigned threads = config.threads;
  BatchObjective batch = [&objective, threads](const std::vector<Point>& points) {
    std::vector<double> out(points.size());
    detail::parallel_for(points.size(), threads,
                         [&](std::size_t i) { out[i] = objective(points[i]); });
    return out;
  };
  return run(space, batch, config);
}

std::string trace_csv_string(const RunTrace& trace) {
  std::string out = "generation,best_fitness,evaluations\n";
  char buf[64];
  for (std::size_t g = 0; g < trace.best_fitness_by_generation.size(); ++g) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%zu\n", g,
                  trace.best_fitness_by_generation[g],
                  trace.evaluations_by_generation[g]);
    out += buf;
  }
  return out;
}

}  // namespace narmkit
