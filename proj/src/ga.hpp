#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "problems.hpp"

namespace gaexplain {

/// Any fitness estimator over bitstrings: the true function or a surrogate.
using Predictor = std::function<double(const Bitstring&)>;

/// Builds a predictor from everything truly evaluated so far.
using SurrogateTrainer = std::function<Predictor(const EvaluationArchive&)>;

/// Which generations pay for true evaluations.
///
/// With a period p, generations whose index is divisible by p are evaluated by
/// the true function and trigger retraining; the others are scored by the most
/// recent surrogate. Generation 0 is always true.
struct EvalSchedule {
  enum class Mode { TrueOnly, Alternate };

  Mode mode = Mode::TrueOnly;
  std::size_t period = 1;

  static EvalSchedule true_only() { return {}; }
  static EvalSchedule alternate(std::size_t period) { return {Mode::Alternate, period}; }

  bool is_true_generation(std::size_t generation) const noexcept {
    return mode == Mode::TrueOnly || generation % period == 0;
  }
};

struct GaConfig {
  std::size_t pop_size = 100;
  std::size_t genome_length = 100;
  std::size_t max_generations = 100;
  double mutation_rate = 0.01;
  double crossover_rate = 0.95;
  std::size_t tournament_size = 5;
  std::size_t elite_count = 1;
  std::uint64_t seed = 1;
  EvalSchedule schedule;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

struct GaResult {
  /// Best individual ever scored by the true fitness function.
  Individual best;
  EvaluationArchive archive;
  /// Best true fitness present in each generation (carried forward through
  /// generations that hold no truly evaluated member).
  std::vector<double> best_fitness_history;
  std::size_t true_evaluations = 0;
  std::size_t surrogate_evaluations = 0;
  std::size_t retrainings = 0;
};

/// Index of the winner of a with-replacement tournament of `size` draws.
/// Ties among the drawn maxima are broken uniformly.
std::size_t tournament_select(const Population& pop, std::size_t size, RngStream& rng);

std::pair<Bitstring, Bitstring> uniform_crossover(const Bitstring& a, const Bitstring& b,
                                                  double crossover_rate, RngStream& rng);

Bitstring bitflip_mutate(Bitstring x, double rate, RngStream& rng);

/// Optional instrumentation of a run.
struct GaHooks {
  /// Replaces the random initial population when non-empty; must hold
  /// pop_size genomes of the configured length.
  std::vector<Bitstring> initial;
  /// Called once per generation after it has been scored.
  std::function<void(const Population&)> on_generation;
};

/// Generational GA: elites carried unchanged (never re-scored), remaining slots
/// filled by tournament -> uniform crossover -> bit-flip mutation.
GaResult run_ga(const Problem& problem, const GaConfig& config,
                const SurrogateTrainer& trainer = {}, const GaHooks& hooks = {});

}  // namespace gaexplain
