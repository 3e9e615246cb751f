#include "ga.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace gaexplain {

void GaConfig::validate() const {
  if (pop_size < 2) throw ConfigError("population size must be at least 2");
  if (genome_length == 0) throw ConfigError("genome length must be positive");
  if (max_generations == 0) throw ConfigError("generation count must be positive");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw ConfigError("mutation rate must lie in [0, 1]");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ConfigError("crossover rate must lie in [0, 1]");
  }
  if (tournament_size < 2 || tournament_size > pop_size) {
    throw ConfigError("tournament size must lie in [2, population size]");
  }
  if (elite_count >= pop_size) throw ConfigError("elite count must be below population size");
  if (schedule.mode == EvalSchedule::Mode::Alternate && schedule.period < 1) {
    throw ConfigError("alternation period must be at least 1");
  }
}

std::size_t tournament_select(const Population& pop, std::size_t size, RngStream& rng) {
  if (size < 2 || size > pop.size()) {
    throw InvalidArgument("tournament size must lie in [2, population size]");
  }
  std::size_t winner = 0;
  double best = 0.0;
  std::size_t ties = 0;
  for (std::size_t draw = 0; draw < size; ++draw) {
    const auto idx = static_cast<std::size_t>(rng.below(pop.size()));
    const double f = pop.members[idx].fitness();
    if (ties == 0 || f > best) {
      winner = idx;
      best = f;
      ties = 1;
    } else if (f == best) {
      // Reservoir step keeps every tied draw equally likely.
      ++ties;
      if (rng.below(ties) == 0) winner = idx;
    }
  }
  return winner;
}

std::pair<Bitstring, Bitstring> uniform_crossover(const Bitstring& a, const Bitstring& b,
                                                  double crossover_rate, RngStream& rng) {
  if (a.size() != b.size()) throw InvalidArgument("crossover parents differ in length");
  if (!rng.bernoulli(crossover_rate)) return {a, b};
  Bitstring c1 = a;
  Bitstring c2 = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!rng.bit()) {
      c1.set(i, b[i]);
      c2.set(i, a[i]);
    }
  }
  return {std::move(c1), std::move(c2)};
}

Bitstring bitflip_mutate(Bitstring x, double rate, RngStream& rng) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.bernoulli(rate)) x.flip(i);
  }
  return x;
}

namespace {

std::vector<std::size_t> ranked_indices(const Population& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return pop.members[l].fitness() > pop.members[r].fitness();
  });
  return order;
}

class Run {
 public:
  Run(const Problem& problem, const GaConfig& config, const SurrogateTrainer& trainer,
      const GaHooks& hooks)
      : problem_(problem), config_(config), trainer_(trainer), hooks_(hooks), rng_(config.seed) {}

  GaResult execute() {
    Population pop;
    pop.members.reserve(config_.pop_size);
    if (hooks_.initial.empty()) {
      for (std::size_t i = 0; i < config_.pop_size; ++i) {
        pop.members.emplace_back(random_bitstring(rng_, config_.genome_length));
      }
    } else {
      for (const auto& g : hooks_.initial) pop.members.emplace_back(g);
    }
    evaluate(pop);
    for (std::size_t gen = 1; gen < config_.max_generations; ++gen) {
      pop = breed(pop);
      pop.generation = gen;
      evaluate(pop);
    }
    return std::move(result_);
  }

 private:
  void evaluate(Population& pop) {
    const bool use_true = config_.schedule.is_true_generation(pop.generation);
    for (auto& m : pop.members) {
      if (use_true) {
        if (m.source() == FitnessSource::True) continue;
        const double f = problem_.evaluate(m.genome());
        m.set_fitness(f, FitnessSource::True);
        result_.archive.append(m.genome(), f, pop.generation);
        ++result_.true_evaluations;
        if (!have_best_ || f > result_.best.fitness()) {
          result_.best = m;
          have_best_ = true;
        }
      } else {
        if (m.has_fitness()) continue;
        m.set_fitness(surrogate_(m.genome()), FitnessSource::Surrogate);
        ++result_.surrogate_evaluations;
      }
    }

    double gen_best = result_.best_fitness_history.empty() ? result_.best.fitness()
                                                           : result_.best_fitness_history.back();
    bool found = false;
    for (const auto& m : pop.members) {
      if (m.source() != FitnessSource::True) continue;
      if (!found || m.fitness() > gen_best) gen_best = m.fitness();
      found = true;
    }
    result_.best_fitness_history.push_back(gen_best);

    if (use_true && config_.schedule.mode == EvalSchedule::Mode::Alternate) {
      surrogate_ = trainer_(result_.archive);
      ++result_.retrainings;
    }
    if (hooks_.on_generation) hooks_.on_generation(pop);
  }

  Population breed(const Population& pop) {
    Population next;
    next.members.reserve(config_.pop_size);
    const auto order = ranked_indices(pop);
    for (std::size_t e = 0; e < config_.elite_count; ++e) {
      next.members.push_back(pop.members[order[e]]);
    }
    while (next.members.size() < config_.pop_size) {
      const auto& a = pop.members[tournament_select(pop, config_.tournament_size, rng_)];
      const auto& b = pop.members[tournament_select(pop, config_.tournament_size, rng_)];
      auto [c1, c2] = uniform_crossover(a.genome(), b.genome(), config_.crossover_rate, rng_);
      c1 = bitflip_mutate(std::move(c1), config_.mutation_rate, rng_);
      c2 = bitflip_mutate(std::move(c2), config_.mutation_rate, rng_);
      next.members.emplace_back(std::move(c1));
      if (next.members.size() < config_.pop_size) next.members.emplace_back(std::move(c2));
    }
    return next;
  }

  const Problem& problem_;
  const GaConfig& config_;
  const SurrogateTrainer& trainer_;
  const GaHooks& hooks_;
  RngStream rng_;
  GaResult result_;
  Predictor surrogate_;
  bool have_best_ = false;
};

}  // namespace

GaResult run_ga(const Problem& problem, const GaConfig& config, const SurrogateTrainer& trainer,
                const GaHooks& hooks) {
  config.validate();
  if (problem.genome_length() != config.genome_length) {
    throw ConfigError("problem genome length " + std::to_string(problem.genome_length()) +
                      " differs from configured n=" + std::to_string(config.genome_length));
  }
  if (config.schedule.mode == EvalSchedule::Mode::Alternate && !trainer) {
    throw ConfigError("alternating evaluation needs a surrogate trainer");
  }
  if (!hooks.initial.empty()) {
    if (hooks.initial.size() != config.pop_size) {
      throw ConfigError("initial population must hold exactly pop_size genomes");
    }
    for (const auto& g : hooks.initial) {
      if (g.size() != config.genome_length) {
        throw ConfigError("initial genome length differs from configured n");
      }
    }
  }
  return Run(problem, config, trainer, hooks).execute();
}

}  // namespace gaexplain
