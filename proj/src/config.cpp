#include "config.hpp"

#include <charconv>
#include <cmath>
#include <memory>

#include <json.hpp>

#include "errors.hpp"
#include "report.hpp"

namespace gaexplain {

using nlohmann::json;

namespace {

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

// Accepted keys, in document order. Dashed spellings are the CLI flags.
constexpr std::string_view kKeys[] = {
    "problem",    "n",          "pop",       "gens",         "mut_rate",
    "xover_rate", "tournament", "elites",    "seed",         "repeats",
    "train",      "cnf",        "cnf_seed",  "gen_cnf_clauses", "alternate_period",
    "out",        "trap",       "svr"};

std::string normalize_key(std::string_view key) {
  std::string k(key);
  for (auto& c : k) {
    if (c == '-') c = '_';
  }
  for (auto known : kKeys) {
    if (k == known) return k;
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

template <typename T>
T get_as(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("configuration key '" + std::string(key) + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, std::string_view key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("configuration key '" + std::string(key) +
                      "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

double get_real(const json& j, std::string_view key) {
  if (!j.is_number()) {
    throw ConfigError("configuration key '" + std::string(key) + "' must be a number");
  }
  return j.get<double>();
}

void apply(ExperimentConfig& cfg, const std::string& key, const json& v) {
  if (key == "problem") {
    cfg.problem = parse_problem_kind(get_as<std::string>(v, key));
  } else if (key == "n") {
    cfg.ga.genome_length = get_count(v, key);
  } else if (key == "pop") {
    cfg.ga.pop_size = get_count(v, key);
  } else if (key == "gens") {
    cfg.ga.max_generations = get_count(v, key);
  } else if (key == "mut_rate") {
    cfg.ga.mutation_rate = get_real(v, key);
  } else if (key == "xover_rate") {
    cfg.ga.crossover_rate = get_real(v, key);
  } else if (key == "tournament") {
    cfg.ga.tournament_size = get_count(v, key);
  } else if (key == "elites") {
    cfg.ga.elite_count = get_count(v, key);
  } else if (key == "seed") {
    cfg.ga.seed = get_as<std::uint64_t>(v, key);
  } else if (key == "repeats") {
    cfg.repeats = get_count(v, key);
  } else if (key == "train") {
    cfg.train.clear();
    if (v.is_array()) {
      for (const auto& item : v) cfg.train.push_back(TrainRange::parse(get_as<std::string>(item, key)));
    } else {
      const auto text = get_as<std::string>(v, key);
      std::size_t start = 0;
      while (true) {
        const auto comma = text.find(',', start);
        cfg.train.push_back(TrainRange::parse(std::string_view(text).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  } else if (key == "cnf") {
    if (v.is_null()) {
      cfg.cnf_path.reset();
    } else {
      cfg.cnf_path = get_as<std::string>(v, key);
    }
  } else if (key == "cnf_seed") {
    cfg.cnf_seed = get_as<std::uint64_t>(v, key);
  } else if (key == "gen_cnf_clauses") {
    cfg.cnf_clauses = get_count(v, key);
  } else if (key == "alternate_period") {
    const std::size_t p = get_count(v, key);
    cfg.ga.schedule = p == 0 ? EvalSchedule::true_only() : EvalSchedule::alternate(p);
  } else if (key == "out") {
    cfg.out_dir = get_as<std::string>(v, key);
  } else if (key == "trap") {
    if (!v.is_object()) throw ConfigError("'trap' must be an object");
    for (const auto& [k, item] : v.items()) {
      if (k == "k") cfg.trap.k = get_count(item, "trap.k");
      else if (k == "f_high") cfg.trap.f_high = get_real(item, "trap.f_high");
      else if (k == "f_low") cfg.trap.f_low = get_real(item, "trap.f_low");
      else throw ConfigError("unknown configuration key 'trap." + k + "'");
    }
  } else if (key == "svr") {
    if (!v.is_object()) throw ConfigError("'svr' must be an object");
    for (const auto& [k, item] : v.items()) {
      if (k == "C") {
        cfg.svr.c = get_real(item, "svr.C");
      } else if (k == "epsilon") {
        cfg.svr.epsilon = get_real(item, "svr.epsilon");
      } else if (k == "gamma") {
        if (item.is_string() && item.get<std::string>() == "scale") {
          cfg.svr.gamma_mode = GammaMode::Scale;
        } else {
          cfg.svr.gamma_mode = GammaMode::Fixed;
          cfg.svr.gamma = get_real(item, "svr.gamma");
        }
      } else if (k == "tolerance") {
        cfg.svr.tolerance = get_real(item, "svr.tolerance");
      } else if (k == "max_iterations") {
        cfg.svr.max_iterations = get_count(item, "svr.max_iterations");
      } else {
        throw ConfigError("unknown configuration key 'svr." + k + "'");
      }
    }
  }
}

}  // namespace

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "checkerboard1d") return ProblemKind::Checkerboard1D;
  if (name == "checkerboard2d") return ProblemKind::Checkerboard2D;
  if (name == "trap5" || name == "trap") return ProblemKind::Trap;
  if (name == "maxsat") return ProblemKind::MaxSat;
  throw ConfigError("unknown problem '" + std::string(name) +
                    "' (expected checkerboard1d, checkerboard2d, trap5 or maxsat)");
}

TrainRange TrainRange::parse(std::string_view text) {
  if (text == "first") return {Kind::FirstGen, 0, 0};
  if (text == "all") return {Kind::AllGens, 0, 0};
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw ConfigError("training range '" + std::string(text) + "' is not first, all or LO..HI");
  }
  TrainRange r{Kind::Range, parse_count(text.substr(0, dots)), parse_count(text.substr(dots + 2))};
  if (r.lo > r.hi) throw ConfigError("training range '" + std::string(text) + "' is reversed");
  return r;
}

std::string TrainRange::label() const {
  switch (kind) {
    case Kind::FirstGen: return "first";
    case Kind::AllGens: return "all";
    case Kind::Range: return std::to_string(lo) + ".." + std::to_string(hi);
  }
  return "all";
}

std::pair<std::size_t, std::size_t> TrainRange::bounds(std::size_t generations) const {
  switch (kind) {
    case Kind::FirstGen: return {0, 0};
    case Kind::AllGens: return {0, generations - 1};
    case Kind::Range: return {lo, hi};
  }
  return {0, generations - 1};
}

void ExperimentConfig::validate() const {
  try {
    ga.validate();
    svr.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  if (train.empty()) throw ConfigError("at least one training range is required");
  for (const auto& r : train) {
    const auto [lo, hi] = r.bounds(ga.max_generations);
    if (lo > hi || hi >= ga.max_generations) {
      throw ConfigError("training range " + r.label() + " lies outside generations [0, " +
                        std::to_string(ga.max_generations - 1) + "]");
    }
  }
  const std::size_t n = ga.genome_length;
  switch (problem) {
    case ProblemKind::Checkerboard1D:
      if (n < 2) throw ConfigError("checkerboard1d needs n >= 2");
      break;
    case ProblemKind::Checkerboard2D: {
      const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
      if (side * side != n) {
        throw ConfigError("checkerboard2d needs a square n, " + std::to_string(n) + " is not");
      }
      if (side < 3) throw ConfigError("checkerboard2d needs a side of at least 3");
      break;
    }
    case ProblemKind::Trap:
      if (trap.k < 2) throw ConfigError("trap block size must be at least 2");
      if (n % trap.k != 0) {
        throw ConfigError("trap block size " + std::to_string(trap.k) + " does not divide n=" +
                          std::to_string(n));
      }
      if (!(trap.f_low >= 0.0) || !(trap.f_high > trap.f_low)) {
        throw ConfigError("trap requires f_high > f_low >= 0");
      }
      break;
    case ProblemKind::MaxSat:
      if (!cnf_path && n < 3) throw ConfigError("generated MAXSAT needs n >= 3");
      break;
  }
  if (ga.schedule.mode == EvalSchedule::Mode::Alternate && ga.schedule.period < 1) {
    throw ConfigError("alternate period must be at least 1");
  }
}

Problem ExperimentConfig::build_problem() const {
  switch (problem) {
    case ProblemKind::Checkerboard1D: return Problem::checkerboard_1d(ga.genome_length);
    case ProblemKind::Checkerboard2D: return Problem::checkerboard_2d(ga.genome_length);
    case ProblemKind::Trap: return Problem::trap(ga.genome_length, trap);
    case ProblemKind::MaxSat: {
      std::shared_ptr<const CnfFormula> formula;
      if (cnf_path) {
        formula = std::make_shared<const CnfFormula>(parse_dimacs(read_file(*cnf_path)));
        if (formula->num_vars != ga.genome_length) {
          throw ConfigError("CNF file has " + std::to_string(formula->num_vars) +
                            " variables but n=" + std::to_string(ga.genome_length));
        }
      } else {
        RngStream rng(cnf_seed);
        formula = std::make_shared<const CnfFormula>(
            generate_random_3sat(rng, ga.genome_length, cnf_clauses));
      }
      return Problem::maxsat(std::move(formula));
    }
  }
  throw ConfigError("unknown problem kind");
}

std::string ExperimentConfig::to_json() const {
  json j = json::object();
  j["problem"] = std::string(to_string(problem));
  j["n"] = ga.genome_length;
  j["pop"] = ga.pop_size;
  j["gens"] = ga.max_generations;
  j["mut_rate"] = ga.mutation_rate;
  j["xover_rate"] = ga.crossover_rate;
  j["tournament"] = ga.tournament_size;
  j["elites"] = ga.elite_count;
  j["seed"] = ga.seed;
  j["repeats"] = repeats;
  json ranges = json::array();
  for (const auto& r : train) ranges.push_back(r.label());
  j["train"] = ranges;
  j["cnf"] = cnf_path ? json(*cnf_path) : json(nullptr);
  j["cnf_seed"] = cnf_seed;
  j["gen_cnf_clauses"] = cnf_clauses;
  j["alternate_period"] =
      ga.schedule.mode == EvalSchedule::Mode::Alternate ? ga.schedule.period : std::size_t{0};
  j["out"] = out_dir;
  j["trap"] = {{"k", trap.k}, {"f_high", trap.f_high}, {"f_low", trap.f_low}};
  j["svr"] = {{"C", svr.c},
              {"epsilon", svr.epsilon},
              {"gamma", svr.gamma_mode == GammaMode::Scale ? json("scale") : json(svr.gamma)},
              {"tolerance", svr.tolerance},
              {"max_iterations", svr.max_iterations}};
  return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON configuration: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) apply(cfg, normalize_key(key), value);
  return cfg;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  const std::string k = normalize_key(key);
  json v = json::parse(value, nullptr, false);
  if (v.is_discarded() || k == "problem" || k == "train" || k == "cnf" || k == "out") {
    v = std::string(value);
  }
  apply(*this, k, v);
}

}  // namespace gaexplain
