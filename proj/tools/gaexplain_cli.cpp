// gaexplain command line: run the GA, explain its best solution through a
// trained surrogate, plot importance CSVs, and generate CNF instances.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaexplain/gaexplain.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ConfigDeleter {
  void operator()(gx_config* c) const { gx_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<gx_config, ConfigDeleter>;

// Flag name -> value, filled only for flags present on the command line.
struct ExperimentFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON experiment file; flags override it");
    add(cmd, "problem", "checkerboard1d | checkerboard2d | trap5 | maxsat");
    add(cmd, "n", "genome length");
    add(cmd, "pop", "population size");
    add(cmd, "gens", "number of generations");
    add(cmd, "mut-rate", "per-bit mutation probability");
    add(cmd, "xover-rate", "per-pair crossover probability");
    add(cmd, "tournament", "tournament size");
    add(cmd, "elites", "individuals copied unchanged each generation");
    add(cmd, "seed", "base seed; repeat r uses seed + r");
    add(cmd, "repeats", "independent GA runs");
    add(cmd, "train", "surrogate training generations: first | all | LO..HI (comma list)");
    add(cmd, "cnf", "DIMACS file for maxsat");
    add(cmd, "cnf-seed", "seed of the generated maxsat instance");
    add(cmd, "gen-cnf-clauses", "clauses in the generated maxsat instance");
    add(cmd, "alternate-period", "evaluate truly every P generations, surrogate otherwise");
    add(cmd, "out", "output directory");
  }

  void add(CLI::App* cmd, const std::string& name, const std::string& help) {
    cmd->add_option_function<std::string>(
        "--" + name, [this, name](const std::string& v) { values[name] = v; }, help);
  }
};

void report(gx_status status) {
  std::fprintf(stderr, "gaexplain: %s: %s\n", gx_status_name(status), gx_last_error());
}

int exit_code_for(gx_status status) {
  return status == GX_ERR_CONFIG ? kExitUsage : kExitFailure;
}

// Builds and validates the configuration; returns nullptr after reporting.
ConfigPtr build_config(const ExperimentFlags& flags, int& exit_code) {
  gx_config* raw = nullptr;
  gx_status st = gx_config_create(&raw);
  ConfigPtr config(raw);
  if (st == GX_OK && !flags.config_path.empty()) {
    st = gx_config_load_json(config.get(), flags.config_path.c_str());
  }
  for (const auto& [key, value] : flags.values) {
    if (st != GX_OK) break;
    st = gx_config_set(config.get(), key.c_str(), value.c_str());
  }
  if (st == GX_OK) st = gx_config_validate(config.get());
  if (st != GX_OK) {
    report(st);
    exit_code = exit_code_for(st);
    return nullptr;
  }
  return config;
}

int cmd_run(const ExperimentFlags& flags) {
  int code = kExitOk;
  auto config = build_config(flags, code);
  if (!config) return code;
  const size_t repeats = gx_config_repeats(config.get());
  std::printf("run_index,best_fitness,archive_rows,best_genome\n");
  for (size_t r = 0; r < repeats; ++r) {
    gx_ga_result* result = nullptr;
    const gx_status st = gx_ga_run(config.get(), r, &result);
    if (st != GX_OK) {
      report(st);
      return exit_code_for(st);
    }
    std::string genome(gx_ga_result_genome_length(result), '0');
    std::vector<uint8_t> bits(genome.size());
    gx_ga_result_best_genome(result, bits.data(), bits.size());
    for (size_t i = 0; i < bits.size(); ++i) genome[i] = bits[i] ? '1' : '0';
    std::printf("%zu,%.17g,%zu,%s\n", r, gx_ga_result_best_fitness(result),
                gx_ga_result_archive_rows(result), genome.c_str());
    gx_ga_result_destroy(result);
  }
  return kExitOk;
}

int cmd_explain(const ExperimentFlags& flags) {
  int code = kExitOk;
  auto config = build_config(flags, code);
  if (!config) return code;
  gx_experiment* exp = nullptr;
  const gx_status st = gx_experiment_run(config.get(), 1, &exp);
  if (st != GX_OK) {
    report(st);
    return exit_code_for(st);
  }
  for (size_t r = 0; r < gx_experiment_runs(exp); ++r) {
    std::printf("run %zu: best fitness %.17g", r, gx_experiment_best_fitness(exp, r));
    for (size_t t = 0; t < gx_experiment_ranges(exp); ++t) {
      std::printf(", train %s on %zu rows", gx_experiment_range_label(exp, t),
                  gx_experiment_train_rows(exp, r, t));
    }
    std::printf("\n");
  }
  for (size_t f = 0; f < gx_experiment_file_count(exp); ++f) {
    std::printf("wrote %s\n", gx_experiment_file(exp, f));
  }
  gx_experiment_destroy(exp);
  return kExitOk;
}

int cmd_plot(const std::string& csv, std::string svg, const std::string& title) {
  if (svg.empty()) {
    const auto dot = csv.rfind('.');
    svg = (dot == std::string::npos ? csv : csv.substr(0, dot)) + ".svg";
  }
  const gx_status st =
      gx_plot_csv(csv.c_str(), svg.c_str(), title.empty() ? nullptr : title.c_str());
  if (st != GX_OK) {
    report(st);
    return exit_code_for(st);
  }
  std::printf("wrote %s\n", svg.c_str());
  return kExitOk;
}

int cmd_gen_cnf(const std::string& path, uint64_t seed, size_t vars, size_t clauses) {
  const gx_status st = gx_cnf_generate_file(seed, vars, clauses, path.c_str());
  if (st != GX_OK) {
    report(st);
    return st == GX_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
  }
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explain GA solutions by probing a surrogate trained on the GA's populations"};
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  auto* run = app.add_subcommand("run", "run the GA only and print the best solution per repeat");
  run_flags.attach(run);

  ExperimentFlags explain_flags;
  auto* explain =
      app.add_subcommand("explain", "GA -> surrogate -> probe; writes CSV reports and SVG charts");
  explain_flags.attach(explain);

  std::string plot_csv;
  std::string plot_svg;
  std::string plot_title;
  auto* plot = app.add_subcommand("plot", "render a probe or mean-importance CSV as an SVG chart");
  plot->add_option("csv", plot_csv, "input CSV")->required();
  plot->add_option("--svg", plot_svg, "output SVG (default: CSV path with .svg)");
  plot->add_option("--title", plot_title, "chart title");

  std::string cnf_path;
  uint64_t cnf_seed = 1;
  size_t cnf_vars = 100;
  size_t cnf_clauses = 427;
  auto* gen = app.add_subcommand("gen-cnf", "write a seeded uniform random 3-CNF in DIMACS");
  gen->add_option("path", cnf_path, "output DIMACS file")->required();
  gen->add_option("--seed", cnf_seed, "generator seed");
  gen->add_option("--n", cnf_vars, "number of variables");
  gen->add_option("--gen-cnf-clauses", cnf_clauses, "number of clauses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "gaexplain: %s\n\n%s", e.what(), app.help().c_str());
    return kExitUsage;
  }

  if (*run) return cmd_run(run_flags);
  if (*explain) return cmd_explain(explain_flags);
  if (*plot) return cmd_plot(plot_csv, plot_svg, plot_title);
  if (*gen) return cmd_gen_cnf(cnf_path, cnf_seed, cnf_vars, cnf_clauses);
  return kExitUsage;
}
