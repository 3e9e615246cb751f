#include "gaexplain/gaexplain.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "report.hpp"
#include "svr.hpp"

using namespace gaexplain;

struct gx_config {
  ExperimentConfig value;
};

struct gx_ga_result {
  GaResult value;
};

struct gx_experiment {
  ExperimentOutput value;
  std::vector<std::string> labels;
  std::vector<std::string> files;
};

struct gx_problem {
  Problem value;
};

struct gx_svr_model {
  SvrFit value;
};

namespace {

thread_local std::string last_error;

gx_status fail(gx_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body` and translates exceptions into status codes.
template <typename F>
gx_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return GX_OK;
  } catch (const ConfigError& e) {
    return fail(GX_ERR_CONFIG, e.what());
  } catch (const ParseError& e) {
    return fail(GX_ERR_PARSE, e.what());
  } catch (const DegenerateData& e) {
    return fail(GX_ERR_DEGENERATE_DATA, e.what());
  } catch (const EmptyTrainingSet& e) {
    return fail(GX_ERR_EMPTY_TRAINING_SET, e.what());
  } catch (const IoError& e) {
    return fail(GX_ERR_IO, e.what());
  } catch (const RunFailed& e) {
    return fail(GX_ERR_RUN_FAILED, e.what());
  } catch (const InvalidArgument& e) {
    return fail(GX_ERR_INVALID_ARGUMENT, e.what());
  } catch (const PredictorFailed& e) {
    return fail(GX_ERR_PREDICTOR, e.what());
  } catch (const std::exception& e) {
    return fail(GX_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GX_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
}

Bitstring to_bitstring(const uint8_t* bits, size_t n) {
  require(bits, "bits");
  return Bitstring(std::vector<std::uint8_t>(bits, bits + n));
}

size_t copy_out(const std::vector<double>& v, double* out, size_t cap) {
  if (out != nullptr) std::memcpy(out, v.data(), std::min(cap, v.size()) * sizeof(double));
  return v.size();
}

}  // namespace

extern "C" {

const char* gx_last_error(void) { return last_error.c_str(); }

const char* gx_status_name(gx_status status) {
  switch (status) {
    case GX_OK: return "ok";
    case GX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GX_ERR_CONFIG: return "configuration error";
    case GX_ERR_PARSE: return "parse error";
    case GX_ERR_DEGENERATE_DATA: return "degenerate data";
    case GX_ERR_EMPTY_TRAINING_SET: return "empty training set";
    case GX_ERR_IO: return "I/O error";
    case GX_ERR_RUN_FAILED: return "run failed";
    case GX_ERR_INTERNAL: return "internal error";
    case GX_ERR_PREDICTOR: return "predictor failed";
  }
  return "unknown status";
}

const char* gx_version(void) { return "0.1.0"; }

gx_status gx_config_create(gx_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gx_config{};
  });
}

void gx_config_destroy(gx_config* config) { delete config; }

gx_status gx_config_load_json(gx_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    config->value = ExperimentConfig::from_json(read_file(path));
  });
}

gx_status gx_config_parse_json(gx_config* config, const char* json_text) {
  return guarded([&] {
    require(config, "config");
    require(json_text, "json_text");
    config->value = ExperimentConfig::from_json(json_text);
  });
}

gx_status gx_config_set(gx_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->value.set(key, value);
  });
}

gx_status gx_config_validate(const gx_config* config) {
  return guarded([&] {
    require(config, "config");
    config->value.validate();
  });
}

size_t gx_config_repeats(const gx_config* config) { return config->value.repeats; }

gx_status gx_config_to_json(const gx_config* config, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    const std::string text = config->value.to_json();
    if (needed != nullptr) *needed = text.size();
    if (buf != nullptr && cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

gx_status gx_ga_run(const gx_config* config, size_t run_index, gx_ga_result** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    config->value.validate();
    const Problem problem = config->value.build_problem();
    *out = new gx_ga_result{run_ga_for(config->value, problem, run_index)};
  });
}

void gx_ga_result_destroy(gx_ga_result* result) { delete result; }

double gx_ga_result_best_fitness(const gx_ga_result* result) {
  return result->value.best.fitness();
}

size_t gx_ga_result_genome_length(const gx_ga_result* result) {
  return result->value.best.genome().size();
}

size_t gx_ga_result_best_genome(const gx_ga_result* result, uint8_t* bits, size_t cap) {
  const auto genome = result->value.best.genome().bits();
  if (bits != nullptr) std::memcpy(bits, genome.data(), std::min(cap, genome.size()));
  return genome.size();
}

size_t gx_ga_result_generations(const gx_ga_result* result) {
  return result->value.best_fitness_history.size();
}

double gx_ga_result_history(const gx_ga_result* result, size_t generation) {
  const auto& h = result->value.best_fitness_history;
  return generation < h.size() ? h[generation] : std::numeric_limits<double>::quiet_NaN();
}

size_t gx_ga_result_archive_rows(const gx_ga_result* result) {
  return result->value.archive.size();
}

gx_status gx_experiment_run(const gx_config* config, int write_outputs, gx_experiment** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    auto exp = std::make_unique<gx_experiment>();
    exp->value = run_experiment(config->value, write_outputs != 0);
    for (const auto& r : config->value.train) exp->labels.push_back(r.label());
    for (const auto& f : exp->value.files) exp->files.push_back(f.string());
    *out = exp.release();
  });
}

void gx_experiment_destroy(gx_experiment* experiment) { delete experiment; }

namespace {

const gaexplain::SurrogateOutcome* surrogate_at(const gx_experiment* experiment, size_t run,
                                                size_t range) {
  const auto& runs = experiment->value.runs;
  if (run >= runs.size() || range >= runs[run].surrogates.size()) return nullptr;
  return &runs[run].surrogates[range];
}

}  // namespace

size_t gx_experiment_runs(const gx_experiment* experiment) {
  return experiment->value.runs.size();
}

size_t gx_experiment_ranges(const gx_experiment* experiment) {
  return experiment->labels.size();
}

const char* gx_experiment_range_label(const gx_experiment* experiment, size_t range) {
  return range < experiment->labels.size() ? experiment->labels[range].c_str() : nullptr;
}

double gx_experiment_best_fitness(const gx_experiment* experiment, size_t run) {
  const auto& runs = experiment->value.runs;
  return run < runs.size() ? runs[run].ga.best.fitness()
                           : std::numeric_limits<double>::quiet_NaN();
}

size_t gx_experiment_train_rows(const gx_experiment* experiment, size_t run, size_t range) {
  const auto* s = surrogate_at(experiment, run, range);
  return s != nullptr ? s->train_rows : 0;
}

size_t gx_experiment_importance(const gx_experiment* experiment, size_t run, size_t range,
                                double* values, size_t cap) {
  const auto* s = surrogate_at(experiment, run, range);
  return s != nullptr ? copy_out(s->importance.values, values, cap) : 0;
}

size_t gx_experiment_mean_importance(const gx_experiment* experiment, size_t range,
                                     double* values, size_t cap) {
  const auto& mean = experiment->value.mean_importance;
  return range < mean.size() ? copy_out(mean[range], values, cap) : 0;
}

size_t gx_experiment_file_count(const gx_experiment* experiment) {
  return experiment->files.size();
}

const char* gx_experiment_file(const gx_experiment* experiment, size_t index) {
  return index < experiment->files.size() ? experiment->files[index].c_str() : nullptr;
}

gx_status gx_problem_from_config(const gx_config* config, gx_problem** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    config->value.validate();
    *out = new gx_problem{config->value.build_problem()};
  });
}

void gx_problem_destroy(gx_problem* problem) { delete problem; }

size_t gx_problem_genome_length(const gx_problem* problem) {
  return problem->value.genome_length();
}

gx_status gx_problem_evaluate(const gx_problem* problem, const uint8_t* bits, size_t n,
                              double* fitness) {
  return guarded([&] {
    require(problem, "problem");
    require(fitness, "fitness");
    *fitness = problem->value.evaluate(to_bitstring(bits, n));
  });
}

gx_status gx_cnf_generate_file(uint64_t seed, size_t num_vars, size_t num_clauses,
                               const char* path) {
  return guarded([&] {
    require(path, "path");
    RngStream rng(seed);
    write_file_atomic(path, write_dimacs(generate_random_3sat(rng, num_vars, num_clauses)));
  });
}

gx_svr_params gx_svr_default_params(void) {
  const SvrHyperParams d;
  return {d.c, d.epsilon, 0.0, d.tolerance, d.max_iterations};
}

gx_status gx_svr_train(const uint8_t* inputs, size_t rows, size_t features,
                       const double* targets, const gx_svr_params* params, gx_svr_model** out) {
  return guarded([&] {
    require(out, "out");
    if (rows > 0) {
      require(inputs, "inputs");
      require(targets, "targets");
    }
    TrainingSet data;
    for (size_t r = 0; r < rows; ++r) {
      data.inputs.push_back(to_bitstring(inputs + r * features, features));
      data.targets.push_back(targets[r]);
    }
    SvrHyperParams hp;
    if (params != nullptr) {
      hp.c = params->c;
      hp.epsilon = params->epsilon;
      hp.tolerance = params->tolerance;
      hp.max_iterations = params->max_iterations;
      if (params->gamma > 0.0) {
        hp.gamma_mode = GammaMode::Fixed;
        hp.gamma = params->gamma;
      }
    }
    *out = new gx_svr_model{train_svr(data, hp)};
  });
}

void gx_svr_destroy(gx_svr_model* model) { delete model; }

int gx_svr_converged(const gx_svr_model* model) { return model->value.converged ? 1 : 0; }

size_t gx_svr_support_vector_count(const gx_svr_model* model) {
  return model->value.model.support_vectors().size();
}

double gx_svr_gamma(const gx_svr_model* model) { return model->value.model.gamma(); }

double gx_svr_intercept(const gx_svr_model* model) { return model->value.model.intercept(); }

gx_status gx_svr_predict(const gx_svr_model* model, const uint8_t* bits, size_t n, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = model->value.model.predict(to_bitstring(bits, n));
  });
}

gx_status gx_svr_save(const gx_svr_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    std::ostringstream text;
    model->value.model.save(text);
    write_file_atomic(path, text.str());
  });
}

gx_status gx_svr_load(const char* path, gx_svr_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::istringstream in(read_file(path));
    SvrFit fit;
    fit.model = SvrModel::load(in);
    fit.converged = true;
    *out = new gx_svr_model{std::move(fit)};
  });
}

gx_status gx_probe(const uint8_t* seed, size_t n, gx_predictor_fn predictor, void* user,
                   double* importance, double* baseline) {
  return guarded([&] {
    if (predictor == nullptr) throw InvalidArgument("predictor must not be NULL");
    require(importance, "importance");
    const Bitstring x = to_bitstring(seed, n);
    const auto result = probe_solution(x, [&](const Bitstring& b) {
      double value = 0.0;
      const int rc = predictor(user, b.bits().data(), b.size(), &value);
      if (rc != 0) throw Error("predictor callback returned " + std::to_string(rc));
      return value;
    });
    copy_out(result.values, importance, n);
    if (baseline != nullptr) *baseline = result.baseline;
  });
}

gx_status gx_plot_csv(const char* csv_path, const char* svg_path, const char* title) {
  return guarded([&] {
    require(csv_path, "csv_path");
    require(svg_path, "svg_path");
    const auto values = read_importance_column(read_file(csv_path));
    emit_svg_barchart(values, title != nullptr ? title : csv_path, svg_path);
  });
}

}  // extern "C"
