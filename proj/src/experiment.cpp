#include "experiment.hpp"

#include <cstdio>
#include <memory>
#include <sstream>

#include "errors.hpp"
#include "report.hpp"

namespace gaexplain {

namespace {

std::string file_label(const TrainRange& r) {
  if (r.kind != TrainRange::Kind::Range) return r.label();
  return std::to_string(r.lo) + "_" + std::to_string(r.hi);
}

std::string run_stem(std::size_t run_index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", run_index);
  return buf;
}

SurrogateTrainer make_trainer(const SvrHyperParams& params) {
  return [params](const EvaluationArchive& archive) -> Predictor {
    const auto last = archive.last_generation().value_or(0);
    auto model = std::make_shared<const SvrModel>(
        train_svr(archive.training_view(0, last), params).model);
    return [model](const Bitstring& x) { return model->predict(x); };
  };
}

}  // namespace

GaResult run_ga_for(const ExperimentConfig& config, const Problem& problem,
                    std::size_t run_index) {
  GaConfig ga = config.ga;
  ga.seed = config.ga.seed + run_index;
  const SurrogateTrainer trainer = ga.schedule.mode == EvalSchedule::Mode::Alternate
                                       ? make_trainer(config.svr)
                                       : SurrogateTrainer{};
  return run_ga(problem, ga, trainer);
}

RunOutcome run_single(const ExperimentConfig& config, const Problem& problem,
                      std::size_t run_index) {
  RunOutcome out;
  out.run_index = run_index;
  out.seed = config.ga.seed + run_index;
  out.ga = run_ga_for(config, problem, run_index);
  for (const auto& range : config.train) {
    const auto [lo, hi] = range.bounds(config.ga.max_generations);
    SurrogateOutcome s;
    s.range = range;
    const TrainingSet data = out.ga.archive.training_view(lo, hi);
    s.train_rows = data.rows();
    s.fit = train_svr(data, config.svr);
    const SvrModel& model = s.fit.model;
    s.importance = probe_solution(out.ga.best.genome(),
                                  [&model](const Bitstring& x) { return model.predict(x); });
    out.surrogates.push_back(std::move(s));
  }
  return out;
}

std::string summary_csv(const ExperimentOutput& output) {
  std::string csv =
      "run_index,seed,best_fitness,archive_rows,train,train_rows,support_vectors,"
      "svr_iterations,svr_converged\n";
  for (const auto& run : output.runs) {
    for (const auto& s : run.surrogates) {
      csv += std::to_string(run.run_index) + ',' + std::to_string(run.seed) + ',' +
             format_real(run.ga.best.fitness()) + ',' + std::to_string(run.ga.archive.size()) +
             ',' + s.range.label() + ',' + std::to_string(s.train_rows) + ',' +
             std::to_string(s.fit.model.support_vectors().size()) + ',' +
             std::to_string(s.fit.iterations) + ',' + (s.fit.converged ? "1" : "0") + '\n';
    }
  }
  return csv;
}

ExperimentOutput run_experiment(const ExperimentConfig& config, bool write_outputs) {
  config.validate();
  const Problem problem = config.build_problem();
  const std::filesystem::path dir(config.out_dir);

  ExperimentOutput output;
  const auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    write_file_atomic(path, content);
    output.files.push_back(path);
  };

  try {
    if (write_outputs) {
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError("cannot create output directory " + dir.string());
    }
    for (std::size_t r = 0; r < config.repeats; ++r) {
      RunOutcome run;
      try {
        run = run_single(config, problem, r);
      } catch (const std::exception& e) {
        throw RunFailed(r, e.what());
      }
      if (write_outputs) {
        for (const auto& s : run.surrogates) {
          const std::string stem = run_stem(r) + "_" + file_label(s.range);
          emit("run_" + stem + ".csv",
               probe_csv(make_report(s.importance, std::string(to_string(config.problem)),
                                     s.range.label(), run.seed)));
          std::ostringstream model;
          s.fit.model.save(model);
          emit("model_" + stem + ".txt", model.str());
        }
      }
      output.runs.push_back(std::move(run));
    }

    for (std::size_t t = 0; t < config.train.size(); ++t) {
      std::vector<ImportanceVector> vectors;
      for (const auto& run : output.runs) vectors.push_back(run.surrogates[t].importance);
      output.mean_importance.push_back(mean_importance(vectors));
      if (write_outputs) {
        const auto& range = config.train[t];
        const std::string title = std::string(to_string(config.problem)) +
                                  ": mean contribution to surrogate fitness (train " +
                                  range.label() + ", " + std::to_string(config.repeats) +
                                  (config.repeats == 1 ? " run)" : " runs)");
        emit("mean_" + file_label(range) + ".csv", mean_csv(output.mean_importance.back()));
        emit("mean_" + file_label(range) + ".svg", svg_barchart(output.mean_importance.back(), title));
      }
    }
    if (write_outputs) emit("summary.csv", summary_csv(output));
  } catch (...) {
    for (const auto& path : output.files) {
      std::error_code ignored;
      std::filesystem::remove(path, ignored);
    }
    throw;
  }
  return output;
}

}  // namespace gaexplain
