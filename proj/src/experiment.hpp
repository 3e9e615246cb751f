#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "explain.hpp"
#include "ga.hpp"
#include "svr.hpp"

namespace gaexplain {

struct SurrogateOutcome {
  TrainRange range;
  std::size_t train_rows = 0;
  SvrFit fit;
  ImportanceVector importance;
};

struct RunOutcome {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  GaResult ga;
  /// One entry per configured training range, same order.
  std::vector<SurrogateOutcome> surrogates;
};

struct ExperimentOutput {
  std::vector<RunOutcome> runs;
  /// Mean importance across runs, one per training range.
  std::vector<std::vector<double>> mean_importance;
  std::vector<std::filesystem::path> files;
};

/// Raised when one repeat fails; the message names the run.
class RunFailed : public Error {
 public:
  RunFailed(std::size_t run_index, const std::string& what)
      : Error("run " + std::to_string(run_index) + ": " + what), run_index_(run_index) {}
  std::size_t run_index() const noexcept { return run_index_; }

 private:
  std::size_t run_index_;
};

/// GA seeded with base seed + run_index, one SVR per training range drawn
/// from the same archive, each probed at the GA's best-ever solution.
RunOutcome run_single(const ExperimentConfig& config, const Problem& problem,
                      std::size_t run_index);

/// Runs every repeat. When `write_outputs` is set, writes into config.out_dir:
///   run_RRR_<range>.csv      probe report per run and range
///   model_RRR_<range>.txt    trained surrogate
///   mean_<range>.csv/.svg    mean importance across runs
///   summary.csv              one row per run and range
/// A failure removes every file this call wrote.
ExperimentOutput run_experiment(const ExperimentConfig& config, bool write_outputs = true);

/// The GA of one repeat, without any surrogate work beyond what the
/// evaluation schedule needs.
GaResult run_ga_for(const ExperimentConfig& config, const Problem& problem,
                    std::size_t run_index);

std::string summary_csv(const ExperimentOutput& output);

}  // namespace gaexplain
