#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ga.hpp"
#include "problems.hpp"
#include "svr.hpp"

namespace gaexplain {

/// Which archived generations feed the surrogate.
struct TrainRange {
  enum class Kind { FirstGen, AllGens, Range };

  Kind kind = Kind::AllGens;
  std::size_t lo = 0;
  std::size_t hi = 0;

  /// Accepts "first", "all" or "LO..HI".
  static TrainRange parse(std::string_view text);
  /// Inverse of parse; also used in output file names.
  std::string label() const;
  /// Inclusive generation bounds for a run of `generations` generations.
  std::pair<std::size_t, std::size_t> bounds(std::size_t generations) const;

  friend bool operator==(const TrainRange&, const TrainRange&) = default;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::Checkerboard1D;
  GaConfig ga;
  TrapParams trap;
  std::optional<std::string> cnf_path;
  std::uint64_t cnf_seed = 1;
  std::size_t cnf_clauses = 427;
  std::vector<TrainRange> train{TrainRange{}};
  std::size_t repeats = 1;
  std::string out_dir = "out";
  SvrHyperParams svr;

  /// Rejects every constraint violation before any compute. Throws ConfigError.
  void validate() const;

  /// Instantiates the benchmark; MAXSAT reads `cnf_path` or generates a
  /// formula from `cnf_seed`.
  Problem build_problem() const;

  /// Field-for-field JSON document.
  std::string to_json() const;
  static ExperimentConfig from_json(std::string_view text);

  /// Applies a single override. Keys are the CLI flag names without the
  /// leading dashes ("mut-rate", "train", ...); values are JSON scalars or
  /// bare strings.
  void set(std::string_view key, std::string_view value);
};

ProblemKind parse_problem_kind(std::string_view name);

}  // namespace gaexplain
