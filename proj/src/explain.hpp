#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "ga.hpp"

namespace gaexplain {

/// Signed single-bit sensitivities of a predictor around one seed solution.
///
/// values[i] = -|baseline - flipped[i]| when seed bit i is 1 and
/// +|baseline - flipped[i]| when it is 0, so a positive entry says the
/// variable wants to be 0 and a negative one says it wants to be 1.
struct ImportanceVector {
  Bitstring seed;
  double baseline = 0.0;
  std::vector<double> flipped;
  std::vector<double> values;
};

struct ProbeRow {
  std::size_t variable_index;
  bool seed_bit;
  double baseline;
  double flipped_prediction;
  double importance;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  std::string problem;
  std::string training_range;
  std::uint64_t run_seed = 0;
};

/// Calls the predictor once at the seed and once per single-bit flip
/// (n + 1 calls). Each flip is undone before the next variable is probed.
ImportanceVector probe_solution(const Bitstring& seed, const Predictor& predictor);

ProbeReport make_report(const ImportanceVector& importance, std::string problem,
                        std::string training_range, std::uint64_t run_seed);

/// Elementwise mean of the importance values.
std::vector<double> mean_importance(std::span<const ImportanceVector> vectors);
std::vector<double> mean_importance(std::span<const std::vector<double>> vectors);

/// (index, |value|) by descending magnitude; ties keep ascending index.
std::vector<std::pair<std::size_t, double>> rank_variables(std::span<const double> importance);

/// Sign of v, with |v| <= floor counted as no sign.
int resolved_sign(double v, double floor) noexcept;

/// Fraction of adjacent pairs (i, i+1) whose resolved signs are opposite and
/// non-zero. Vectors shorter than 2 give 0.
double adjacent_sign_alternation(std::span<const double> values, double floor = 0.0);

/// Fraction of consecutive length-k blocks in which all k resolved signs are
/// equal and non-zero. k must divide the length.
double uniform_sign_blocks(std::span<const double> values, std::size_t k, double floor = 0.0);

}  // namespace gaexplain
