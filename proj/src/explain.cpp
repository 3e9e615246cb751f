#include "explain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace gaexplain {

namespace {

double call_predictor(const Predictor& predictor, const Bitstring& x, const std::string& where) {
  try {
    return predictor(x);
  } catch (const std::exception& e) {
    throw PredictorFailed("predictor failed at " + where + ": " + e.what());
  }
}

}  // namespace

ImportanceVector probe_solution(const Bitstring& seed, const Predictor& predictor) {
  if (!predictor) throw InvalidArgument("probe needs a predictor");
  if (seed.empty()) throw InvalidArgument("probe needs a non-empty seed solution");
  ImportanceVector out;
  out.seed = seed;
  out.baseline = call_predictor(predictor, seed, "seed solution");
  out.flipped.reserve(seed.size());
  out.values.reserve(seed.size());
  Bitstring probe = seed;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    probe.flip(i);
    const double f = call_predictor(predictor, probe, "variable " + std::to_string(i));
    probe.flip(i);
    const double magnitude = std::abs(out.baseline - f);
    out.flipped.push_back(f);
    out.values.push_back(seed[i] ? -magnitude : magnitude);
  }
  return out;
}

ProbeReport make_report(const ImportanceVector& importance, std::string problem,
                        std::string training_range, std::uint64_t run_seed) {
  ProbeReport report;
  report.problem = std::move(problem);
  report.training_range = std::move(training_range);
  report.run_seed = run_seed;
  report.rows.reserve(importance.values.size());
  for (std::size_t i = 0; i < importance.values.size(); ++i) {
    report.rows.push_back({i, importance.seed[i], importance.baseline, importance.flipped[i],
                           importance.values[i]});
  }
  return report;
}

std::vector<double> mean_importance(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) throw InvalidArgument("mean of zero importance vectors");
  const std::size_t n = vectors.front().size();
  std::vector<double> mean(n, 0.0);
  for (const auto& v : vectors) {
    if (v.size() != n) throw InvalidArgument("importance vectors differ in length");
    for (std::size_t i = 0; i < n; ++i) mean[i] += v[i];
  }
  for (auto& m : mean) m /= static_cast<double>(vectors.size());
  return mean;
}

std::vector<double> mean_importance(std::span<const ImportanceVector> vectors) {
  std::vector<std::vector<double>> values;
  values.reserve(vectors.size());
  for (const auto& v : vectors) values.push_back(v.values);
  return mean_importance(std::span<const std::vector<double>>(values));
}

std::vector<std::pair<std::size_t, double>> rank_variables(std::span<const double> importance) {
  std::vector<std::pair<std::size_t, double>> ranked;
  ranked.reserve(importance.size());
  for (std::size_t i = 0; i < importance.size(); ++i) {
    ranked.emplace_back(i, std::abs(importance[i]));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& l, const auto& r) { return l.second > r.second; });
  return ranked;
}

int resolved_sign(double v, double floor) noexcept {
  if (v > floor) return 1;
  if (v < -floor) return -1;
  return 0;
}

double adjacent_sign_alternation(std::span<const double> values, double floor) {
  if (values.size() < 2) return 0.0;
  std::size_t alternating = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const int a = resolved_sign(values[i], floor);
    const int b = resolved_sign(values[i + 1], floor);
    if (a != 0 && b != 0 && a != b) ++alternating;
  }
  return static_cast<double>(alternating) / static_cast<double>(values.size() - 1);
}

double uniform_sign_blocks(std::span<const double> values, std::size_t k, double floor) {
  if (k == 0 || values.empty() || values.size() % k != 0) {
    throw InvalidArgument("block size must divide the vector length");
  }
  std::size_t uniform = 0;
  for (std::size_t start = 0; start < values.size(); start += k) {
    const int first = resolved_sign(values[start], floor);
    bool same = first != 0;
    for (std::size_t i = start + 1; same && i < start + k; ++i) {
      same = resolved_sign(values[i], floor) == first;
    }
    if (same) ++uniform;
  }
  return static_cast<double>(uniform) / static_cast<double>(values.size() / k);
}

}  // namespace gaexplain
