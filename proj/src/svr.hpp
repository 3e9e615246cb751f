#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"

namespace gaexplain {

enum class GammaMode { Scale, Fixed };

/// Defaults reproduce the usual library defaults for epsilon-SVR:
/// C = 1, epsilon = 0.1, gamma = 1 / (d * Var(X)), stopping tolerance 1e-3.
struct SvrHyperParams {
  double c = 1.0;
  double epsilon = 0.1;
  GammaMode gamma_mode = GammaMode::Scale;
  double gamma = 0.0;  // used only with GammaMode::Fixed
  double tolerance = 1e-3;
  /// Iteration budget; 0 selects 10 * rows. Always capped at kMaxIterationCap.
  std::size_t max_iterations = 0;

  static constexpr std::size_t kMaxIterationCap = 200000;

  void validate() const;
};

/// Trained epsilon-SVR with an RBF kernel. Immutable after training.
class SvrModel {
 public:
  SvrModel() = default;
  SvrModel(std::vector<Bitstring> support_vectors, std::vector<double> dual_coefs,
           double intercept, double gamma, std::size_t features);

  std::span<const Bitstring> support_vectors() const noexcept { return support_vectors_; }
  std::span<const double> dual_coefs() const noexcept { return dual_coefs_; }
  double intercept() const noexcept { return intercept_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t features() const noexcept { return features_; }

  /// sum_i beta_i * exp(-gamma * |sv_i - x|^2) + b
  double predict(const Bitstring& x) const;

  /// Same model with a different kernel width.
  SvrModel with_gamma(double gamma) const;

  void save(std::ostream& out) const;
  static SvrModel load(std::istream& in);

 private:
  std::vector<Bitstring> support_vectors_;
  std::vector<double> dual_coefs_;
  double intercept_ = 0.0;
  double gamma_ = 1.0;
  std::size_t features_ = 0;
};

struct SvrFit {
  SvrModel model;
  bool converged = false;
  std::size_t iterations = 0;
  /// Maximal KKT violation m(a) - M(a) at exit.
  double kkt_gap = 0.0;
};

/// 1 / (d * Var(X)) with Var over every entry of X. Throws DegenerateData
/// when X is empty or constant.
double gamma_scale(std::span<const Bitstring> inputs);

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma);

/// Solves the epsilon-SVR dual with SMO using second-order working set
/// selection. Deterministic for fixed input order.
SvrFit train_svr(const TrainingSet& data, const SvrHyperParams& params = {});

}  // namespace gaexplain
