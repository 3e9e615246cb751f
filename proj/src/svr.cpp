#include "svr.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "errors.hpp"

namespace gaexplain {

void SvrHyperParams::validate() const {
  if (!(c > 0.0)) throw ConfigError("SVR C must be positive");
  if (!(epsilon >= 0.0)) throw ConfigError("SVR epsilon must be non-negative");
  if (!(tolerance > 0.0)) throw ConfigError("SVR tolerance must be positive");
  if (gamma_mode == GammaMode::Fixed && !(gamma > 0.0)) {
    throw ConfigError("fixed SVR gamma must be positive");
  }
}

namespace {

/// Genomes packed 64 bits per word so squared distances become popcounts.
class PackedRows {
 public:
  explicit PackedRows(std::span<const Bitstring> rows)
      : words_((rows.empty() ? 0 : rows.front().size() + 63) / 64), data_(rows.size() * words_) {
    for (std::size_t r = 0; r < rows.size(); ++r) pack(rows[r], &data_[r * words_]);
  }

  std::size_t words() const noexcept { return words_; }

  void pack(const Bitstring& x, std::uint64_t* out) const {
    std::fill(out, out + words_, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }

  unsigned distance(std::size_t r, const std::uint64_t* other) const noexcept {
    const std::uint64_t* row = &data_[r * words_];
    unsigned d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row[w] ^ other[w]);
    return d;
  }

  const std::uint64_t* row(std::size_t r) const noexcept { return &data_[r * words_]; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

// libsvm Solver with WSS2 over 2l variables. Index t < l carries alpha_t
// (y = +1), index t >= l carries alpha*_{t-l} (y = -1).
class SmoSolver {
 public:
  SmoSolver(const TrainingSet& data, const SvrHyperParams& params, double gamma)
      : data_(data),
        l_(data.rows()),
        c_(params.c),
        tol_(params.tolerance),
        rows_(data.inputs),
        kernel_table_(data.features() + 1),
        alpha_(2 * l_, 0.0),
        grad_(2 * l_),
        k_i_(l_),
        k_j_(l_) {
    for (std::size_t h = 0; h < kernel_table_.size(); ++h) {
      kernel_table_[h] = std::exp(-gamma * static_cast<double>(h));
    }
    for (std::size_t i = 0; i < l_; ++i) {
      grad_[i] = params.epsilon - data.targets[i];
      grad_[i + l_] = params.epsilon + data.targets[i];
    }
  }

  SvrFit solve(std::size_t max_iterations, double gamma) {
    SvrFit fit;
    std::size_t iter = 0;
    double gap = 0.0;
    bool converged = false;
    while (true) {
      const WorkingSet ws = select_working_set();
      gap = ws.gap;
      if (ws.optimal) {
        converged = true;
        break;
      }
      if (iter >= max_iterations) break;
      ++iter;
      update(ws.i, ws.j);
    }
    fit.converged = converged;
    fit.iterations = iter;
    fit.kkt_gap = gap;
    fit.model = extract(gamma);
    return fit;
  }

 private:
  static constexpr double kTau = 1e-12;

  double sign(std::size_t t) const noexcept { return t < l_ ? 1.0 : -1.0; }
  std::size_t sample(std::size_t t) const noexcept { return t < l_ ? t : t - l_; }
  bool below_upper(std::size_t t) const noexcept { return alpha_[t] < c_; }
  bool above_lower(std::size_t t) const noexcept { return alpha_[t] > 0.0; }

  void kernel_row(std::size_t sample_index, std::vector<double>& out) const {
    const std::uint64_t* x = rows_.row(sample_index);
    for (std::size_t s = 0; s < l_; ++s) out[s] = kernel_table_[rows_.distance(s, x)];
  }

  // Signed Q entry between variable t and variable s given K row of t's sample.
  double q(std::size_t t, std::size_t s, const std::vector<double>& k_row) const noexcept {
    return sign(t) * sign(s) * k_row[sample(s)];
  }

  struct WorkingSet {
    bool optimal;
    double gap;
    std::size_t i;
    std::size_t j;
  };

  WorkingSet select_working_set() {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t gmax_idx = 2 * l_;
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      if (sign(t) > 0) {
        if (below_upper(t) && -grad_[t] >= gmax) {
          gmax = -grad_[t];
          gmax_idx = t;
        }
      } else if (above_lower(t) && grad_[t] >= gmax) {
        gmax = grad_[t];
        gmax_idx = t;
      }
    }
    if (gmax_idx == 2 * l_) return {true, 0.0, 0, 0};

    const std::size_t i = gmax_idx;
    kernel_row(sample(i), k_i_);
    const double yi = sign(i);
    std::size_t gmin_idx = 2 * l_;
    double obj_diff_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      const double q_it = q(i, t, k_i_);
      if (sign(t) > 0) {
        if (!above_lower(t)) continue;
        const double grad_diff = gmax + grad_[t];
        gmax2 = std::max(gmax2, grad_[t]);
        if (grad_diff > 0.0) {
          double quad = 2.0 - 2.0 * yi * q_it;
          if (quad <= 0.0) quad = kTau;
          const double obj_diff = -(grad_diff * grad_diff) / quad;
          if (obj_diff <= obj_diff_min) {
            obj_diff_min = obj_diff;
            gmin_idx = t;
          }
        }
      } else {
        if (!below_upper(t)) continue;
        const double grad_diff = gmax - grad_[t];
        gmax2 = std::max(gmax2, -grad_[t]);
        if (grad_diff > 0.0) {
          double quad = 2.0 + 2.0 * yi * q_it;
          if (quad <= 0.0) quad = kTau;
          const double obj_diff = -(grad_diff * grad_diff) / quad;
          if (obj_diff <= obj_diff_min) {
            obj_diff_min = obj_diff;
            gmin_idx = t;
          }
        }
      }
    }
    const double gap = gmax + gmax2;
    if (gap < tol_ || gmin_idx == 2 * l_) return {true, gap, i, gmin_idx};
    return {false, gap, i, gmin_idx};
  }

  // Two-variable analytic step; k_i_ already holds the kernel row of i.
  void update(std::size_t i, std::size_t j) {
    kernel_row(sample(j), k_j_);
    const double q_ij = q(i, j, k_i_);
    const double old_ai = alpha_[i];
    const double old_aj = alpha_[j];
    double& ai = alpha_[i];
    double& aj = alpha_[j];

    if (sign(i) != sign(j)) {
      double quad = 2.0 + 2.0 * q_ij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > c_) {
          ai = c_;
          aj = c_ - diff;
        }
      } else if (aj > c_) {
        aj = c_;
        ai = c_ + diff;
      }
    } else {
      double quad = 2.0 - 2.0 * q_ij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_) {
        if (ai > c_) {
          ai = c_;
          aj = sum - c_;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c_) {
        if (aj > c_) {
          aj = c_;
          ai = sum - c_;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }

    const double d_ai = ai - old_ai;
    const double d_aj = aj - old_aj;
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      grad_[t] += q(i, t, k_i_) * d_ai + q(j, t, k_j_) * d_aj;
    }
  }

  double intercept() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      const double yg = sign(t) * grad_[t];
      if (alpha_[t] >= c_) {
        if (sign(t) < 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else if (alpha_[t] <= 0.0) {
        if (sign(t) > 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
    return -rho;
  }

  SvrModel extract(double gamma) const {
    std::vector<Bitstring> svs;
    std::vector<double> coefs;
    for (std::size_t s = 0; s < l_; ++s) {
      const double beta = alpha_[s] - alpha_[s + l_];
      if (beta != 0.0) {
        svs.push_back(data_.inputs[s]);
        coefs.push_back(beta);
      }
    }
    return SvrModel(std::move(svs), std::move(coefs), intercept(), gamma, data_.features());
  }

  const TrainingSet& data_;
  std::size_t l_;
  double c_;
  double tol_;
  PackedRows rows_;
  std::vector<double> kernel_table_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  std::vector<double> k_i_;
  std::vector<double> k_j_;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected a real number, got '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

SvrModel::SvrModel(std::vector<Bitstring> support_vectors, std::vector<double> dual_coefs,
                   double intercept, double gamma, std::size_t features)
    : support_vectors_(std::move(support_vectors)),
      dual_coefs_(std::move(dual_coefs)),
      intercept_(intercept),
      gamma_(gamma),
      features_(features) {
  if (support_vectors_.size() != dual_coefs_.size()) {
    throw InvalidArgument("support vector and coefficient counts differ");
  }
  if (!(gamma_ > 0.0)) throw InvalidArgument("kernel gamma must be positive");
  for (const auto& sv : support_vectors_) {
    if (sv.size() != features_) throw InvalidArgument("support vector has wrong length");
  }
}

double SvrModel::predict(const Bitstring& x) const {
  if (x.size() != features_) {
    throw InvalidArgument("input has " + std::to_string(x.size()) + " features, model expects " +
                          std::to_string(features_));
  }
  double sum = 0.0;
  const auto bits = x.bits();
  for (std::size_t s = 0; s < support_vectors_.size(); ++s) {
    const auto sv = support_vectors_[s].bits();
    unsigned dist = 0;
    for (std::size_t i = 0; i < features_; ++i) dist += sv[i] != bits[i];
    sum += dual_coefs_[s] * std::exp(-gamma_ * static_cast<double>(dist));
  }
  return sum + intercept_;
}

SvrModel SvrModel::with_gamma(double gamma) const {
  return SvrModel(support_vectors_, dual_coefs_, intercept_, gamma, features_);
}

// Text layout, one item per line:
//   gaexplain-svr 1
//   gamma <real>
//   intercept <real>
//   features <d>
//   support_vectors <m>
//   <beta> <d characters of 0/1>      (m lines)
// Reals use 17 significant digits, which round-trips every double.
void SvrModel::save(std::ostream& out) const {
  out << "gaexplain-svr 1\n";
  out << "gamma " << format_double(gamma_) << '\n';
  out << "intercept " << format_double(intercept_) << '\n';
  out << "features " << features_ << '\n';
  out << "support_vectors " << support_vectors_.size() << '\n';
  for (std::size_t s = 0; s < support_vectors_.size(); ++s) {
    out << format_double(dual_coefs_[s]) << ' ' << support_vectors_[s].to_string() << '\n';
  }
}

SvrModel SvrModel::load(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  const auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, "unexpected end of model");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  const auto keyed = [&](std::string_view key) {
    const std::string& l = next_line();
    if (l.size() <= key.size() || l.compare(0, key.size(), key) != 0 || l[key.size()] != ' ') {
      throw ParseError(line_no, "expected '" + std::string(key) + " <value>'");
    }
    return l.substr(key.size() + 1);
  };
  const auto count = [&](const std::string& token) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError(line_no, "expected a count, got '" + token + "'");
    }
    return v;
  };

  if (next_line() != "gaexplain-svr 1") throw ParseError(line_no, "not a gaexplain SVR model");
  const double gamma = parse_double(keyed("gamma"), line_no);
  const double intercept = parse_double(keyed("intercept"), line_no);
  const std::size_t features = count(keyed("features"));
  const std::size_t m = count(keyed("support_vectors"));

  std::vector<Bitstring> svs;
  std::vector<double> coefs;
  svs.reserve(m);
  coefs.reserve(m);
  for (std::size_t s = 0; s < m; ++s) {
    const std::string& l = next_line();
    const auto space = l.find(' ');
    if (space == std::string::npos) throw ParseError(line_no, "expected '<beta> <bits>'");
    coefs.push_back(parse_double(std::string_view(l).substr(0, space), line_no));
    try {
      svs.push_back(Bitstring::parse(std::string_view(l).substr(space + 1)));
    } catch (const InvalidArgument& e) {
      throw ParseError(line_no, e.what());
    }
    if (svs.back().size() != features) throw ParseError(line_no, "support vector length mismatch");
  }
  try {
    return SvrModel(std::move(svs), std::move(coefs), intercept, gamma, features);
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }
}

double gamma_scale(std::span<const Bitstring> inputs) {
  if (inputs.empty() || inputs.front().empty()) {
    throw DegenerateData("cannot derive kernel width from empty data");
  }
  const std::size_t d = inputs.front().size();
  std::size_t ones = 0;
  for (const auto& row : inputs) {
    if (row.size() != d) throw InvalidArgument("training rows differ in length");
    ones += row.count_ones();
  }
  const double total = static_cast<double>(inputs.size() * d);
  const double p = static_cast<double>(ones) / total;
  const double variance = p * (1.0 - p);
  if (!(variance > 0.0)) throw DegenerateData("training inputs have zero variance");
  return 1.0 / (static_cast<double>(d) * variance);
}

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma) {
  if (u.size() != v.size()) throw InvalidArgument("kernel arguments differ in length");
  if (!(gamma > 0.0)) throw InvalidArgument("kernel gamma must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double diff = u[i] - v[i];
    sq += diff * diff;
  }
  return std::exp(-gamma * sq);
}

SvrFit train_svr(const TrainingSet& data, const SvrHyperParams& params) {
  params.validate();
  if (data.inputs.size() != data.targets.size()) {
    throw InvalidArgument("input and target counts differ");
  }
  if (data.rows() < 2) throw DegenerateData("SVR training needs at least 2 rows");
  for (double y : data.targets) {
    if (!std::isfinite(y)) throw DegenerateData("training targets must be finite");
  }
  const double gamma =
      params.gamma_mode == GammaMode::Scale ? gamma_scale(data.inputs) : params.gamma;
  for (const auto& row : data.inputs) {
    if (row.size() != data.features()) throw InvalidArgument("training rows differ in length");
  }

  std::size_t budget = params.max_iterations == 0 ? 10 * data.rows() : params.max_iterations;
  budget = std::min(budget, SvrHyperParams::kMaxIterationCap);

  return SmoSolver(data, params, gamma).solve(budget, gamma);
}

}  // namespace gaexplain
