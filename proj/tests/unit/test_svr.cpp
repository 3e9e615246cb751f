#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"
#include "qp_oracle.hpp"
#include "rng.hpp"
#include "svr.hpp"

namespace gaexplain {
namespace {

std::vector<std::vector<double>> as_reals(const std::vector<Bitstring>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& b : rows) out.emplace_back(b.bits().begin(), b.bits().end());
  return out;
}

TrainingSet random_set(RngStream& rng, std::size_t rows, std::size_t n) {
  TrainingSet d;
  for (std::size_t r = 0; r < rows; ++r) {
    d.inputs.push_back(random_bitstring(rng, n));
    d.targets.push_back(rng.unit() * 10.0);
  }
  return d;
}

// ---- gamma and kernel -------------------------------------------------------------

TEST(GammaScale, HalfOnesGiveFourOverN) {
  const std::vector<Bitstring> x{Bitstring::parse("0101010101"), Bitstring::parse("1010101010")};
  EXPECT_NEAR(gamma_scale(x), 1.0 / (10 * 0.25), 1e-15);
  std::vector<Bitstring> wide(4);
  for (std::size_t r = 0; r < 4; ++r) {
    Bitstring b(100);
    for (std::size_t i = 0; i < 100; ++i) b.set(i, (i + r) % 2 == 0);
    wide[r] = b;
  }
  EXPECT_NEAR(gamma_scale(wide), 0.04, 1e-15);
}

TEST(GammaScale, ConstantOrEmptyInputsAreDegenerate) {
  const std::vector<Bitstring> zeros(5, Bitstring(8));
  EXPECT_THROW(gamma_scale(zeros), DegenerateData);
  EXPECT_THROW(gamma_scale(std::vector<Bitstring>{}), DegenerateData);
}

TEST(GammaScale, AgreesWithTwoPassVariance) {
  RngStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 3 + rng.below(40);
    const std::size_t n = 2 + rng.below(60);
    std::vector<Bitstring> x;
    for (std::size_t r = 0; r < rows; ++r) x.push_back(random_bitstring(rng, n));
    double mean = 0;
    for (const auto& b : x) for (auto v : b.bits()) mean += v;
    mean /= static_cast<double>(rows * n);
    double var = 0;
    for (const auto& b : x) for (auto v : b.bits()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(rows * n);
    if (var == 0.0) continue;
    const double expected = 1.0 / (static_cast<double>(n) * var);
    EXPECT_NEAR(gamma_scale(x), expected, 1e-12 * expected);
  }
}

TEST(RbfKernel, Examples) {
  const std::vector<double> u{1, 0, 1, 1};
  const std::vector<double> v{0, 0, 1, 0};
  EXPECT_EQ(rbf_kernel(u, u, 0.7), 1.0);
  EXPECT_NEAR(rbf_kernel(u, v, 1.0), 0.1353352832366127, 1e-15);
  EXPECT_EQ(rbf_kernel(u, v, 0.3), rbf_kernel(v, u, 0.3));
  EXPECT_THROW(rbf_kernel(u, std::vector<double>{1, 0}, 1.0), InvalidArgument);
  EXPECT_THROW(rbf_kernel(u, v, 0.0), InvalidArgument);
}

// ---- training ---------------------------------------------------------------------

TEST(TrainSvr, ConstantTargetsGiveFlatModel) {
  RngStream rng(2);
  auto d = random_set(rng, 25, 8);
  std::fill(d.targets.begin(), d.targets.end(), 3.5);
  const auto fit = train_svr(d);
  EXPECT_TRUE(fit.converged);
  EXPECT_TRUE(fit.model.support_vectors().empty());
  EXPECT_NEAR(fit.model.intercept(), 3.5, 1e-12);
  EXPECT_NEAR(fit.model.predict(random_bitstring(rng, 8)), 3.5, 1e-12);
}

TEST(TrainSvr, TargetsInsideTubeNeedNoSupportVectors) {
  RngStream rng(3);
  auto d = random_set(rng, 30, 6);
  for (auto& y : d.targets) y = 2.0 + 0.09 * (2.0 * rng.unit() - 1.0);
  SvrHyperParams p;
  p.epsilon = 0.1;
  const auto fit = train_svr(d, p);
  EXPECT_TRUE(fit.model.support_vectors().empty());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    EXPECT_LE(std::abs(fit.model.predict(d.inputs[i]) - d.targets[i]), 0.1 + 1e-9);
  }
}

TEST(TrainSvr, MatchesIndependentQpSolver) {
  RngStream rng(99);
  double worst = 0;
  for (int set = 0; set < 20; ++set) {
    const std::size_t rows = 5 + rng.below(26);
    const std::size_t n = 2 + rng.below(9);
    const auto d = random_set(rng, rows, n);
    const auto fit = train_svr(d);
    ASSERT_TRUE(fit.converged);
    const auto sol = testing::solve_svr_dual(testing::rbf_gram(as_reals(d.inputs), fit.model.gamma()),
                                             d.targets, 1.0, 0.1);
    for (std::size_t i = 0; i < rows; ++i) {
      worst = std::max(worst, std::abs(fit.model.predict(d.inputs[i]) - sol.predictions[i]));
    }
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(TrainSvr, DualFeasibility) {
  RngStream rng(7);
  for (double c : {0.5, 1.0, 4.0}) {
    const auto d = random_set(rng, 60, 12);
    SvrHyperParams p;
    p.c = c;
    const auto fit = train_svr(d, p);
    const auto beta = fit.model.dual_coefs();
    const double sum = std::accumulate(beta.begin(), beta.end(), 0.0);
    EXPECT_LE(std::abs(sum), 1e-9 * c * static_cast<double>(d.rows()));
    for (double b : beta) {
      EXPECT_LE(std::abs(b), c + 1e-12);
      EXPECT_NE(b, 0.0);
    }
  }
}

TEST(TrainSvr, PermutationInvariantPredictions) {
  RngStream rng(11);
  const auto d = random_set(rng, 40, 10);
  SvrHyperParams p;
  p.tolerance = 1e-9;
  p.max_iterations = SvrHyperParams::kMaxIterationCap;
  const auto fit = train_svr(d, p);

  std::vector<std::size_t> order(d.rows());
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::rotate(order.begin(), order.begin() + 13, order.end());
  TrainingSet shuffled;
  for (auto i : order) {
    shuffled.inputs.push_back(d.inputs[i]);
    shuffled.targets.push_back(d.targets[i]);
  }
  const auto refit = train_svr(shuffled, p);
  for (int probe = 0; probe < 50; ++probe) {
    const auto x = random_bitstring(rng, 10);
    EXPECT_NEAR(fit.model.predict(x), refit.model.predict(x), 1e-6);
  }
}

TEST(TrainSvr, FixedGammaPerturbationIsContinuous) {
  RngStream rng(13);
  const auto d = random_set(rng, 30, 8);
  SvrHyperParams p;
  p.gamma_mode = GammaMode::Fixed;
  p.gamma = 0.2;
  p.tolerance = 1e-10;
  p.max_iterations = SvrHyperParams::kMaxIterationCap;
  const auto a = train_svr(d, p);
  p.gamma = 0.2 + 1e-9;
  const auto b = train_svr(d, p);
  for (int probe = 0; probe < 30; ++probe) {
    const auto x = random_bitstring(rng, 8);
    EXPECT_NEAR(a.model.predict(x), b.model.predict(x), 1e-6);
  }
}

TEST(TrainSvr, DeterministicForSameInput) {
  RngStream rng(17);
  const auto d = random_set(rng, 50, 16);
  const auto a = train_svr(d);
  const auto b = train_svr(d);
  ASSERT_EQ(a.model.dual_coefs().size(), b.model.dual_coefs().size());
  for (std::size_t i = 0; i < a.model.dual_coefs().size(); ++i) {
    EXPECT_EQ(a.model.dual_coefs()[i], b.model.dual_coefs()[i]);
  }
  EXPECT_EQ(a.model.intercept(), b.model.intercept());
}

TEST(TrainSvr, IterationBudgetIsReported) {
  RngStream rng(19);
  const auto d = random_set(rng, 40, 10);
  SvrHyperParams p;
  p.max_iterations = 3;
  const auto fit = train_svr(d, p);
  EXPECT_FALSE(fit.converged);
  EXPECT_EQ(fit.iterations, 3u);
  EXPECT_GT(fit.kkt_gap, p.tolerance);
}

TEST(TrainSvr, RejectsBadInput) {
  RngStream rng(23);
  auto d = random_set(rng, 10, 5);
  TrainingSet one{{d.inputs[0]}, {d.targets[0]}};
  EXPECT_THROW(train_svr(one), DegenerateData);
  auto constant = d;
  std::fill(constant.inputs.begin(), constant.inputs.end(), Bitstring(5));
  EXPECT_THROW(train_svr(constant), DegenerateData);
  auto nan = d;
  nan.targets[2] = std::nan("");
  EXPECT_THROW(train_svr(nan), DegenerateData);
  auto ragged = d;
  ragged.inputs[4] = Bitstring(6);
  EXPECT_THROW(train_svr(ragged), InvalidArgument);
  auto short_targets = d;
  short_targets.targets.pop_back();
  EXPECT_THROW(train_svr(short_targets), InvalidArgument);
  SvrHyperParams p;
  p.c = 0;
  EXPECT_THROW(train_svr(d, p), ConfigError);
}

// ---- model ------------------------------------------------------------------------

TEST(SvrModel, PredictMatchesDefinition) {
  const std::vector<Bitstring> svs{Bitstring::parse("110"), Bitstring::parse("001")};
  const SvrModel m(svs, {0.5, -0.25}, 1.5, 0.3, 3);
  const auto x = Bitstring::parse("100");
  const double expected = 0.5 * std::exp(-0.3 * 1) - 0.25 * std::exp(-0.3 * 2) + 1.5;
  EXPECT_NEAR(m.predict(x), expected, 1e-15);
  EXPECT_THROW(m.predict(Bitstring(4)), InvalidArgument);
  EXPECT_NEAR(m.with_gamma(0.6).predict(x),
              0.5 * std::exp(-0.6) - 0.25 * std::exp(-1.2) + 1.5, 1e-15);
}

TEST(SvrModel, SaveLoadRoundTripIsBitExact) {
  RngStream rng(29);
  const auto d = random_set(rng, 40, 12);
  const auto fit = train_svr(d);
  std::stringstream buf;
  fit.model.save(buf);
  const auto loaded = SvrModel::load(buf);
  EXPECT_EQ(loaded.gamma(), fit.model.gamma());
  EXPECT_EQ(loaded.intercept(), fit.model.intercept());
  ASSERT_EQ(loaded.support_vectors().size(), fit.model.support_vectors().size());
  for (int probe = 0; probe < 50; ++probe) {
    const auto x = random_bitstring(rng, 12);
    EXPECT_EQ(loaded.predict(x), fit.model.predict(x));
  }
}

TEST(SvrModel, LoadRejectsMalformedText) {
  std::istringstream wrong_magic("svm 3\n");
  EXPECT_THROW(SvrModel::load(wrong_magic), ParseError);
  std::istringstream truncated(
      "gaexplain-svr 1\ngamma 0.5\nintercept 1\nfeatures 3\nsupport_vectors 2\n0.5 101\n");
  EXPECT_THROW(SvrModel::load(truncated), ParseError);
  std::istringstream bad_bits(
      "gaexplain-svr 1\ngamma 0.5\nintercept 1\nfeatures 3\nsupport_vectors 1\n0.5 1x1\n");
  EXPECT_THROW(SvrModel::load(bad_bits), ParseError);
}

}  // namespace
}  // namespace gaexplain
