#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "explain.hpp"
#include "problems.hpp"
#include "rng.hpp"

namespace gaexplain {
namespace {

double ones(const Bitstring& x) { return static_cast<double>(x.count_ones()); }

TEST(Probe, ConstantPredictorGivesZeros) {
  const auto v = probe_solution(Bitstring::parse("10110"), [](const Bitstring&) { return 4.0; });
  EXPECT_EQ(v.baseline, 4.0);
  EXPECT_EQ(v.values, std::vector<double>(5, 0.0));
}

TEST(Probe, SumPredictorSignsFollowSeedBits) {
  const auto v = probe_solution(Bitstring::parse("1010"), ones);
  EXPECT_EQ(v.values, (std::vector<double>{-1, 1, -1, 1}));
  EXPECT_EQ(v.flipped, (std::vector<double>{1, 3, 1, 3}));
  EXPECT_EQ(v.baseline, 2.0);
}

TEST(Probe, AlternatingCheckerboardHasWeakerEnds) {
  const auto seed = Bitstring::parse("0101010101");
  const auto v = probe_solution(seed, eval_checkerboard_1d);
  for (std::size_t i = 0; i < 10; ++i) {
    const double expected = (i == 0 || i == 9) ? 1.0 : 2.0;
    EXPECT_EQ(std::abs(v.values[i]), expected) << i;
    EXPECT_EQ(v.values[i] < 0, seed[i]) << i;
  }
}

TEST(Probe, CallsPredictorOncePerFlipPlusBaseline) {
  const auto seed = Bitstring::parse("0110100111");
  std::vector<Bitstring> seen;
  const auto v = probe_solution(seed, [&](const Bitstring& x) {
    seen.push_back(x);
    return ones(x);
  });
  ASSERT_EQ(seen.size(), 11u);
  EXPECT_EQ(seen[0], seed);
  for (std::size_t i = 0; i < 10; ++i) {
    // Each probe differs from the seed in exactly the probed bit.
    EXPECT_EQ(seen[i + 1], seed.flipped(i)) << i;
  }
  EXPECT_EQ(v.seed, seed);
}

TEST(Probe, PredictorFailureNamesVariable) {
  const auto seed = Bitstring::parse("0000");
  try {
    probe_solution(seed, [](const Bitstring& x) -> double {
      if (x[2]) throw std::runtime_error("boom");
      return 0.0;
    });
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("variable 2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
  EXPECT_THROW(probe_solution(Bitstring(), ones), InvalidArgument);
  EXPECT_THROW(probe_solution(seed, Predictor{}), InvalidArgument);
}

TEST(Probe, TrueFitnessOracleOnAllProblems) {
  // With the real fitness as predictor, importance is the signed fitness drop.
  RngStream rng(41);
  const auto formula = std::make_shared<CnfFormula>(generate_random_3sat(rng, 15, 60));
  const std::vector<Problem> problems{Problem::checkerboard_1d(20), Problem::checkerboard_2d(16),
                                      Problem::trap(20), Problem::maxsat(formula)};
  for (const auto& problem : problems) {
    for (int s = 0; s < 20; ++s) {
      const auto seed = random_bitstring(rng, problem.genome_length());
      const auto f = [&](const Bitstring& x) { return problem.evaluate(x); };
      const auto v = probe_solution(seed, f);
      const double base = problem.evaluate(seed);
      for (std::size_t i = 0; i < seed.size(); ++i) {
        const double mag = std::abs(base - problem.evaluate(seed.flipped(i)));
        EXPECT_EQ(v.values[i], seed[i] ? -mag : mag);
      }
    }
  }
}

TEST(Report, RowsMirrorVector) {
  const auto v = probe_solution(Bitstring::parse("101"), ones);
  const auto r = make_report(v, "trap5", "all", 7);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[1].variable_index, 1u);
  EXPECT_FALSE(r.rows[1].seed_bit);
  EXPECT_EQ(r.rows[1].flipped_prediction, 3.0);
  EXPECT_EQ(r.rows[2].importance, -1.0);
  EXPECT_EQ(r.run_seed, 7u);
}

TEST(Aggregate, MeanAndRank) {
  const std::vector<std::vector<double>> runs{{1, -2, 3}, {3, -4, 5}};
  EXPECT_EQ(mean_importance(std::span<const std::vector<double>>(runs)),
            (std::vector<double>{2, -3, 4}));
  const std::vector<double> mixed{0.5, -3.0, 3.0, 0.0};
  const auto ranked = rank_variables(mixed);
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0], (std::pair<std::size_t, double>{1, 3.0}));
  EXPECT_EQ(ranked[1], (std::pair<std::size_t, double>{2, 3.0}));
  EXPECT_EQ(ranked[2].first, 0u);
  EXPECT_EQ(ranked[3].first, 3u);
  const std::vector<std::vector<double>> ragged{{1, 2}, {1}};
  EXPECT_THROW(mean_importance(std::span<const std::vector<double>>(ragged)), InvalidArgument);
  EXPECT_THROW(mean_importance(std::span<const std::vector<double>>()), InvalidArgument);
}

TEST(Aggregate, LinearPredictorRanksLargestWeightFirst) {
  const auto f = [](const Bitstring& x) { return 3.0 * x[0] + x[1]; };
  const auto v = probe_solution(Bitstring::parse("000"), f);
  EXPECT_EQ(v.values, (std::vector<double>{3, 1, 0}));
  EXPECT_EQ(rank_variables(v.values).front().first, 0u);
}

TEST(Metrics, SignAlternation) {
  const std::vector<double> alt{1, -1, 2, -0.5};
  EXPECT_EQ(adjacent_sign_alternation(alt), 1.0);
  const std::vector<double> same{1, 2, 3};
  EXPECT_EQ(adjacent_sign_alternation(same), 0.0);
  const std::vector<double> half{1, -1, -1};
  EXPECT_EQ(adjacent_sign_alternation(half), 0.5);
  EXPECT_EQ(adjacent_sign_alternation(std::vector<double>{1}), 0.0);
  // Below the floor a value has no sign.
  EXPECT_NEAR(adjacent_sign_alternation(alt, 0.75), 2.0 / 3.0, 1e-15);  // +, -, +, none
  EXPECT_EQ(resolved_sign(0.0, 0.0), 0);
  EXPECT_EQ(resolved_sign(-0.2, 0.1), -1);
  EXPECT_EQ(resolved_sign(0.05, 0.1), 0);
}

TEST(Metrics, UniformBlocks) {
  const std::vector<double> v{1, 1, -1, -1, 1, -1};
  EXPECT_NEAR(uniform_sign_blocks(v, 2), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(uniform_sign_blocks(v, 3), 0.0);
  EXPECT_THROW(uniform_sign_blocks(v, 4), InvalidArgument);
  EXPECT_THROW(uniform_sign_blocks(v, 0), InvalidArgument);
  const std::vector<double> zeros(4, 0.0);
  EXPECT_EQ(uniform_sign_blocks(zeros, 2), 0.0);
}

}  // namespace
}  // namespace gaexplain
