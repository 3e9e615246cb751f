#include <gtest/gtest.h>

#include "config.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "temp_dir.hpp"

namespace gaexplain {
namespace {

TEST(TrainRange, ParseAndLabel) {
  EXPECT_EQ(TrainRange::parse("first").kind, TrainRange::Kind::FirstGen);
  EXPECT_EQ(TrainRange::parse("all").kind, TrainRange::Kind::AllGens);
  const auto r = TrainRange::parse("10..40");
  EXPECT_EQ(r.kind, TrainRange::Kind::Range);
  EXPECT_EQ(r.bounds(100), (std::pair<std::size_t, std::size_t>{10, 40}));
  EXPECT_EQ(r.label(), "10..40");
  EXPECT_EQ(TrainRange::parse("all").bounds(100), (std::pair<std::size_t, std::size_t>{0, 99}));
  EXPECT_EQ(TrainRange::parse("first").bounds(100), (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_THROW(TrainRange::parse("40..10"), ConfigError);
  EXPECT_THROW(TrainRange::parse("some"), ConfigError);
  EXPECT_THROW(TrainRange::parse("1..x"), ConfigError);
}

TEST(ExperimentConfig, DefaultsValidate) {
  const ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.ga.pop_size, 100u);
  EXPECT_EQ(c.ga.max_generations, 100u);
  EXPECT_EQ(c.ga.tournament_size, 5u);
  EXPECT_DOUBLE_EQ(c.ga.mutation_rate, 0.01);
  EXPECT_DOUBLE_EQ(c.ga.crossover_rate, 0.95);
}

TEST(ExperimentConfig, JsonRoundTrip) {
  ExperimentConfig c;
  c.problem = ProblemKind::Trap;
  c.ga.genome_length = 50;
  c.ga.seed = 42;
  c.ga.schedule = EvalSchedule::alternate(4);
  c.train = {TrainRange::parse("first"), TrainRange::parse("3..9")};
  c.repeats = 3;
  c.trap.f_low = 3.5;
  c.svr.gamma_mode = GammaMode::Fixed;
  c.svr.gamma = 0.125;
  c.cnf_path = "f.cnf";
  const auto again = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(again.to_json(), c.to_json());
  EXPECT_EQ(again.train, c.train);
  EXPECT_EQ(again.ga.schedule.period, 4u);
  EXPECT_EQ(again.svr.gamma, 0.125);
  EXPECT_EQ(again.cnf_path, c.cnf_path);
}

TEST(ExperimentConfig, SetOverrides) {
  ExperimentConfig c;
  c.set("problem", "checkerboard2d");
  c.set("n", "64");
  c.set("mut-rate", "0.02");
  c.set("train", "first,all");
  c.set("alternate-period", "5");
  c.set("out", "results");
  EXPECT_EQ(c.problem, ProblemKind::Checkerboard2D);
  EXPECT_EQ(c.ga.genome_length, 64u);
  EXPECT_DOUBLE_EQ(c.ga.mutation_rate, 0.02);
  ASSERT_EQ(c.train.size(), 2u);
  EXPECT_EQ(c.train[0].kind, TrainRange::Kind::FirstGen);
  EXPECT_EQ(c.ga.schedule.mode, EvalSchedule::Mode::Alternate);
  EXPECT_EQ(c.out_dir, "results");
  EXPECT_NO_THROW(c.validate());
  EXPECT_THROW(c.set("colour", "red"), ConfigError);
  EXPECT_THROW(c.set("pop", "-3"), ConfigError);
  EXPECT_THROW(c.set("pop", "ten"), ConfigError);
  EXPECT_THROW(c.set("problem", "knapsack"), ConfigError);
}

TEST(ExperimentConfig, FromJsonRejectsMalformed) {
  EXPECT_THROW(ExperimentConfig::from_json("{"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json("[1]"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(R"({"svr": {"kernel": "linear"}})"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(R"({"mut_rate": "high"})"), ConfigError);
}

TEST(ExperimentConfig, ValidationCatchesEachViolation) {
  const auto invalid = [](const char* key, const char* value) {
    ExperimentConfig c;
    c.set(key, value);
    EXPECT_THROW(c.validate(), ConfigError) << key << "=" << value;
  };
  invalid("mut_rate", "1.5");
  invalid("xover_rate", "-0.5");
  invalid("tournament", "1");
  invalid("tournament", "500");
  invalid("elites", "100");
  invalid("repeats", "0");
  invalid("train", "50..150");

  ExperimentConfig board;
  board.set("problem", "checkerboard2d");
  board.set("n", "99");
  EXPECT_THROW(board.validate(), ConfigError);
  board.set("n", "4");
  EXPECT_THROW(board.validate(), ConfigError);
  board.set("n", "100");
  EXPECT_NO_THROW(board.validate());

  ExperimentConfig trap;
  trap.set("problem", "trap5");
  trap.set("n", "98");
  EXPECT_THROW(trap.validate(), ConfigError);

  ExperimentConfig svr;
  svr.svr.c = -1;
  EXPECT_THROW(svr.validate(), ConfigError);
}

TEST(ExperimentConfig, BuildsEveryProblem) {
  ExperimentConfig c;
  c.ga.genome_length = 25;
  for (const auto* name : {"checkerboard1d", "checkerboard2d", "trap5", "maxsat"}) {
    c.set("problem", name);
    const auto p = c.build_problem();
    EXPECT_EQ(p.genome_length(), 25u) << name;
    EXPECT_EQ(p.kind(), parse_problem_kind(name));
  }
  // A generated formula depends only on its seed.
  c.set("problem", "maxsat");
  const auto x = Bitstring::parse("0110101001011010110100101");
  EXPECT_EQ(c.build_problem().evaluate(x), c.build_problem().evaluate(x));
}

TEST(ExperimentConfig, CnfFileMustMatchN) {
  testing::TempDir dir;
  const auto path = dir.path() / "f.cnf";
  write_file_atomic(path, "p cnf 3 2\n1 -2 0\n2 3 0\n");
  ExperimentConfig c;
  c.set("problem", "maxsat");
  c.cnf_path = path.string();
  c.ga.genome_length = 3;
  EXPECT_EQ(c.build_problem().evaluate(Bitstring::parse("010")), 1.0);
  c.ga.genome_length = 4;
  EXPECT_THROW(c.build_problem(), ConfigError);
}

}  // namespace
}  // namespace gaexplain
