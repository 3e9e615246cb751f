#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

#include "errors.hpp"
#include "report.hpp"
#include "temp_dir.hpp"

namespace gaexplain {
namespace {

ProbeReport three_variable_report() {
  const auto v = probe_solution(Bitstring::parse("101"),
                                [](const Bitstring& x) { return 0.1 + 2.0 * x[0] - 1.0 / 3.0 * x[1]; });
  return make_report(v, "checkerboard1d", "first", 3);
}

// Vertical extent of each bar, in document order; negative means drawn upward.
std::vector<double> bar_heights(const std::string& svg) {
  static const std::regex bar(R"re(<path class="bar" data-index="(\d+)"[^>]* d="M[-\d.]+ [-\d.]+ h[-\d.]+ v([-\d.]+) )re");
  std::vector<double> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), bar); it != std::sregex_iterator(); ++it) {
    EXPECT_EQ(std::stoul((*it)[1].str()), out.size());
    out.push_back(std::stod((*it)[2].str()));
  }
  return out;
}

TEST(ProbeCsv, HeaderPlusOneLinePerVariable) {
  const auto text = probe_csv(three_variable_report());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.substr(0, kProbeCsvHeader.size()), kProbeCsvHeader);
  EXPECT_NE(text.find("\n0,1,"), std::string::npos);
}

TEST(ProbeCsv, RoundTripIsExact) {
  const auto report = three_variable_report();
  const auto parsed = parse_probe_csv(probe_csv(report));
  ASSERT_EQ(parsed.rows.size(), report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    EXPECT_EQ(parsed.rows[i].variable_index, report.rows[i].variable_index);
    EXPECT_EQ(parsed.rows[i].seed_bit, report.rows[i].seed_bit);
    EXPECT_EQ(parsed.rows[i].baseline, report.rows[i].baseline);
    EXPECT_EQ(parsed.rows[i].flipped_prediction, report.rows[i].flipped_prediction);
    EXPECT_EQ(parsed.rows[i].importance, report.rows[i].importance);
  }
  EXPECT_EQ(read_importance_column(probe_csv(report)),
            (std::vector<double>{report.rows[0].importance, report.rows[1].importance,
                                 report.rows[2].importance}));
}

TEST(ProbeCsv, Errors) {
  EXPECT_THROW(probe_csv(ProbeReport{}), InvalidArgument);
  EXPECT_THROW(parse_probe_csv("a,b\n1,2\n"), ParseError);
  EXPECT_THROW(parse_probe_csv(std::string(kProbeCsvHeader) + "\n0,2,1,1,0\n"), ParseError);
  EXPECT_THROW(parse_probe_csv(std::string(kProbeCsvHeader) + "\n0,1,1,x,0\n"), ParseError);
  EXPECT_THROW(read_importance_column("variable_index,other\n0,1\n"), ParseError);
}

TEST(MeanCsv, LayoutAndColumn) {
  const std::vector<double> mean{0.5, -0.25};
  const auto text = mean_csv(mean);
  EXPECT_EQ(text, std::string(kMeanCsvHeader) + "\n0,0.5\n1,-0.25\n");
  EXPECT_EQ(read_importance_column(text), mean);
}

TEST(SvgBarchart, OneBarPerValueWithDirection) {
  const std::vector<double> values{1.0, -2.0, 0.0, 0.5};
  const auto svg = svg_barchart(values, "a < b & c");
  const auto h = bar_heights(svg);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_LT(h[0], 0.0);
  EXPECT_GT(h[1], 0.0);
  EXPECT_EQ(h[2], 0.0);
  EXPECT_LT(h[3], 0.0);
  EXPECT_NEAR(h[1], -2.0 * h[0], 0.02);
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(svg.find("class=\"zero-axis\""), std::string::npos);
}

TEST(SvgBarchart, ZeroVectorHasFlatBars) {
  const std::vector<double> zeros(7, 0.0);
  const auto svg = svg_barchart(zeros, "zeros");
  const auto h = bar_heights(svg);
  ASSERT_EQ(h.size(), 7u);
  for (double v : h) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(svg.find("-0.00"), std::string::npos);
}

TEST(SvgBarchart, DeterministicAndRejectsEmpty) {
  const std::vector<double> v{0.3, -0.1, 2.0};
  EXPECT_EQ(svg_barchart(v, "t"), svg_barchart(v, "t"));
  EXPECT_THROW(svg_barchart(std::vector<double>{}, "t"), InvalidArgument);
}

TEST(Files, AtomicWriteAndErrors) {
  testing::TempDir dir;
  const auto path = dir.path() / "probe.csv";
  emit_csv(three_variable_report(), path);
  EXPECT_EQ(read_file(path), probe_csv(three_variable_report()));
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  EXPECT_THROW(write_file_atomic(dir.path() / "missing" / "x.csv", "x"), IoError);
  EXPECT_THROW(read_file(dir.path() / "absent.csv"), IoError);
}

}  // namespace
}  // namespace gaexplain
