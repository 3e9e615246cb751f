#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "explain.hpp"

namespace gaexplain {

/// Header of the per-run probe CSV.
inline constexpr std::string_view kProbeCsvHeader =
    "variable_index,seed_bit,baseline,flipped_prediction,importance";
inline constexpr std::string_view kMeanCsvHeader = "variable_index,mean_importance";

/// %.17g, enough to round-trip any double.
std::string format_real(double v);

std::string probe_csv(const ProbeReport& report);
ProbeReport parse_probe_csv(std::string_view text);

std::string mean_csv(std::span<const double> mean);

/// Reads the importance column (`importance` or `mean_importance`) of either
/// CSV layout, in row order.
std::vector<double> read_importance_column(std::string_view csv_text);

/// Standalone SVG 1.1 bar chart, one `<path class="bar">` per variable with
/// positive values drawn above the zero axis.
std::string svg_barchart(std::span<const double> values, std::string_view title);

/// Writes via a sibling temporary file and rename, so readers never observe
/// a partial file. Throws IoError naming the path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

void emit_csv(const ProbeReport& report, const std::filesystem::path& path);
void emit_svg_barchart(std::span<const double> values, std::string_view title,
                       const std::filesystem::path& path);

}  // namespace gaexplain
