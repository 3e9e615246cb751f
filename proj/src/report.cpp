#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace gaexplain {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double to_real(std::string_view token, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a real number, got '" + std::string(token) + "'");
  }
  return v;
}

std::size_t to_index(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return v;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00" so identical charts stay byte-identical.
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string probe_csv(const ProbeReport& report) {
  if (report.rows.empty()) throw InvalidArgument("probe report has no rows");
  std::string out(kProbeCsvHeader);
  out += '\n';
  for (const auto& row : report.rows) {
    out += std::to_string(row.variable_index);
    out += ',';
    out += row.seed_bit ? '1' : '0';
    out += ',';
    out += format_real(row.baseline);
    out += ',';
    out += format_real(row.flipped_prediction);
    out += ',';
    out += format_real(row.importance);
    out += '\n';
  }
  return out;
}

ProbeReport parse_probe_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kProbeCsvHeader) {
    throw ParseError(1, "expected header '" + std::string(kProbeCsvHeader) + "'");
  }
  ProbeReport report;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto fields = split(lines[l], ',');
    if (fields.size() != 5) throw ParseError(l + 1, "expected 5 fields");
    if (fields[1] != "0" && fields[1] != "1") throw ParseError(l + 1, "seed_bit must be 0 or 1");
    report.rows.push_back({to_index(fields[0], l + 1), fields[1] == "1", to_real(fields[2], l + 1),
                           to_real(fields[3], l + 1), to_real(fields[4], l + 1)});
  }
  if (report.rows.empty()) throw ParseError(1, "probe CSV has no data rows");
  return report;
}

std::string mean_csv(std::span<const double> mean) {
  if (mean.empty()) throw InvalidArgument("mean importance is empty");
  std::string out(kMeanCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < mean.size(); ++i) {
    out += std::to_string(i) + ',' + format_real(mean[i]) + '\n';
  }
  return out;
}

std::vector<double> read_importance_column(std::string_view csv_text) {
  const auto lines = lines_of(csv_text);
  if (lines.empty()) throw ParseError(1, "empty CSV");
  const auto header = split(lines.front(), ',');
  std::size_t column = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "importance" || header[c] == "mean_importance") column = c;
  }
  if (column == header.size()) {
    throw ParseError(1, "CSV has no 'importance' or 'mean_importance' column");
  }
  std::vector<double> values;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto fields = split(lines[l], ',');
    if (fields.size() != header.size()) {
      throw ParseError(l + 1, "expected " + std::to_string(header.size()) + " fields");
    }
    values.push_back(to_real(fields[column], l + 1));
  }
  if (values.empty()) throw ParseError(1, "CSV has no data rows");
  return values;
}

std::string svg_barchart(std::span<const double> values, std::string_view title) {
  if (values.empty()) throw InvalidArgument("bar chart needs at least one value");
  constexpr double kLeft = 70.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 50.0;
  constexpr double kBottom = 60.0;
  constexpr double kPlotHeight = 320.0;
  const double slot = values.size() > 100 ? 4.0 : 8.0;
  const double plot_width = std::max(400.0, slot * static_cast<double>(values.size()));
  const double width = kLeft + plot_width + kRight;
  const double height = kTop + kPlotHeight + kBottom;

  double extent = 0.0;
  for (double v : values) extent = std::max(extent, std::abs(v));
  if (!(extent > 0.0) || !std::isfinite(extent)) extent = 1.0;
  const double half = kPlotHeight / 2.0;
  const double axis_y = kTop + half;
  const double step = plot_width / static_cast<double>(values.size());
  const double bar_w = step * 0.8;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(width)
      << "\" height=\"" << fixed(height) << "\" viewBox=\"0 0 " << fixed(width) << ' '
      << fixed(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << fixed(width) << "\" height=\"" << fixed(height)
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fixed(width / 2) << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(title) << "</text>\n";

  svg << "<g class=\"bars\">\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::isfinite(values[i]) ? values[i] : 0.0;
    const double h = v / extent * half;
    const double x = kLeft + step * static_cast<double>(i) + (step - bar_w) / 2.0;
    const char* fill = v < 0.0 ? "#c0392b" : "#2e86c1";
    svg << "<path class=\"bar\" data-index=\"" << i << "\" fill=\"" << fill << "\" d=\"M"
        << fixed(x) << ' ' << fixed(axis_y) << " h" << fixed(bar_w) << " v" << fixed(-h) << " h"
        << fixed(-bar_w) << " Z\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line class=\"zero-axis\" x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(axis_y)
      << "\" x2=\"" << fixed(kLeft + plot_width) << "\" y2=\"" << fixed(axis_y) << "\"/>\n"
      << "<line class=\"y-axis\" x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\""
      << fixed(kLeft) << "\" y2=\"" << fixed(kTop + kPlotHeight) << "\"/>\n"
      << "</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const double tick_values[] = {extent, 0.0, -extent};
  const double tick_ys[] = {kTop, axis_y, kTop + kPlotHeight};
  for (int t = 0; t < 3; ++t) {
    svg << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(tick_ys[t] + 4)
        << "\" text-anchor=\"end\">" << tick(tick_values[t]) << "</text>\n";
  }
  const std::size_t label_every = values.size() > 20 ? 10 : 1;
  for (std::size_t i = 0; i < values.size(); i += label_every) {
    svg << "<text x=\"" << fixed(kLeft + step * (static_cast<double>(i) + 0.5)) << "\" y=\""
        << fixed(kTop + kPlotHeight + 16) << "\" text-anchor=\"middle\">" << i << "</text>\n";
  }
  svg << "<text x=\"" << fixed(kLeft + plot_width / 2) << "\" y=\"" << fixed(height - 14)
      << "\" text-anchor=\"middle\" font-size=\"13\">variable index</text>\n"
      << "<text x=\"18\" y=\"" << fixed(axis_y) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << fixed(axis_y) << ")\">importance</text>\n"
      << "</g>\n</svg>\n";
  return svg.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

void emit_csv(const ProbeReport& report, const std::filesystem::path& path) {
  write_file_atomic(path, probe_csv(report));
}

void emit_svg_barchart(std::span<const double> values, std::string_view title,
                       const std::filesystem::path& path) {
  write_file_atomic(path, svg_barchart(values, title));
}

}  // namespace gaexplain
