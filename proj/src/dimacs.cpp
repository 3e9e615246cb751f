#include <charconv>
#include <istream>
#include <sstream>

#include "errors.hpp"
#include "problems.hpp"

namespace gaexplain {

namespace {

long long parse_int(std::string_view token, std::size_t line) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::size_t line_no = 0;
  std::size_t clause_start_line = 0;
  Clause current;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB trailer
    if (lead == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate problem header");
      std::istringstream header(line.substr(first));
      std::string p, fmt, vars, clauses, extra;
      header >> p >> fmt >> vars >> clauses;
      if (p != "p" || fmt != "cnf" || clauses.empty() || (header >> extra)) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      const long long v = parse_int(vars, line_no);
      const long long c = parse_int(clauses, line_no);
      if (v < 0 || c < 0) throw ParseError(line_no, "header counts must be non-negative");
      formula.num_vars = static_cast<std::size_t>(v);
      declared_clauses = static_cast<std::size_t>(c);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause data before 'p cnf' header");

    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const long long lit = parse_int(token, line_no);
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        formula.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > static_cast<long long>(formula.num_vars)) {
        throw ParseError(line_no, "literal " + token + " out of range for " +
                                      std::to_string(formula.num_vars) + " variables");
      }
      if (current.empty()) clause_start_line = line_no;
      current.push_back({static_cast<std::uint32_t>(var), lit < 0});
    }
  }

  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(clause_start_line, "clause not terminated by 0");
  if (formula.clauses.size() != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) +
                                  " clauses, found " + std::to_string(formula.clauses.size()));
  }
  return formula;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause) {
      out << (lit.negated ? "-" : "") << lit.var << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

}  // namespace gaexplain
