#include "problems.hpp"

#include <cmath>

#include "errors.hpp"

namespace gaexplain {

double eval_checkerboard_1d(const Bitstring& x) {
  if (x.size() < 2) throw InvalidArgument("1D checkerboard needs at least 2 bits");
  std::size_t differing = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[i] != x[i + 1]) ++differing;
  }
  return static_cast<double>(differing);
}

double eval_checkerboard_2d(const Bitstring& x, std::size_t side) {
  if (side < 3) throw InvalidArgument("2D checkerboard side must be at least 3");
  if (x.size() != side * side) {
    throw InvalidArgument("2D checkerboard genome has " + std::to_string(x.size()) +
                          " bits, expected " + std::to_string(side * side));
  }
  const auto cell = [&](std::size_t r, std::size_t c) { return x[r * side + c]; };
  std::size_t penalty = 0;
  for (std::size_t r = 1; r + 1 < side; ++r) {
    for (std::size_t c = 1; c + 1 < side; ++c) {
      const bool v = cell(r, c);
      penalty += (v == cell(r - 1, c)) + (v == cell(r + 1, c)) + (v == cell(r, c - 1)) +
                 (v == cell(r, c + 1));
    }
  }
  const std::size_t inner = side - 2;
  return static_cast<double>(4 * inner * inner) - static_cast<double>(penalty);
}

double trap_block(std::size_t ones, const TrapParams& params) {
  if (ones == params.k) return params.f_high;
  return params.f_low -
         static_cast<double>(ones) * params.f_low / static_cast<double>(params.k - 1);
}

namespace {

void validate_trap(std::size_t n, const TrapParams& p) {
  if (p.k < 2) throw InvalidArgument("trap block size must be at least 2");
  if (n == 0 || n % p.k != 0) {
    throw InvalidArgument("trap block size " + std::to_string(p.k) + " does not divide " +
                          std::to_string(n));
  }
  if (!(p.f_low >= 0.0) || !(p.f_high > p.f_low)) {
    throw InvalidArgument("trap requires f_high > f_low >= 0");
  }
}

}  // namespace

double eval_trap(const Bitstring& x, const TrapParams& params) {
  validate_trap(x.size(), params);
  double total = 0.0;
  for (std::size_t start = 0; start < x.size(); start += params.k) {
    std::size_t ones = 0;
    for (std::size_t i = start; i < start + params.k; ++i) ones += x[i];
    total += trap_block(ones, params);
  }
  return total;
}

double eval_maxsat(const Bitstring& x, const CnfFormula& formula) {
  if (x.size() != formula.num_vars) {
    throw InvalidArgument("assignment has " + std::to_string(x.size()) + " bits, formula has " +
                          std::to_string(formula.num_vars) + " variables");
  }
  std::size_t satisfied = 0;
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause) {
      if (x[lit.var - 1] != lit.negated) {
        ++satisfied;
        break;
      }
    }
  }
  return static_cast<double>(satisfied);
}

CnfFormula generate_random_3sat(RngStream& rng, std::size_t num_vars, std::size_t num_clauses) {
  if (num_vars < 3) throw InvalidArgument("random 3-SAT needs at least 3 variables");
  CnfFormula f;
  f.num_vars = num_vars;
  f.clauses.reserve(num_clauses);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    Clause clause;
    while (clause.size() < 3) {
      const auto var = static_cast<std::uint32_t>(rng.below(num_vars) + 1);
      bool seen = false;
      for (const auto& lit : clause) seen = seen || lit.var == var;
      if (!seen) clause.push_back({var, false});
    }
    for (auto& lit : clause) lit.negated = rng.bit();
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Checkerboard1D: return "checkerboard1d";
    case ProblemKind::Checkerboard2D: return "checkerboard2d";
    case ProblemKind::Trap: return "trap5";
    case ProblemKind::MaxSat: return "maxsat";
  }
  return "unknown";
}

Problem Problem::checkerboard_1d(std::size_t n) {
  if (n < 2) throw InvalidArgument("1D checkerboard needs n >= 2");
  return Problem(ProblemKind::Checkerboard1D, n);
}

Problem Problem::checkerboard_2d(std::size_t n) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n) {
    throw InvalidArgument("2D checkerboard n=" + std::to_string(n) + " is not a perfect square");
  }
  if (side < 3) throw InvalidArgument("2D checkerboard side must be at least 3");
  Problem p(ProblemKind::Checkerboard2D, n);
  p.side_ = side;
  return p;
}

Problem Problem::trap(std::size_t n, TrapParams params) {
  validate_trap(n, params);
  Problem p(ProblemKind::Trap, n);
  p.trap_ = params;
  return p;
}

Problem Problem::maxsat(std::shared_ptr<const CnfFormula> formula) {
  if (!formula || formula->num_vars == 0) {
    throw InvalidArgument("MAXSAT needs a formula with at least one variable");
  }
  Problem p(ProblemKind::MaxSat, formula->num_vars);
  p.formula_ = std::move(formula);
  return p;
}

double Problem::evaluate(const Bitstring& x) const {
  if (x.size() != n_) {
    throw InvalidArgument("genome has " + std::to_string(x.size()) + " bits, problem expects " +
                          std::to_string(n_));
  }
  switch (kind_) {
    case ProblemKind::Checkerboard1D: return eval_checkerboard_1d(x);
    case ProblemKind::Checkerboard2D: return eval_checkerboard_2d(x, side_);
    case ProblemKind::Trap: return eval_trap(x, trap_);
    case ProblemKind::MaxSat: return eval_maxsat(x, *formula_);
  }
  throw InvalidArgument("unknown problem kind");
}

}  // namespace gaexplain
