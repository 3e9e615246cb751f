#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace gaexplain {

struct Literal {
  std::uint32_t var;  // 1-based
  bool negated;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct TrapParams {
  std::size_t k = 5;
  double f_high = 5.0;
  double f_low = 4.0;
};

/// Number of adjacent pairs that differ. Requires n >= 2.
double eval_checkerboard_1d(const Bitstring& x);

/// Row-major s*s grid; 4(s-2)^2 minus the count of equal neighbour pairs
/// around each interior cell.
double eval_checkerboard_2d(const Bitstring& x, std::size_t side);

/// Deceptive trap over consecutive blocks of length k.
double eval_trap(const Bitstring& x, const TrapParams& params);

/// Score of a single block holding `ones` set bits.
double trap_block(std::size_t ones, const TrapParams& params);

/// Satisfied clause count; bit i assigns variable i+1.
double eval_maxsat(const Bitstring& x, const CnfFormula& formula);

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfFormula& formula);

/// Uniform random 3-CNF: three distinct variables per clause, each literal
/// negated with probability 1/2.
CnfFormula generate_random_3sat(RngStream& rng, std::size_t num_vars, std::size_t num_clauses);

enum class ProblemKind { Checkerboard1D, Checkerboard2D, Trap, MaxSat };

std::string_view to_string(ProblemKind kind);

/// A validated benchmark instance.
class Problem {
 public:
  static Problem checkerboard_1d(std::size_t n);
  static Problem checkerboard_2d(std::size_t n);
  static Problem trap(std::size_t n, TrapParams params = {});
  static Problem maxsat(std::shared_ptr<const CnfFormula> formula);

  ProblemKind kind() const noexcept { return kind_; }
  std::size_t genome_length() const noexcept { return n_; }
  std::size_t side() const noexcept { return side_; }
  const TrapParams& trap_params() const noexcept { return trap_; }
  const CnfFormula* formula() const noexcept { return formula_.get(); }

  /// Throws InvalidArgument on a genome of the wrong length.
  double evaluate(const Bitstring& x) const;

 private:
  Problem(ProblemKind kind, std::size_t n) : kind_(kind), n_(n) {}

  ProblemKind kind_;
  std::size_t n_;
  std::size_t side_ = 0;
  TrapParams trap_;
  std::shared_ptr<const CnfFormula> formula_;
};

}  // namespace gaexplain
