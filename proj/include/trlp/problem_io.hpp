#pragma once

// Problem ingestion.
//
// Coordinate format (ASCII, '#' starts a comment, blank lines ignored):
//
//   m n                 dimensions, both >= 1
//   k                   number of triplets
//   row col value       k lines, zero-based indices; duplicates are summed
//   b_0 ... b_{m-1}     m lines, one value each
//   c_0 ... c_{n-1}     n lines, one value each
//
// MPS: the free/fixed subset with NAME, ROWS (N, L, G, E), COLUMNS, RHS,
// BOUNDS (UP, LO, FX, FR, PL) and ENDATA. RANGES, OBJSENSE and the
// MI/BV/LI/UI/SC bound types are rejected with UnsupportedFeatureError.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trlp/lp_model.hpp"

namespace trlp {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct CoordinateLP {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Triplet> triplets;
  Vector b;
  Vector c;
  std::string name;
};

// Throws ParseError with the offending line number.
CoordinateLP parse_coordinate(std::string_view text, std::string name = {});

StandardFormLP densify(const CoordinateLP& coo);

StandardFormLP read_coordinate_lp(std::string_view text, std::string name = {});
StandardFormLP read_coordinate_lp(std::istream& in, std::string name = {});

// Emits every nonzero of A in row-major order, values with 17 significant
// digits so that reading the output back reproduces lp exactly.
void write_coordinate_lp(std::ostream& out, const StandardFormLP& lp);
std::string write_coordinate_lp(const StandardFormLP& lp);

enum class RowType { less_equal, equal, greater_equal };

struct GeneralRow {
  std::string name;
  RowType type = RowType::equal;
  std::vector<std::pair<std::size_t, double>> coefficients;  // (variable, value)
  double rhs = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct GeneralFormLP {
  std::string name;
  std::vector<std::string> variable_names;
  Vector objective;                // per variable
  double objective_constant = 0.0; // minus the RHS entry of the objective row
  std::vector<GeneralRow> rows;
  Vector lower;                    // default 0
  Vector upper;                    // default +inf
};

GeneralFormLP read_mps(std::string_view text);
GeneralFormLP read_mps(std::istream& in);

// How one general-form variable is expressed in standard-form columns.
struct VariableMapping {
  enum class Kind { shifted, split };
  Kind kind = Kind::shifted;
  std::size_t column = 0;           // x = lower + x[column]   or   x[column] - x[negative_column]
  std::size_t negative_column = 0;  // split only
  double lower = 0.0;
};

struct StandardFormConversion {
  StandardFormLP lp;
  std::vector<VariableMapping> variables;
  double objective_offset = 0.0;  // general objective = c^T x + objective_offset
  std::size_t raw_rows = 0;
  std::size_t raw_cols = 0;

  Vector original_solution(std::span<const double> x) const;
  double original_objective(std::span<const double> x) const;
};

// Shifts finite lower bounds to zero, splits free variables, adds one slack
// (or surplus) column per inequality and one row plus slack per finite upper
// bound. Throws InvalidArgument naming the variable when a variable has an
// infinite lower bound but a finite upper bound, or empty bounds.
StandardFormConversion to_standard_form(const GeneralFormLP& g);

// b_i += u_i * eps with u_i = Rng(seed).uniform() drawn in index order; A and
// c untouched. eps == 0 returns an identical copy.
StandardFormLP inject_noise(const StandardFormLP& lp, double eps, std::uint64_t seed);

}  // namespace trlp
