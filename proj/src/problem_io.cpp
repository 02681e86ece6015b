#include "trlp/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "trlp/errors.hpp"
#include "trlp/random.hpp"

namespace trlp {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Calls visit(line_number, line) for every line, numbering from 1, with any
// trailing '\r' removed.
template <typename Visitor>
void for_each_line(std::string_view text, Visitor&& visit) {
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    visit(number, raw);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError(line, "expected a finite number, got '" + std::string(token) + "'");
  }
  return v;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Coordinate format

CoordinateLP parse_coordinate(std::string_view text, std::string name) {
  std::vector<Line> lines;
  for_each_line(text, [&](std::size_t number, std::string_view raw) {
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = split_whitespace(raw);
    if (!tokens.empty()) lines.push_back(Line{number, std::move(tokens)});
  });

  std::size_t cursor = 0;
  const std::size_t last_line = lines.empty() ? 1 : lines.back().number;
  auto next = [&](std::size_t expected_tokens, const char* what) -> const Line& {
    if (cursor >= lines.size()) {
      throw ParseError(last_line, std::string("unexpected end of input, expected ") + what);
    }
    const Line& l = lines[cursor++];
    if (l.tokens.size() != expected_tokens) {
      throw ParseError(l.number, std::string("expected ") + what);
    }
    return l;
  };

  CoordinateLP coo;
  coo.name = std::move(name);

  const Line& header = next(2, "dimension header 'm n'");
  coo.m = parse_index(header.tokens[0], header.number);
  coo.n = parse_index(header.tokens[1], header.number);
  if (coo.m == 0 || coo.n == 0) throw ParseError(header.number, "dimensions must be at least 1");

  const Line& count_line = next(1, "triplet count 'k'");
  const std::size_t k = parse_index(count_line.tokens[0], count_line.number);

  coo.triplets.reserve(k);
  for (std::size_t t = 0; t < k; ++t) {
    const Line& l = next(3, "triplet 'row col value'");
    Triplet tr{parse_index(l.tokens[0], l.number), parse_index(l.tokens[1], l.number),
               parse_double(l.tokens[2], l.number)};
    if (tr.row >= coo.m || tr.col >= coo.n) {
      throw ParseError(l.number, "triplet index (" + std::to_string(tr.row) + ", " +
                                     std::to_string(tr.col) + ") out of range");
    }
    coo.triplets.push_back(tr);
  }

  coo.b.reserve(coo.m);
  for (std::size_t i = 0; i < coo.m; ++i) {
    const Line& l = next(1, "one entry of b");
    coo.b.push_back(parse_double(l.tokens[0], l.number));
  }
  coo.c.reserve(coo.n);
  for (std::size_t j = 0; j < coo.n; ++j) {
    const Line& l = next(1, "one entry of c");
    coo.c.push_back(parse_double(l.tokens[0], l.number));
  }
  if (cursor != lines.size()) {
    throw ParseError(lines[cursor].number, "trailing data after the cost vector");
  }
  return coo;
}

StandardFormLP densify(const CoordinateLP& coo) {
  DenseMatrix a(coo.m, coo.n);
  for (const Triplet& t : coo.triplets) {
    if (t.row >= coo.m || t.col >= coo.n) throw InvalidArgument("densify: triplet out of range");
    a(t.row, t.col) += t.value;
  }
  StandardFormLP lp{std::move(a), coo.b, coo.c, coo.name};
  validate(lp);
  return lp;
}

StandardFormLP read_coordinate_lp(std::string_view text, std::string name) {
  return densify(parse_coordinate(text, std::move(name)));
}

StandardFormLP read_coordinate_lp(std::istream& in, std::string name) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return read_coordinate_lp(text, std::move(name));
}

namespace {

std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_coordinate_lp(std::ostream& out, const StandardFormLP& lp) {
  std::size_t nnz = 0;
  for (double v : lp.a.data()) nnz += v != 0.0;
  if (!lp.name.empty()) out << "# " << lp.name << '\n';
  out << lp.num_rows() << ' ' << lp.num_cols() << '\n' << nnz << '\n';
  for (std::size_t i = 0; i < lp.num_rows(); ++i)
    for (std::size_t j = 0; j < lp.num_cols(); ++j)
      if (lp.a(i, j) != 0.0) out << i << ' ' << j << ' ' << format_exact(lp.a(i, j)) << '\n';
  for (double v : lp.b) out << format_exact(v) << '\n';
  for (double v : lp.c) out << format_exact(v) << '\n';
}

std::string write_coordinate_lp(const StandardFormLP& lp) {
  std::ostringstream os;
  write_coordinate_lp(os, lp);
  return os.str();
}

// ---------------------------------------------------------------------------
// MPS

namespace {

enum class Section { none, name, rows, columns, rhs, bounds, done };

class MpsReader {
 public:
  GeneralFormLP run(std::string_view text) {
    for_each_line(text, [&](std::size_t number, std::string_view raw) {
      if (section_ == Section::done) return;
      line_ = number;
      if (raw.empty() || raw.front() == '*') return;
      auto tokens = split_whitespace(raw);
      if (tokens.empty()) return;
      if (!std::isspace(static_cast<unsigned char>(raw.front()))) {
        header(tokens);
      } else {
        record(tokens);
      }
    });
    if (section_ != Section::done) throw ParseError(line_, "missing ENDATA");
    if (!objective_row_) throw ParseError(line_, "no objective (N) row");
    return std::move(lp_);
  }

 private:
  void header(const std::vector<std::string_view>& t) {
    const std::string_view key = t[0];
    if (key == "NAME") {
      section_ = Section::name;
      if (t.size() > 1) lp_.name = std::string(t[1]);
    } else if (key == "ROWS") {
      section_ = Section::rows;
    } else if (key == "COLUMNS") {
      section_ = Section::columns;
    } else if (key == "RHS") {
      section_ = Section::rhs;
    } else if (key == "BOUNDS") {
      section_ = Section::bounds;
    } else if (key == "ENDATA") {
      section_ = Section::done;
    } else if (key == "RANGES" || key == "OBJSENSE" || key == "OBJSENCE") {
      throw UnsupportedFeatureError(std::string(key), "line " + std::to_string(line_) + ": MPS section " +
                                                          std::string(key) + " is not supported");
    } else {
      throw ParseError(line_, "unknown MPS section '" + std::string(key) + "'");
    }
  }

  void record(const std::vector<std::string_view>& t) {
    switch (section_) {
      case Section::rows: row_record(t); break;
      case Section::columns: column_record(t); break;
      case Section::rhs: rhs_record(t); break;
      case Section::bounds: bound_record(t); break;
      default: throw ParseError(line_, "data line outside of a section");
    }
  }

  void row_record(const std::vector<std::string_view>& t) {
    if (t.size() != 2) throw ParseError(line_, "ROWS entries need a type and a name");
    const std::string name(t[1]);
    if (row_index_.contains(name) || name == objective_name_) throw ParseError(line_, "duplicate row '" + name + "'");
    if (t[0] == "N") {
      // Only the first free row is the objective; later ones are dropped.
      if (!objective_row_) {
        objective_row_ = true;
        objective_name_ = name;
      } else {
        dropped_rows_.insert(name);
      }
      return;
    }
    GeneralRow row;
    row.name = name;
    if (t[0] == "L") row.type = RowType::less_equal;
    else if (t[0] == "G") row.type = RowType::greater_equal;
    else if (t[0] == "E") row.type = RowType::equal;
    else throw ParseError(line_, "unknown row type '" + std::string(t[0]) + "'");
    row_index_.emplace(name, lp_.rows.size());
    lp_.rows.push_back(std::move(row));
  }

  void column_record(const std::vector<std::string_view>& t) {
    if (t.size() >= 2 && t[1] == "'MARKER'") return;
    if (t.size() != 3 && t.size() != 5) throw ParseError(line_, "COLUMNS entries need 'col row value [row value]'");
    const std::string col(t[0]);
    auto [it, inserted] = column_index_.emplace(col, lp_.variable_names.size());
    if (inserted) {
      lp_.variable_names.push_back(col);
      lp_.objective.push_back(0.0);
      lp_.lower.push_back(0.0);
      lp_.upper.push_back(kInfinity);
    }
    const std::size_t var = it->second;
    for (std::size_t p = 1; p + 1 < t.size(); p += 2) {
      const std::string row(t[p]);
      const double value = parse_double(t[p + 1], line_);
      if (row == objective_name_) {
        lp_.objective[var] += value;
      } else if (auto r = row_index_.find(row); r != row_index_.end()) {
        lp_.rows[r->second].coefficients.emplace_back(var, value);
      } else if (!dropped_rows_.contains(row)) {
        throw ParseError(line_, "column '" + col + "' references unknown row '" + row + "'");
      }
    }
  }

  void rhs_record(const std::vector<std::string_view>& t) {
    // The RHS set name is optional: an odd token count means it is present.
    if (t.size() < 2 || t.size() > 5) throw ParseError(line_, "malformed RHS entry");
    const std::size_t first = t.size() % 2 == 1 ? 1 : 0;
    for (std::size_t p = first; p + 1 < t.size(); p += 2) {
      const std::string row(t[p]);
      const double value = parse_double(t[p + 1], line_);
      if (row == objective_name_) {
        lp_.objective_constant = -value;
      } else if (auto r = row_index_.find(row); r != row_index_.end()) {
        lp_.rows[r->second].rhs = value;
      } else if (!dropped_rows_.contains(row)) {
        throw ParseError(line_, "RHS references unknown row '" + row + "'");
      }
    }
  }

  void bound_record(const std::vector<std::string_view>& t) {
    const std::string_view type = t[0];
    const bool valueless = type == "FR" || type == "PL" || type == "MI" || type == "BV";
    if (type == "MI" || type == "BV" || type == "LI" || type == "UI" || type == "SC") {
      throw UnsupportedFeatureError(std::string(type), "line " + std::to_string(line_) + ": bound type " +
                                                           std::string(type) + " is not supported");
    }
    if (type != "UP" && type != "LO" && type != "FX" && type != "FR" && type != "PL") {
      throw ParseError(line_, "unknown bound type '" + std::string(type) + "'");
    }
    // Layout: TYPE [set] column [value]
    const std::size_t with_set = valueless ? 3 : 4;
    if (t.size() != with_set && t.size() != with_set - 1) throw ParseError(line_, "malformed BOUNDS entry");
    const std::size_t col_pos = t.size() == with_set ? 2 : 1;
    const std::string col(t[col_pos]);
    auto it = column_index_.find(col);
    if (it == column_index_.end()) throw ParseError(line_, "bound on unknown column '" + col + "'");
    const std::size_t var = it->second;

    if (type == "FR") {
      lp_.lower[var] = -kInfinity;
      lp_.upper[var] = kInfinity;
    } else if (type == "PL") {
      lp_.upper[var] = kInfinity;
    } else {
      const double value = parse_double(t[col_pos + 1], line_);
      if (type == "UP") lp_.upper[var] = value;
      else if (type == "LO") lp_.lower[var] = value;
      else lp_.lower[var] = lp_.upper[var] = value;  // FX
    }
  }

  GeneralFormLP lp_;
  Section section_ = Section::none;
  std::size_t line_ = 0;
  bool objective_row_ = false;
  std::string objective_name_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> column_index_;
  std::unordered_set<std::string> dropped_rows_;
};

}  // namespace

GeneralFormLP read_mps(std::string_view text) { return MpsReader{}.run(text); }

GeneralFormLP read_mps(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return read_mps(text);
}

// ---------------------------------------------------------------------------
// Standard form

StandardFormConversion to_standard_form(const GeneralFormLP& g) {
  const std::size_t nv = g.variable_names.size();
  if (g.objective.size() != nv || g.lower.size() != nv || g.upper.size() != nv) {
    throw InvalidArgument("to_standard_form: per-variable vectors have inconsistent lengths");
  }

  StandardFormConversion out;
  out.raw_rows = g.rows.size();
  out.raw_cols = nv;
  out.objective_offset = g.objective_constant;

  // Columns for the structural variables first.
  std::size_t columns = 0;
  std::vector<std::size_t> upper_rows;  // variables that need an upper-bound row
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = g.lower[j];
    const double up = g.upper[j];
    const std::string& name = g.variable_names[j];
    if (std::isnan(lo) || std::isnan(up) || lo > up || lo == kInfinity || up == -kInfinity) {
      throw InvalidArgument("to_standard_form: variable '" + name + "' has empty bounds");
    }
    VariableMapping map;
    if (lo == -kInfinity) {
      if (up != kInfinity) {
        throw InvalidArgument("to_standard_form: variable '" + name +
                              "' has an infinite lower bound and a finite upper bound");
      }
      map.kind = VariableMapping::Kind::split;
      map.column = columns++;
      map.negative_column = columns++;
    } else {
      map.kind = VariableMapping::Kind::shifted;
      map.column = columns++;
      map.lower = lo;
      out.objective_offset += g.objective[j] * lo;
      if (up != kInfinity) upper_rows.push_back(j);
    }
    out.variables.push_back(map);
  }

  std::size_t slack_count = upper_rows.size();
  for (const GeneralRow& row : g.rows) slack_count += row.type != RowType::equal;

  const std::size_t m = g.rows.size() + upper_rows.size();
  const std::size_t n = columns + slack_count;
  if (m == 0) throw InvalidArgument("to_standard_form: problem has no constraints");

  DenseMatrix a(m, n);
  Vector b(m, 0.0);
  Vector c(n, 0.0);

  for (std::size_t j = 0; j < nv; ++j) {
    const VariableMapping& map = out.variables[j];
    c[map.column] = g.objective[j];
    if (map.kind == VariableMapping::Kind::split) c[map.negative_column] = -g.objective[j];
  }

  std::size_t slack = columns;
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const GeneralRow& row = g.rows[i];
    double rhs = row.rhs;
    for (const auto& [var, value] : row.coefficients) {
      if (var >= nv) throw InvalidArgument("to_standard_form: coefficient on unknown variable");
      const VariableMapping& map = out.variables[var];
      a(i, map.column) += value;
      if (map.kind == VariableMapping::Kind::split) a(i, map.negative_column) -= value;
      else rhs -= value * map.lower;
    }
    b[i] = rhs;
    if (row.type == RowType::less_equal) a(i, slack++) = 1.0;
    else if (row.type == RowType::greater_equal) a(i, slack++) = -1.0;
  }

  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    const std::size_t j = upper_rows[k];
    const std::size_t i = g.rows.size() + k;
    a(i, out.variables[j].column) = 1.0;
    a(i, slack++) = 1.0;
    b[i] = g.upper[j] - g.lower[j];
  }

  out.lp = StandardFormLP{std::move(a), std::move(b), std::move(c), g.name};
  return out;
}

Vector StandardFormConversion::original_solution(std::span<const double> x) const {
  if (x.size() != lp.num_cols()) throw InvalidArgument("original_solution: wrong length");
  Vector out(variables.size());
  for (std::size_t j = 0; j < variables.size(); ++j) {
    const VariableMapping& map = variables[j];
    out[j] = map.kind == VariableMapping::Kind::split ? x[map.column] - x[map.negative_column]
                                                      : map.lower + x[map.column];
  }
  return out;
}

double StandardFormConversion::original_objective(std::span<const double> x) const {
  return objective(lp, x) + objective_offset;
}

// ---------------------------------------------------------------------------
// Noise

StandardFormLP inject_noise(const StandardFormLP& lp, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw InvalidArgument("inject_noise: eps must be non-negative");
  StandardFormLP out = lp;
  if (eps == 0.0) return out;
  Rng rng(seed);
  for (double& bi : out.b) bi += rng.uniform() * eps;
  return out;
}

}  // namespace trlp
