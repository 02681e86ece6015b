#include <cmath>
#include <optional>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "trlp/errors.hpp"
#include "trlp/generator.hpp"
#include "trlp/preprocess.hpp"
#include "trlp/problem_io.hpp"

using namespace trlp;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    read_coordinate_lp(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

// General-form optimum over two variables: every pair of active lines
// (constraint rows plus finite bounds) gives a candidate point.
std::optional<double> general_2d_optimum(const GeneralFormLP& g) {
  struct Halfplane {
    double a0, a1, rhs;  // a . x (<= | =) rhs
    bool equality;
  };
  std::vector<Halfplane> cons;
  for (const GeneralRow& r : g.rows) {
    double a[2] = {0, 0};
    for (auto [v, val] : r.coefficients) a[v] += val;
    if (r.type == RowType::greater_equal) cons.push_back({-a[0], -a[1], -r.rhs, false});
    else cons.push_back({a[0], a[1], r.rhs, r.type == RowType::equal});
  }
  for (std::size_t v = 0; v < 2; ++v) {
    const double e0 = v == 0 ? 1 : 0, e1 = v == 1 ? 1 : 0;
    if (std::isfinite(g.lower[v])) cons.push_back({-e0, -e1, -g.lower[v], false});
    if (std::isfinite(g.upper[v])) cons.push_back({e0, e1, g.upper[v], false});
  }
  std::optional<double> best;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      const double det = cons[i].a0 * cons[j].a1 - cons[i].a1 * cons[j].a0;
      if (std::abs(det) < 1e-12) continue;
      const double x0 = (cons[i].rhs * cons[j].a1 - cons[i].a1 * cons[j].rhs) / det;
      const double x1 = (cons[i].a0 * cons[j].rhs - cons[i].rhs * cons[j].a0) / det;
      bool ok = true;
      for (const Halfplane& h : cons) {
        const double lhs = h.a0 * x0 + h.a1 * x1;
        if (lhs > h.rhs + 1e-9 || (h.equality && lhs < h.rhs - 1e-9)) ok = false;
      }
      if (!ok) continue;
      const double obj = g.objective[0] * x0 + g.objective[1] * x1 + g.objective_constant;
      if (!best || obj < *best) best = obj;
    }
  }
  return best;
}

constexpr std::string_view kSmallMps = R"(NAME          SMALL
ROWS
 N  COST
 L  LIM1
 G  LIM2
 E  MYEQN
COLUMNS
    X1        COST         1.0   LIM1         1.0
    X1        LIM2         1.0
    X2        COST         2.0   LIM1         1.0
    X2        MYEQN       -1.0
    X3        COST        -1.0   MYEQN        1.0
RHS
    RHS       LIM1         4.0   LIM2         1.0
    RHS       MYEQN        7.0
BOUNDS
 UP BND       X1           4.0
 LO BND       X2          -1.0
 UP BND       X2           1.0
 FR BND       X3
ENDATA
)";

}  // namespace

TEST_CASE("coordinate format: basic 2x3") {
  const StandardFormLP lp = read_coordinate_lp(
      "# comment\n2 3\n3\n0 0 1.5\n1 2 -2\n0 1 4\n\n1\n2\n1\n2\n3\n", "basic");
  CHECK(lp.num_rows() == 2);
  CHECK(lp.num_cols() == 3);
  CHECK(lp.a(0, 0) == 1.5);
  CHECK(lp.a(1, 2) == -2.0);
  CHECK(lp.a(0, 1) == 4.0);
  CHECK(lp.a(1, 0) == 0.0);
  CHECK(lp.b == Vector{1, 2});
  CHECK(lp.c == Vector{1, 2, 3});
  CHECK(lp.name == "basic");
}

TEST_CASE("coordinate format: duplicate triplets are summed") {
  const StandardFormLP lp = read_coordinate_lp("1 1\n2\n0 0 1.0\n0 0 1.0\n5\n1\n");
  CHECK(lp.a(0, 0) == 2.0);
}

TEST_CASE("coordinate format: empty triplet section gives a zero matrix") {
  const StandardFormLP lp = read_coordinate_lp("2 2\n0\n1\n1\n1\n1\n");
  CHECK(lp.a.max_abs() == 0.0);
  CHECK_THROWS_AS(reduce(lp), DegenerateProblemError);
}

TEST_CASE("coordinate format: errors carry line numbers") {
  CHECK(parse_error_line("2 2\n1\n0 5 1\n1\n1\n1\n1\n") == 3);   // column out of range
  CHECK(parse_error_line("2 2\n1\n0 0 abc\n1\n1\n1\n1\n") == 3);
  CHECK(parse_error_line("2 2\n1\n0 0 1\n1\n1\n1\n") == 6);      // missing last cost
  CHECK(parse_error_line("2\n") == 1);                         // header needs two numbers
  CHECK(parse_error_line("0 2\n0\n1\n1\n") == 1);
  CHECK(parse_error_line("1 1\n0\n1\n1\n7\n") == 5);             // trailing data
  CHECK(parse_error_line("1 1\n0\n1\nnan\n") == 4);
}

TEST_CASE("coordinate format: write then read reproduces the problem exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeneratedProblem g = random_full_rank(4 + seed % 3, 13, 0.4, seed);
    StandardFormLP lp = g.lp;
    lp.b[0] = 0.1;  // not representable in short decimal
    const StandardFormLP back = read_coordinate_lp(write_coordinate_lp(lp), lp.name);
    CHECK(back.a == lp.a);
    CHECK(back.b == lp.b);
    CHECK(back.c == lp.c);
  }
  std::istringstream in(write_coordinate_lp(StandardFormLP{DenseMatrix{{1, 0}}, {1}, {0, -1e-300}, "x"}));
  const StandardFormLP tiny = read_coordinate_lp(in);
  CHECK(tiny.c[1] == -1e-300);
}

TEST_CASE("MPS: minimal equality problem") {
  const GeneralFormLP g = read_mps(
      "NAME EQ\nROWS\n N obj\n E r1\nCOLUMNS\n x obj 1 r1 1\n y obj 2 r1 1\nRHS\n rhs r1 3\nENDATA\n");
  CHECK(g.name == "EQ");
  CHECK(g.variable_names == std::vector<std::string>{"x", "y"});
  REQUIRE(g.rows.size() == 1);
  CHECK(g.rows[0].type == RowType::equal);
  CHECK(g.rows[0].rhs == 3.0);
  const StandardFormConversion conv = to_standard_form(g);
  CHECK(conv.lp.num_rows() == 1);
  CHECK(conv.lp.num_cols() == 2);
  CHECK(conv.lp.b == Vector{3});
}

TEST_CASE("MPS: L row gains a slack") {
  const GeneralFormLP g = read_mps(
      "NAME L\nROWS\n N obj\n L r1\nCOLUMNS\n x obj -1 r1 2\nRHS\n r1 5\nENDATA\n");
  const StandardFormConversion conv = to_standard_form(g);
  REQUIRE(conv.lp.num_cols() == 2);
  CHECK(conv.lp.a(0, 0) == 2.0);
  CHECK(conv.lp.a(0, 1) == 1.0);
  CHECK(conv.lp.c[1] == 0.0);
  CHECK(conv.lp.b == Vector{5});
}

TEST_CASE("MPS: unsupported and malformed input") {
  const std::string head = "NAME X\nROWS\n N obj\n E r1\nCOLUMNS\n x obj 1 r1 1\nRHS\n r1 1\n";
  CHECK_THROWS_AS(read_mps(head + "RANGES\n rng r1 2\nENDATA\n"), UnsupportedFeatureError);
  CHECK_THROWS_AS(read_mps(head + "BOUNDS\n MI bnd x\nENDATA\n"), UnsupportedFeatureError);
  CHECK_THROWS_AS(read_mps(head + "BOUNDS\n ZZ bnd x 1\nENDATA\n"), ParseError);
  CHECK_THROWS_AS(read_mps(head), ParseError);
  CHECK_THROWS_AS(read_mps("NAME X\nROWS\n E r1\nCOLUMNS\n x r1 1\nRHS\n r1 1\nENDATA\n"), ParseError);
  try {
    read_mps(head + "BOUNDS\n UP bnd nosuch 1\nENDATA\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 10);
  }
}

TEST_CASE("MPS: bounds, shifts and free splits") {
  const GeneralFormLP g = read_mps(kSmallMps);
  CHECK(g.upper[0] == 4.0);
  CHECK(g.lower[1] == -1.0);
  CHECK(std::isinf(g.lower[2]));
  const StandardFormConversion conv = to_standard_form(g);
  CHECK(conv.raw_rows == 3);
  CHECK(conv.raw_cols == 3);
  // 3 rows + 2 upper-bound rows; 3 vars + 1 split + 2 slacks + 2 bound slacks
  CHECK(conv.lp.num_rows() == 5);
  CHECK(conv.lp.num_cols() == 8);
  CHECK(conv.variables[1].lower == -1.0);
  CHECK(conv.variables[2].kind == VariableMapping::Kind::split);
}

TEST_CASE("lower bound shift round trip") {
  const GeneralFormLP g = read_mps(
      "NAME S\nROWS\n N obj\n E r1\nCOLUMNS\n x obj 1 r1 3\n y obj 1 r1 1\nRHS\n r1 10\n"
      "BOUNDS\n LO b x 2\nENDATA\n");
  const StandardFormConversion conv = to_standard_form(g);
  CHECK(conv.lp.b[0] == doctest::Approx(10 - 3 * 2));
  const Vector x = conv.original_solution(Vector{1, 1});
  CHECK(x[0] == 3.0);
  CHECK(x[1] == 1.0);
  // original-form feasibility of the mapped point
  CHECK(3 * x[0] + x[1] == doctest::Approx(conv.lp.b[0] + 6));
  CHECK(conv.original_objective(Vector{1, 1}) == doctest::Approx(4.0));
}

TEST_CASE("conversion rejects -inf lower bound with a finite upper bound") {
  GeneralFormLP g;
  g.name = "bad";
  g.variable_names = {"v"};
  g.objective = {1};
  g.rows.push_back(GeneralRow{"r", RowType::equal, {{0, 1.0}}, 1.0});
  g.lower = {-kInfinity};
  g.upper = {3};
  try {
    to_standard_form(g);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("'v'") != std::string::npos);
  }
}

TEST_CASE("conversion preserves the optimum on small two-variable problems") {
  Rng rng(55);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 20; ++trial) {
    GeneralFormLP g;
    g.name = "g";
    g.variable_names = {"a", "b"};
    g.objective = {rng.normal(), rng.normal()};
    g.objective_constant = rng.normal();
    g.lower = {rng.uniform(-2, 1), rng.uniform() < 0.3 ? -kInfinity : rng.uniform(-2, 1)};
    g.upper = {g.lower[0] + rng.uniform(0.5, 3), kInfinity};
    if (std::isinf(g.lower[1])) g.upper[1] = kInfinity;
    else g.upper[1] = g.lower[1] + rng.uniform(0.5, 3);
    const std::size_t nrows = 1 + rng.below(2);
    for (std::size_t i = 0; i < nrows; ++i) {
      GeneralRow r;
      r.name = "r" + std::to_string(i);
      r.type = static_cast<RowType>(rng.below(3));
      r.coefficients = {{0, rng.uniform(-1, 1)}, {1, rng.uniform(0.5, 1.5)}};
      r.rhs = rng.uniform(-1, 1);
      g.rows.push_back(r);
    }
    // keep the region bounded when b is free
    g.rows.push_back(GeneralRow{"box_hi", RowType::less_equal, {{0, 1.0}, {1, 1.0}}, 5.0});
    g.rows.push_back(GeneralRow{"box_lo", RowType::greater_equal, {{1, 1.0}}, -5.0});
    const auto expected = general_2d_optimum(g);
    if (!expected) continue;
    const StandardFormConversion conv = to_standard_form(g);
    const auto v = oracle::vertex_enumeration(conv.lp);
    if (!v) continue;
    ++checked;
    CAPTURE(trial);
    CHECK(conv.original_objective(v->x) == doctest::Approx(*expected).epsilon(1e-8));
    CHECK(v->objective + conv.objective_offset == doctest::Approx(*expected).epsilon(1e-8));
  }
  CHECK(checked >= 10);
}

TEST_CASE("noise injection") {
  const GeneratedProblem g = random_full_rank(6, 20, 0.4, 2);
  const StandardFormLP same = inject_noise(g.lp, 0.0, 9);
  CHECK(same.b == g.lp.b);
  CHECK(same.a == g.lp.a);
  const StandardFormLP n1 = inject_noise(g.lp, 1e-5, 9);
  const StandardFormLP n2 = inject_noise(g.lp, 1e-5, 9);
  CHECK(n1.b == n2.b);
  CHECK(n1.a == g.lp.a);
  CHECK(n1.c == g.lp.c);
  Rng rng(9);
  for (std::size_t i = 0; i < n1.b.size(); ++i) {
    const double delta = n1.b[i] - g.lp.b[i];
    CHECK(delta >= 0.0);
    CHECK(delta < 1e-5);
    CHECK(n1.b[i] == g.lp.b[i] + rng.uniform() * 1e-5);
  }
  CHECK(inject_noise(g.lp, 1e-5, 10).b != n1.b);
  CHECK_THROWS_AS(inject_noise(g.lp, -1.0, 1), InvalidArgument);
}
