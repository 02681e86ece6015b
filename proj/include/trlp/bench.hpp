#pragma once

// Batch comparison of the trust-region solver against the baseline.
//
// CSV schema (header row included, '.' decimal point):
//   problem,m,n,rank,solver,status,kkt_error,gap,iterations,trial_steps,seconds
// Every column except `seconds` is a deterministic function of the inputs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trlp/baseline.hpp"
#include "trlp/problem_io.hpp"
#include "trlp/solver.hpp"

namespace trlp {

enum class SolverChoice { pfmtrlp, baseline };

std::string_view to_string(SolverChoice choice);
std::optional<SolverChoice> parse_solver_choice(std::string_view text);

struct BenchProblem {
  StandardFormLP lp;
};

// Generated suite: for each m in m_values, `count` instances of size
// m x (n_factor * m). Instance i (counting across the whole suite from 0)
// uses seed + i for random_full_rank, substream_seed(seed + i, 1) for
// make_rank_deficient and substream_seed(seed + i, 2) for inject_noise.
struct SuiteSpec {
  std::vector<std::size_t> m_values;
  std::size_t count = 1;
  std::size_t n_factor = 10;
  double density = 0.2;
  std::uint64_t seed = 1;
  std::size_t rank_deficient = 0;  // extra dependent rows; 0 = none
  double noise = 0.0;
};

std::vector<BenchProblem> build_generated_suite(const SuiteSpec& spec);

// A problem file plus what ingestion learned about it.
struct LoadedProblem {
  StandardFormLP lp;
  std::size_t raw_rows = 0;
  std::size_t raw_cols = 0;
  double objective_offset = 0.0;
  bool from_mps = false;
};

// *.mps (any case) is read as MPS and converted to standard form; anything
// else as the coordinate format. Parse errors propagate.
LoadedProblem load_problem_file(const std::filesystem::path& path);

// Every regular file in `dir`, sorted by file name.
std::vector<BenchProblem> load_directory_suite(const std::filesystem::path& dir);

struct BenchRow {
  std::string problem;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t rank = 0;
  SolverChoice solver = SolverChoice::pfmtrlp;
  SolveStatus status = SolveStatus::numerical_failure;
  double kkt_error = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  std::size_t trial_steps = 0;
  double seconds = 0.0;
};

SolveReport run_solver(SolverChoice choice, const StandardFormLP& lp, const SolverConfig& cfg,
                       const BaselineConfig& baseline_cfg);

BenchRow make_row(const StandardFormLP& lp, SolverChoice choice, const SolveReport& report);

// Solves every (problem, solver) pair on up to `jobs` threads. Rows come
// back in problem-major, solver-minor order regardless of completion order.
std::vector<BenchRow> run_bench(const std::vector<BenchProblem>& problems,
                                const std::vector<SolverChoice>& solvers, const SolverConfig& cfg,
                                const BaselineConfig& baseline_cfg, std::size_t jobs = 1);

std::string_view csv_header();
std::string format_csv_row(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace trlp
