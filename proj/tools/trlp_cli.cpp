// trlp: solve, benchmark and generate standard-form LPs.
//
//   trlp solve FILE [--solver pfmtrlp|baseline] [--noise EPS --seed S] [overrides]
//   trlp bench (--m 10,20 | --m-range 10:50:10 | --dir DIR) [--solver both] [--csv PATH]
//   trlp generate --m M --n N [--density D] [--seed S] [--rank-deficient K] [--noise EPS] -o PATH
//
// Exit codes: 0 success (solve: converged), 1 solver did not converge,
// 2 usage, I/O or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "trlp/bench.hpp"
#include "trlp/errors.hpp"
#include "trlp/generator.hpp"
#include "trlp/random.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::optional<std::size_t> maxit;
  std::optional<double> epsilon;
  std::optional<double> dt0;
  std::optional<double> big_m_factor;
  std::optional<double> rank_tol;

  void attach(CLI::App* cmd) {
    cmd->add_option("--maxit", maxit, "Iteration limit");
    cmd->add_option("--epsilon", epsilon, "KKT tolerance");
    cmd->add_option("--dt0", dt0, "Initial time step (pfmtrlp)");
    cmd->add_option("--big-m-factor", big_m_factor, "Scale of the big-M starting point");
    cmd->add_option("--rank-tol", rank_tol, "Relative rank tolerance for pivoted QR (pfmtrlp)");
  }

  void apply(trlp::SolverConfig& cfg, trlp::BaselineConfig& base) const {
    if (maxit) cfg.maxit = base.maxit = *maxit;
    if (epsilon) cfg.epsilon = base.epsilon = *epsilon;
    if (dt0) cfg.dt0 = *dt0;
    if (big_m_factor) cfg.big_m_factor = base.big_m_factor = *big_m_factor;
    if (rank_tol) cfg.rank_tol = *rank_tol;
  }
};

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

int run_solve(const std::string& file, const std::string& solver_name, double noise, std::uint64_t seed,
              const Overrides& overrides) {
  const auto choice = trlp::parse_solver_choice(solver_name);
  if (!choice) {
    std::cerr << "trlp solve: unknown solver '" << solver_name << "'\n";
    return kExitUsage;
  }

  trlp::LoadedProblem loaded;
  try {
    loaded = trlp::load_problem_file(file);
  } catch (const std::exception& e) {
    std::cerr << "trlp solve: " << file << ": " << e.what() << '\n';
    return kExitUsage;
  }
  if (noise > 0.0) loaded.lp = trlp::inject_noise(loaded.lp, noise, seed);

  trlp::SolverConfig cfg;
  trlp::BaselineConfig base;
  overrides.apply(cfg, base);

  trlp::SolveReport report;
  try {
    report = trlp::run_solver(*choice, loaded.lp, cfg, base);
  } catch (const std::invalid_argument& e) {
    std::cerr << "trlp solve: " << e.what() << '\n';
    return kExitUsage;
  }

  std::cout << "name=" << loaded.lp.name << " m=" << loaded.lp.num_rows() << " n=" << loaded.lp.num_cols();
  if (loaded.from_mps) std::cout << " raw=" << loaded.raw_rows << 'x' << loaded.raw_cols;
  std::cout << " rank=" << report.rank << " status=" << trlp::to_string(report.status)
            << " kkt_error=" << scientific(report.kkt_error_inf) << " gap=" << scientific(report.duality_gap)
            << " objective=" << scientific(report.objective + loaded.objective_offset)
            << " iterations=" << report.successful_iterations << " trial_steps=" << report.trial_steps
            << " seconds=" << report.elapsed.count() << '\n';
  if (!report.message.empty()) std::cerr << "trlp solve: " << report.message << '\n';
  return report.status == trlp::SolveStatus::converged ? kExitOk : kExitNotConverged;
}

struct BenchArgs {
  std::vector<std::size_t> m_values;
  std::string m_range;
  std::size_t count = 1;
  std::size_t n_factor = 10;
  double density = trlp::kDefaultDensity;
  std::uint64_t seed = 1;
  std::size_t rank_deficient = 0;
  double noise = 0.0;
  std::string solver = "both";
  std::string dir;
  std::string csv;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
};

bool parse_range(const std::string& text, std::vector<std::size_t>& out) {
  std::size_t lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step == 0 || lo == 0 || hi < lo) {
    return false;
  }
  for (std::size_t m = lo; m <= hi; m += step) out.push_back(m);
  return true;
}

int run_bench(BenchArgs args, const Overrides& overrides) {
  std::vector<trlp::SolverChoice> solvers;
  if (args.solver == "both") {
    solvers = {trlp::SolverChoice::pfmtrlp, trlp::SolverChoice::baseline};
  } else if (auto c = trlp::parse_solver_choice(args.solver)) {
    solvers = {*c};
  } else {
    std::cerr << "trlp bench: unknown solver '" << args.solver << "'\n";
    return kExitUsage;
  }
  if (!args.m_range.empty() && !parse_range(args.m_range, args.m_values)) {
    std::cerr << "trlp bench: --m-range expects LO:HI:STEP with 1 <= LO <= HI, STEP >= 1\n";
    return kExitUsage;
  }

  std::vector<trlp::BenchProblem> problems;
  try {
    if (!args.dir.empty()) {
      problems = trlp::load_directory_suite(args.dir);
      if (args.noise > 0.0) {
        for (std::size_t i = 0; i < problems.size(); ++i) {
          problems[i].lp = trlp::inject_noise(problems[i].lp, args.noise, args.seed + i);
        }
      }
    }
    if (!args.m_values.empty()) {
      trlp::SuiteSpec spec{args.m_values, args.count,          args.n_factor, args.density,
                           args.seed,     args.rank_deficient, args.noise};
      auto generated = trlp::build_generated_suite(spec);
      problems.insert(problems.end(), std::make_move_iterator(generated.begin()),
                      std::make_move_iterator(generated.end()));
    }
  } catch (const std::exception& e) {
    std::cerr << "trlp bench: " << e.what() << '\n';
    return kExitUsage;
  }
  if (problems.empty()) {
    std::cerr << "trlp bench: empty suite (give --m, --m-range or a non-empty --dir)\n";
    return kExitUsage;
  }

  trlp::SolverConfig cfg;
  trlp::BaselineConfig base;
  overrides.apply(cfg, base);

  std::vector<trlp::BenchRow> rows;
  try {
    rows = trlp::run_bench(problems, solvers, cfg, base, args.jobs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "trlp bench: " << e.what() << '\n';
    return kExitUsage;
  }

  if (args.csv.empty()) {
    trlp::write_csv(std::cout, rows);
  } else {
    std::ofstream out(args.csv);
    if (!out) {
      std::cerr << "trlp bench: cannot write '" << args.csv << "'\n";
      return kExitUsage;
    }
    trlp::write_csv(out, rows);
  }
  return kExitOk;
}

struct GenerateArgs {
  std::size_t m = 0;
  std::size_t n = 0;
  double density = trlp::kDefaultDensity;
  std::uint64_t seed = 1;
  std::size_t rank_deficient = 0;
  double noise = 0.0;
  std::string output;
};

int run_generate(const GenerateArgs& args) {
  trlp::GeneratedProblem g;
  try {
    g = trlp::random_full_rank(args.m, args.n, args.density, args.seed);
    if (args.rank_deficient > 0) {
      g.lp = trlp::make_rank_deficient(g.lp, args.rank_deficient, trlp::substream_seed(args.seed, 1));
    }
    if (args.noise > 0.0) g.lp = trlp::inject_noise(g.lp, args.noise, trlp::substream_seed(args.seed, 2));
  } catch (const std::exception& e) {
    std::cerr << "trlp generate: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream out(args.output);
  std::ofstream meta(args.output + ".meta");
  if (!out || !meta) {
    std::cerr << "trlp generate: cannot write '" << args.output << "'\n";
    return kExitUsage;
  }
  trlp::write_coordinate_lp(out, g.lp);

  char objective[40];
  std::snprintf(objective, sizeof objective, "%.17g", g.certificate_objective());
  meta << "seed=" << args.seed << " m=" << g.lp.num_rows() << " n=" << g.lp.num_cols()
       << " density=" << args.density << " rank_deficient=" << args.rank_deficient << " noise=" << args.noise
       << " attempts=" << g.attempts << " objective=" << objective << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-region primal-dual path following for standard-form LPs"};
  app.require_subcommand(1);

  Overrides solve_overrides;
  std::string solve_file;
  std::string solve_solver = "pfmtrlp";
  double solve_noise = 0.0;
  std::uint64_t solve_seed = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem file (coordinate format or .mps)");
  solve_cmd->add_option("file", solve_file, "Problem file")->required();
  solve_cmd->add_option("--solver", solve_solver, "pfmtrlp or baseline");
  solve_cmd->add_option("--noise", solve_noise, "Add u * eps to b, u uniform on [0, 1)")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--seed", solve_seed, "Seed for --noise");
  solve_overrides.attach(solve_cmd);

  Overrides bench_overrides;
  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare solvers on a generated suite or a directory");
  bench_cmd->add_option("--m", bench.m_values, "Row counts, comma separated")->delimiter(',');
  bench_cmd->add_option("--m-range", bench.m_range, "Row counts as LO:HI:STEP");
  bench_cmd->add_option("--count", bench.count, "Instances per row count");
  bench_cmd->add_option("--n-factor", bench.n_factor, "n = n_factor * m");
  bench_cmd->add_option("--density", bench.density, "Nonzero density of A")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--rank-deficient", bench.rank_deficient, "Append this many dependent rows");
  bench_cmd->add_option("--noise", bench.noise, "Noise level added to b")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--solver", bench.solver, "pfmtrlp, baseline or both");
  bench_cmd->add_option("--dir", bench.dir, "Directory of problem files")->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--csv", bench.csv, "Write CSV here instead of standard output");
  bench_cmd->add_option("--jobs", bench.jobs, "Concurrent solves")->check(CLI::PositiveNumber);
  bench_overrides.attach(bench_cmd);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random feasible LP in coordinate format");
  gen_cmd->add_option("--m", gen.m, "Rows")->required();
  gen_cmd->add_option("--n", gen.n, "Columns")->required();
  gen_cmd->add_option("--density", gen.density, "Nonzero density of A");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--rank-deficient", gen.rank_deficient, "Append this many dependent rows");
  gen_cmd->add_option("--noise", gen.noise, "Noise level added to b")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("-o,--output", gen.output, "Output path; metadata goes to PATH.meta")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*solve_cmd) return run_solve(solve_file, solve_solver, solve_noise, solve_seed, solve_overrides);
  if (*bench_cmd) return run_bench(bench, bench_overrides);
  return run_generate(gen);
}
