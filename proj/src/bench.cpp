#include "trlp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "trlp/errors.hpp"
#include "trlp/generator.hpp"
#include "trlp/random.hpp"

namespace trlp {

std::string_view to_string(SolverChoice choice) {
  return choice == SolverChoice::pfmtrlp ? "pfmtrlp" : "baseline";
}

std::optional<SolverChoice> parse_solver_choice(std::string_view text) {
  if (text == "pfmtrlp") return SolverChoice::pfmtrlp;
  if (text == "baseline") return SolverChoice::baseline;
  return std::nullopt;
}

std::vector<BenchProblem> build_generated_suite(const SuiteSpec& spec) {
  std::vector<BenchProblem> out;
  std::uint64_t index = 0;
  for (std::size_t m : spec.m_values) {
    for (std::size_t k = 0; k < spec.count; ++k, ++index) {
      const std::uint64_t seed = spec.seed + index;
      StandardFormLP lp = random_full_rank(m, spec.n_factor * m, spec.density, seed).lp;
      if (spec.rank_deficient > 0) lp = make_rank_deficient(lp, spec.rank_deficient, substream_seed(seed, 1));
      if (spec.noise > 0.0) {
        lp = inject_noise(lp, spec.noise, substream_seed(seed, 2));
        lp.name += "_noisy";
      }
      out.push_back(BenchProblem{std::move(lp)});
    }
  }
  return out;
}

LoadedProblem load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");

  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });

  LoadedProblem out;
  if (ext == ".mps") {
    const GeneralFormLP g = read_mps(in);
    StandardFormConversion conv = to_standard_form(g);
    out.raw_rows = conv.raw_rows;
    out.raw_cols = conv.raw_cols;
    out.objective_offset = conv.objective_offset;
    out.from_mps = true;
    out.lp = std::move(conv.lp);
    if (out.lp.name.empty()) out.lp.name = path.stem().string();
    validate(out.lp);
  } else {
    out.lp = read_coordinate_lp(in, path.stem().string());
    out.raw_rows = out.lp.num_rows();
    out.raw_cols = out.lp.num_cols();
  }
  return out;
}

std::vector<BenchProblem> load_directory_suite(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchProblem> out;
  for (const auto& f : files) out.push_back(BenchProblem{load_problem_file(f).lp});
  return out;
}

SolveReport run_solver(SolverChoice choice, const StandardFormLP& lp, const SolverConfig& cfg,
                       const BaselineConfig& baseline_cfg) {
  return choice == SolverChoice::pfmtrlp ? solve(lp, cfg) : solve_baseline(lp, baseline_cfg);
}

BenchRow make_row(const StandardFormLP& lp, SolverChoice choice, const SolveReport& report) {
  return BenchRow{lp.name,
                  lp.num_rows(),
                  lp.num_cols(),
                  report.rank,
                  choice,
                  report.status,
                  report.kkt_error_inf,
                  report.duality_gap,
                  report.successful_iterations,
                  report.trial_steps,
                  report.elapsed.count()};
}

std::vector<BenchRow> run_bench(const std::vector<BenchProblem>& problems,
                                const std::vector<SolverChoice>& solvers, const SolverConfig& cfg,
                                const BaselineConfig& baseline_cfg, std::size_t jobs) {
  validate(cfg);
  validate(baseline_cfg);
  const std::size_t tasks = problems.size() * solvers.size();
  std::vector<BenchRow> rows(tasks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const StandardFormLP& lp = problems[t / solvers.size()].lp;
      const SolverChoice choice = solvers[t % solvers.size()];
      try {
        rows[t] = make_row(lp, choice, run_solver(choice, lp, cfg, baseline_cfg));
      } catch (const std::exception&) {
        SolveReport failed;
        failed.kkt_error_inf = failed.duality_gap = std::numeric_limits<double>::infinity();
        rows[t] = make_row(lp, choice, failed);
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

std::string_view csv_header() {
  return "problem,m,n,rank,solver,status,kkt_error,gap,iterations,trial_steps,seconds";
}

std::string format_csv_row(const BenchRow& row) {
  char numbers[96];
  std::snprintf(numbers, sizeof numbers, "%.6e,%.6e", row.kkt_error, row.gap);
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.6f", row.seconds);
  std::ostringstream os;
  os << row.problem << ',' << row.m << ',' << row.n << ',' << row.rank << ',' << to_string(row.solver) << ','
     << to_string(row.status) << ',' << numbers << ',' << row.iterations << ',' << row.trial_steps << ','
     << seconds;
  return os.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << csv_header() << '\n';
  for (const BenchRow& row : rows) out << format_csv_row(row) << '\n';
}

}  // namespace trlp
