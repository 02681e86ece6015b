// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "trlp/baseline.hpp"
#include "trlp/generator.hpp"
#include "trlp/linalg.hpp"
#include "trlp/newton_step.hpp"
#include "trlp/preprocess.hpp"
#include "trlp/problem_io.hpp"
#include "trlp/solver.hpp"

using namespace trlp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later failures only bump the count.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  Outcome finish(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed, first: " + first_};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

struct NoisyInstance {
  StandardFormLP lp;
  SolveReport pf;
  SolveReport base;
};

std::vector<NoisyInstance> build_noisy_instances() {
  std::vector<NoisyInstance> out;
  for (std::uint64_t k = 0; k < 5; ++k) {
    const std::uint64_t seed = 500 + k;
    const GeneratedProblem g = random_full_rank(20, 200, kDefaultDensity, seed);
    StandardFormLP lp = make_rank_deficient(g.lp, 5, substream_seed(seed, 1));
    lp = inject_noise(lp, 1e-5, substream_seed(seed, 2));
    NoisyInstance inst{lp, solve(lp), solve_baseline(lp)};
    out.push_back(std::move(inst));
  }
  return out;
}

Outcome certificate_optimality() {
  Checker c;
  double worst_kkt = 0.0, worst_obj = 0.0;
  std::size_t max_iter = 0;
  const std::size_t ms[] = {10, 20, 30, 40, 50};
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t m = ms[i / 2];
    const std::uint64_t seed = 100 + i;
    const GeneratedProblem g = random_full_rank(m, 10 * m, kDefaultDensity, seed);
    const SolveReport r = solve(g.lp);
    const double ref = g.certificate_objective();
    const double obj_err = std::abs(r.objective - ref) / (1 + std::abs(ref));
    const std::string tag = g.lp.name + ": ";
    c.expect(r.status == SolveStatus::converged, tag + "status " + std::string(to_string(r.status)));
    c.expect(r.kkt_error_inf <= 1e-4, tag + "kkt " + fmt("%.3e", r.kkt_error_inf));
    c.expect(obj_err <= 1e-3, tag + "objective error " + fmt("%.3e", obj_err));
    c.expect(r.successful_iterations <= 100, tag + "iterations " + std::to_string(r.successful_iterations));
    worst_kkt = std::max(worst_kkt, r.kkt_error_inf);
    worst_obj = std::max(worst_obj, obj_err);
    max_iter = std::max(max_iter, r.successful_iterations);
  }
  return c.finish("10 instances, max kkt " + fmt("%.2e", worst_kkt) + ", max rel objective error " +
                  fmt("%.2e", worst_obj) + ", max iterations " + std::to_string(max_iter));
}

Outcome robustness_contrast(const std::vector<NoisyInstance>& suite) {
  Checker c;
  std::string statuses;
  for (const NoisyInstance& inst : suite) {
    const bool pf_ok = (inst.pf.status == SolveStatus::converged || inst.pf.status == SolveStatus::max_iterations) &&
                       std::isfinite(inst.pf.kkt_error_inf);
    const bool base_fails = inst.base.status == SolveStatus::numerical_failure ||
                            inst.base.status == SolveStatus::max_iterations;
    c.expect(pf_ok, inst.lp.name + ": pfmtrlp " + std::string(to_string(inst.pf.status)));
    c.expect(base_fails, inst.lp.name + ": baseline " + std::string(to_string(inst.base.status)));
    statuses += std::string(statuses.empty() ? "" : " ") + std::string(to_string(inst.pf.status)) + "/" +
                std::string(to_string(inst.base.status));
  }
  return c.finish("5 noisy rank-deficient instances, pfmtrlp/baseline: " + statuses);
}

Outcome least_squares_repair(const std::vector<NoisyInstance>& suite) {
  Checker c;
  double worst = 0.0;
  for (const NoisyInstance& inst : suite) {
    const double best = oracle::min_lsq_residual(inst.lp.a, inst.lp.b);
    const double got = lsq_residual_norm(inst.lp, inst.pf.z.x);
    const double ratio = got / best;
    c.expect(got <= (1 + 1e-4) * best, inst.lp.name + ": residual ratio " + fmt("%.8f", ratio));
    worst = std::max(worst, ratio);
  }
  return c.finish("worst |Ax-b| / minimum = " + fmt("%.8f", worst));
}

Outcome newton_equivalence() {
  Checker c;
  Rng rng(4040);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng.below(6);
    const std::size_t n = m + rng.below(13 - m);
    StandardFormLP lp{oracle::random_matrix(rng, m, n), Vector(m), Vector(n), "n"};
    for (double& v : lp.b) v = rng.normal();
    for (double& v : lp.c) v = rng.normal();
    Iterate z{Vector(n), Vector(m), Vector(n)};
    for (double& v : z.x) v = rng.uniform(0.1, 2.0);
    for (double& v : z.y) v = rng.normal();
    for (double& v : z.s) v = rng.uniform(0.1, 2.0);
    const double sigma_mu = rng.uniform(0.0, 0.5);
    const StepDirection d = newton_direction(lp, z, sigma_mu);
    const oracle::DenseDirection o = oracle::dense_newton_direction(lp, z, sigma_mu);
    const double diff = std::max({oracle::max_abs_diff(d.dx, o.dx), oracle::max_abs_diff(d.dy, o.dy),
                                  oracle::max_abs_diff(d.ds, o.ds)});
    const double scale = 1 + std::max({norm_inf(o.dx), norm_inf(o.dy), norm_inf(o.ds)});
    c.expect(diff <= 1e-8 * scale, "trial " + std::to_string(trial) + " diff " + fmt("%.3e", diff));
    worst = std::max(worst, diff / scale);
  }
  return c.finish("50 systems, worst scaled difference " + fmt("%.2e", worst));
}

// Independent restatement of the time-step table.
double expected_time_step(double dt, double rho, bool positive) {
  const double dev = std::abs(1.0 - rho);
  if (positive && dev <= 0.25) return std::min(2.0 * dt, 1e12);
  if (positive && dev > 0.25 && dev <= 0.75) return dt;
  return dt / 2.0;
}

Outcome property_suite() {
  Checker a, b, cc, d, e;
  Rng rng(5150);
  constexpr int kTrials = 100;

  // (a), (b): feasible start
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t m = 1 + rng.below(8), n = m + 1 + rng.below(15);
    const oracle::FeasibleInstance f = oracle::strictly_feasible_instance(rng, m, n);
    const double nn = static_cast<double>(n);
    const double mu = dot(f.z.x, f.z.s) / nn;
    const double sigma = sigma_rule(mu);
    const StepDirection dir = newton_direction(f.lp, f.z, sigma * mu);
    const double alpha = step_factor(rng.uniform(0.01, 20.0));
    const Iterate next = apply_scaled_step(f.z, dir, alpha);
    const double mu_next = dot(next.x, next.s) / nn;
    const double expected = (1 - (1 - sigma) * alpha) * mu;
    a.expect(std::abs(mu_next - expected) <= 1e-8 * expected, "trial " + std::to_string(t));
    const double orth = std::abs(dot(dir.dx, dir.ds));
    b.expect(orth <= 1e-8 * norm2(dir.dx) * norm2(dir.ds) + 1e-300, "trial " + std::to_string(t));
  }

  // (c): arbitrary interior point, infeasible
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t m = 1 + rng.below(8), n = m + 1 + rng.below(15);
    StandardFormLP lp{oracle::random_matrix(rng, m, n), Vector(m), Vector(n), "c"};
    for (double& v : lp.b) v = rng.normal();
    for (double& v : lp.c) v = rng.normal();
    Iterate z{Vector(n), Vector(m), Vector(n)};
    for (double& v : z.x) v = rng.uniform(0.2, 3.0);
    for (double& v : z.y) v = rng.normal();
    for (double& v : z.s) v = rng.uniform(0.2, 3.0);
    const Residuals r = residuals(lp, z, 0.0);
    const StepDirection dir = newton_direction(lp, z, sigma_rule(r.mu) * r.mu);
    const double alpha = step_factor(rng.uniform(0.01, 20.0));
    const Residuals r2 = residuals(lp, apply_scaled_step(z, dir, alpha), 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(r2.rp[i] - (1 - alpha) * r.rp[i]) / norm_inf(r.rp));
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(r2.rd[j] - (1 - alpha) * r.rd[j]) / norm_inf(r.rd));
    cc.expect(worst <= 1e-10, "trial " + std::to_string(t) + " rel " + fmt("%.3e", worst));
  }

  // (d): every accepted iterate is interior. The final point of a run capped
  // at k directions is the k-th accepted iterate, so sweeping k visits all.
  std::size_t iterates = 0;
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t m = 2 + rng.below(5);
    const GeneratedProblem g = random_full_rank(m, 5 * m, 0.4, 9000 + static_cast<std::uint64_t>(t));
    SolverConfig cfg;
    cfg.dt0 = rng.uniform(0.1, 50.0);
    const std::size_t total = solve(g.lp, cfg).successful_iterations;
    bool ok = true;
    for (std::size_t k = 1; k <= total + 1; ++k) {
      cfg.maxit = k;
      const SolveReport r = solve(g.lp, cfg);
      ok = ok && strictly_positive(r.z.x) && strictly_positive(r.z.s);
      ++iterates;
    }
    d.expect(ok, g.lp.name);
  }

  // (e): time-step table on synthesized inputs
  const SolverConfig cfg;
  const double edges[] = {0.25, 0.75, 1.0, 1.25, 1.75, -0.5, 2.5, 1e-7, std::nan("")};
  for (int t = 0; t < 10 * kTrials; ++t) {
    const double rho = t < 9 * 2 ? edges[t % 9] : rng.uniform(-1.0, 3.0);
    const bool positive = t % 2 == 0 ? true : rng.uniform() < 0.5;
    const double dt = std::ldexp(rng.uniform(0.5, 1.0), static_cast<int>(rng.below(60)) - 30);
    const double got = update_time_step(dt, rho, positive, cfg);
    const double want = expected_time_step(dt, rho, positive);
    e.expect(got == want, "rho " + fmt("%.17g", rho));
    e.expect(accept_trial(rho, positive, cfg) == (positive && rho >= 1e-6), "accept rho " + fmt("%.17g", rho));
  }

  const Outcome parts[] = {a.finish("(a) mu recursion"), b.finish("(b) orthogonality"),
                           cc.finish("(c) linear contraction"),
                           d.finish("(d) positivity over " + std::to_string(iterates) + " iterates"),
                           e.finish("(e) time-step table")};
  Outcome all{true, ""};
  for (const Outcome& p : parts) {
    all.pass = all.pass && p.pass;
    all.detail += (all.detail.empty() ? "" : "; ") + p.detail;
  }
  return all;
}

Outcome tiny_lp_oracle() {
  Checker c;
  Rng rng(6006);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 1 + rng.below(4);
    const std::size_t n = m + 1 + rng.below(8 - m);
    const StandardFormLP lp = oracle::bounded_tiny_lp(rng, m, n);
    const auto v = oracle::vertex_enumeration(lp);
    if (!v) {
      c.expect(false, "trial " + std::to_string(t) + " has no feasible vertex");
      continue;
    }
    const SolveReport r = solve(lp);
    const double diff = std::abs(r.objective - v->objective);
    c.expect(r.status == SolveStatus::converged, "trial " + std::to_string(t) + " status " + std::string(to_string(r.status)));
    c.expect(diff <= 1e-5, "trial " + std::to_string(t) + " diff " + fmt("%.3e", diff));
    worst = std::max(worst, diff);
  }
  return c.finish("20 LPs, worst objective difference " + fmt("%.2e", worst));
}

Outcome factorization_invariants() {
  Checker c;
  Rng rng(7007);
  double worst_rec = 0.0, worst_orth = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + rng.below(14), n = 2 + rng.below(14);
    const std::size_t r = 1 + rng.below(std::min(m, n));
    const DenseMatrix a = oracle::planted_rank_matrix(rng, m, n, r);
    const PivotedQR f = qr_column_pivoting(a);
    const DenseMatrix qr = multiply(f.q, f.r);
    const DenseMatrix qtq = multiply(f.q.transpose(), f.q);
    double rec = 0.0, orth = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) rec = std::max(rec, std::abs(a(i, f.perm[j]) - qr(i, j)));
      for (std::size_t j = 0; j < m; ++j) orth = std::max(orth, std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)));
    }
    rec /= 1 + a.max_abs();
    bool monotone = true;
    for (std::size_t k = 1; k < std::min(m, n); ++k) {
      monotone = monotone && std::abs(f.r(k, k)) <= std::abs(f.r(k - 1, k - 1)) * (1 + 1e-12);
    }
    const std::string tag = "matrix " + std::to_string(t) + " ";
    c.expect(rec <= 1e-10, tag + "reconstruction " + fmt("%.3e", rec));
    c.expect(orth <= 1e-10, tag + "orthonormality " + fmt("%.3e", orth));
    c.expect(monotone, tag + "diagonal not monotone");
    c.expect(f.rank == r, tag + "rank " + std::to_string(f.rank) + " planted " + std::to_string(r));
    c.expect(oracle::gaussian_rank(a) == r, tag + "elimination rank disagrees with the planted rank");
    worst_rec = std::max(worst_rec, rec);
    worst_orth = std::max(worst_orth, orth);
  }
  return c.finish("50 matrices, worst reconstruction " + fmt("%.2e", worst_rec) + ", worst orthonormality " +
                  fmt("%.2e", worst_orth));
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TRLP_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

Outcome determinism() {
  Checker c;
  const std::string args = "bench --m 10,20 --count 2 --rank-deficient 2 --noise 1e-5 --solver both --seed 42 --jobs 3";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  c.expect(first.code == 0 && second.code == 0, "bench exit codes " + std::to_string(first.code) + ", " +
                                                    std::to_string(second.code));
  const std::string a = drop_last_column(first.out), b = drop_last_column(second.out);
  const auto rows = std::count(a.begin(), a.end(), '\n');
  c.expect(rows == 9, "expected 9 CSV lines, got " + std::to_string(rows));
  c.expect(a == b, "CSV differs outside the seconds column");
  return c.finish(std::to_string(rows - 1) + " rows identical apart from seconds");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<NoisyInstance> noisy;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"certificate optimality", certificate_optimality},
      {"robustness contrast",
       [&] {
         noisy = build_noisy_instances();
         return robustness_contrast(noisy);
       }},
      {"least-squares repair", [&] { return least_squares_repair(noisy); }},
      {"newton oracle equivalence", newton_equivalence},
      {"property suite", property_suite},
      {"tiny LP vertex oracle", tiny_lp_oracle},
      {"factorization invariants", factorization_invariants},
      {"bench determinism", determinism},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
              << o.detail << " (" << fmt("%.2f", secs) << " s)" << std::endl;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (all ? "all criteria passed" : "some criteria failed") << " in " << fmt("%.2f", total) << " s\n";
  return all ? 0 : 1;
}
