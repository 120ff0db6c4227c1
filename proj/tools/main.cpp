#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "mvlrssc/data.hpp"
#include "mvlrssc/harness.hpp"

namespace {

using namespace mvlrssc;

struct CommonFlags {
  std::vector<std::string> views;
  std::string labels;
  int k = 2;
  std::string mode = "pairwise";
  std::string fidelity = "noisy";
  std::string kernel_kind = "gaussian";
  double sigma_mult = 1.0;
  double beta1 = 0.5;
  double lambda = 0.5;
  double mu = 100.0;
  double rho = 1.5;
  double mu_max = 1e6;
  double epsilon = 0.0;  // 0 = per-mode default
  int max_iters = 100;
  int restarts = 20;
  std::uint64_t seed = 42;
  std::string out;
  bool rho_given = false;
  bool epsilon_given = false;
};

void add_solver_flags(CLI::App* cmd, CommonFlags& f, bool needs_views, bool needs_k) {
  auto* views = cmd->add_option("--views", f.views, "View files, one per view (rows = points)");
  if (needs_views) views->required();
  cmd->add_option("--labels", f.labels, "Ground-truth labels file, one integer per line");
  auto* k = cmd->add_option("--k", f.k, "Number of clusters");
  if (needs_k) k->required();
  cmd->add_option("--mode", f.mode, "single | pairwise | centroid")
      ->check(CLI::IsMember({"single", "pairwise", "centroid"}));
  cmd->add_option("--fidelity", f.fidelity, "exact | noisy | kernel")
      ->check(CLI::IsMember({"exact", "noisy", "kernel"}));
  cmd->add_option("--kernel", f.kernel_kind, "Kernel for --fidelity kernel: linear | gaussian")
      ->check(CLI::IsMember({"linear", "gaussian"}));
  cmd->add_option("--sigma-mult", f.sigma_mult, "Gaussian bandwidth multiplier of the median distance");
  cmd->add_option("--beta1", f.beta1, "Nuclear-norm weight; beta2 is always 1 - beta1");
  cmd->add_option("--lambda", f.lambda, "Consensus weight, shared across views");
  cmd->add_option("--mu", f.mu, "Initial penalty for all four constraints");
  cmd->add_option("--rho", f.rho, "Penalty growth factor")->each([&f](const std::string&) { f.rho_given = true; });
  cmd->add_option("--mu-max", f.mu_max, "Penalty cap");
  cmd->add_option("--epsilon", f.epsilon, "Convergence tolerance (default 1e-3 linear, 1e-5 kernel)")
      ->each([&f](const std::string&) { f.epsilon_given = true; });
  cmd->add_option("--max-iters", f.max_iters, "Outer iteration cap");
  cmd->add_option("--restarts", f.restarts, "k-means restarts");
  cmd->add_option("--seed", f.seed, "Base seed for all randomness");
  cmd->add_option("--out", f.out, "Write structured records here instead of stdout");
}

SolverConfig config_from_flags(const CommonFlags& f) {
  SolverConfig cfg;
  cfg.beta1 = f.beta1;
  cfg.beta2 = 1.0 - f.beta1;
  cfg.lambda = {f.lambda};
  cfg.mu_init = f.mu;
  cfg.mu_max = f.mu_max;
  cfg.max_iters = f.max_iters;
  cfg.mode = f.mode == "single" ? Mode::SingleView
             : f.mode == "centroid" ? Mode::Centroid
                                    : Mode::Pairwise;
  if (f.fidelity == "kernel") {
    cfg.fidelity = Fidelity::Noisy;
    KernelSpec spec;
    spec.kind = f.kernel_kind == "linear" ? KernelSpec::Kind::Linear : KernelSpec::Kind::Gaussian;
    spec.sigma_multiplier = f.sigma_mult;
    cfg.kernel = spec;
  } else {
    cfg.fidelity = f.fidelity == "exact" ? Fidelity::Exact : Fidelity::Noisy;
  }
  cfg.epsilon = f.epsilon_given ? f.epsilon : (cfg.kernel ? 1e-5 : 1e-3);
  cfg.rho = f.rho_given ? f.rho : (cfg.mode == Mode::SingleView ? 1.0 : 1.5);
  return cfg;
}

MultiViewDataset dataset_from_flags(const CommonFlags& f) {
  return load_views(f.views, f.labels, f.k);
}

void emit_records(const std::vector<std::string>& lines, const std::string& out) {
  if (out.empty()) {
    for (const std::string& line : lines) std::cout << line << "\n";
    return;
  }
  std::ofstream file(out);
  if (!file) throw IoError("cannot write " + out);
  for (const std::string& line : lines) file << line << "\n";
}

void print_fit_summary(const RunRecord& record) {
  std::printf("mode=%s fidelity=%s%s  converged=%s  iterations=%d\n",
              to_string(record.config.mode), to_string(record.config.fidelity),
              record.config.kernel ? (std::string(" kernel=") + to_string(record.config.kernel->kind)).c_str() : "",
              record.report.converged ? "yes" : "no (flagged)", record.report.iterations);
  if (record.metrics) {
    std::printf("F-score\tPrecision\tRecall\tNMI\tAdj-RI\n%s\n",
                record.metrics->table_row().c_str());
  } else {
    std::printf("no labels given; metrics omitted\n");
  }
}

int cmd_synth(std::uint64_t seed, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const MultiViewDataset d = generate_synthetic(seed);
  for (std::size_t v = 0; v < d.views.size(); ++v) {
    save_view(out_dir + "/view" + std::to_string(v + 1) + ".txt", d.views[v]);
  }
  save_labels(out_dir + "/labels.txt", d.labels);
  std::printf("wrote %zu views (%d x %d) and labels to %s\n", d.views.size(),
              static_cast<int>(d.views[0].rows()), d.n_points(), out_dir.c_str());
  return 0;
}

int cmd_fit(const CommonFlags& f) {
  const MultiViewDataset dataset = dataset_from_flags(f);
  const RunRecord record = run_fit(dataset, config_from_flags(f), {f.restarts, f.seed});
  emit_records({record_to_jsonl(record)}, f.out);
  print_fit_summary(record);
  return 0;
}

int cmd_grid(const CommonFlags& f, int workers) {
  const MultiViewDataset dataset = dataset_from_flags(f);
  SolverConfig base = config_from_flags(f);
  const GridResult result = run_grid(dataset, base, GridSpec{}, {f.restarts, f.seed}, workers);

  std::vector<std::string> lines;
  lines.reserve(result.sweep.size() + 1);
  for (const GridPoint& p : result.sweep) lines.push_back(grid_point_to_jsonl(p));
  lines.push_back(record_to_jsonl(result.best, "grid_best", result.best_index));
  emit_records(lines, f.out);

  const GridPoint& best = result.sweep[static_cast<std::size_t>(result.best_index)];
  std::printf("grid points: %zu\nbest index=%d beta1=%g lambda=%g mu=%g", result.sweep.size(),
              best.index, best.beta1, best.lambda, best.mu_init);
  if (best.sigma_mult) std::printf(" sigma_mult=%g", *best.sigma_mult);
  std::printf(" mean_nmi=%.3f\n", best.mean_nmi);
  print_fit_summary(result.best);
  return 0;
}

int cmd_bench(const CommonFlags& f, const std::vector<int>& sizes, int repeats) {
  const std::vector<BenchRow> rows = run_bench(sizes, repeats, config_from_flags(f), f.seed);
  std::vector<std::string> lines;
  for (const BenchRow& row : rows) lines.push_back(bench_row_to_jsonl(row));
  emit_records(lines, f.out);
  std::printf("N\tmean_seconds\tn\n");
  for (const BenchRow& row : rows) {
    std::printf("%d\t%.4f\t%d\n", row.n_points, row.mean_seconds, row.repeats);
  }
  return 0;
}

int cmd_trace(const CommonFlags& f) {
  const MultiViewDataset dataset = dataset_from_flags(f);
  SolverConfig cfg = config_from_flags(f);
  cfg.record_objective = true;
  const RunRecord record = run_fit(dataset, cfg, {f.restarts, f.seed});
  const std::string table = trace_table(record.report);
  if (f.out.empty()) {
    std::fputs(table.c_str(), stdout);
  } else {
    std::ofstream file(f.out);
    if (!file) throw IoError("cannot write " + f.out);
    file << table;
    std::printf("converged=%s iterations=%d trace written to %s\n",
                record.report.converged ? "yes" : "no (flagged)", record.report.iterations,
                f.out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  mvlrssc::reexec_with_tuned_blas_if_needed(argv);
  mvlrssc::pin_blas_threads();

  CLI::App app{"Multi-view low-rank sparse subspace clustering"};
  app.require_subcommand(1);

  std::uint64_t synth_seed = 42;
  std::string synth_out = ".";
  auto* synth = app.add_subcommand("synth", "Generate the two-view Gaussian mixture benchmark");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out-dir", synth_out, "Output directory")->required();

  CommonFlags fit_flags;
  auto* fit = app.add_subcommand("fit", "Fit one configuration and cluster");
  add_solver_flags(fit, fit_flags, true, true);

  CommonFlags grid_flags;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  auto* grid = app.add_subcommand("grid", "Exhaustive hyperparameter sweep, selects by mean NMI");
  add_solver_flags(grid, grid_flags, true, true);
  grid->add_option("--workers", workers, "Concurrent grid points");

  CommonFlags bench_flags;
  std::vector<int> sizes{200, 400, 800};
  int repeats = 10;
  auto* bench = app.add_subcommand("bench", "Time the solver on synthetic subsamples");
  add_solver_flags(bench, bench_flags, false, false);
  bench->add_option("--sizes", sizes, "Ascending point counts")->delimiter(',');
  bench->add_option("--repeats", repeats, "Runs per size");

  CommonFlags trace_flags;
  auto* trace = app.add_subcommand("trace", "Emit residual and objective traces");
  add_solver_flags(trace, trace_flags, true, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(synth_seed, synth_out);
    if (fit->parsed()) return cmd_fit(fit_flags);
    if (grid->parsed()) return cmd_grid(grid_flags, workers);
    if (bench->parsed()) return cmd_bench(bench_flags, sizes, repeats);
    if (trace->parsed()) return cmd_trace(trace_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
