#include "mvlrssc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mvlrssc/data.hpp"
#include "mvlrssc/kernel.hpp"
#include "mvlrssc/rng.hpp"
#include "mvlrssc/spectral.hpp"

#if defined(MVLRSSC_HAVE_LAPACK)
extern "C" {
void openblas_set_num_threads(int);
char* openblas_get_corename(void);
}
#endif
#if defined(__linux__)
#include <unistd.h>
#endif

namespace mvlrssc {

using nlohmann::json;

namespace {

SolveInput build_input(const MultiViewDataset& d, const SolverConfig& cfg,
                       std::vector<double>* sigmas_out) {
  SolveInput input;
  input.config = cfg;
  if (cfg.kernel) {
    for (const Matrix& x : d.views) {
      if (cfg.kernel->kind == KernelSpec::Kind::Linear) {
        input.grams.push_back(gram_linear(x).K);
      } else {
        const double sigma = cfg.kernel->sigma_multiplier * median_pairwise_distance(x);
        if (sigmas_out) sigmas_out->push_back(sigma);
        input.grams.push_back(gram_gaussian(x, sigma).K);
      }
    }
  } else {
    input.data = d.views;
  }
  return input;
}

json stats_to_json(const MetricStats& s) { return json{{"mean", s.mean}, {"std", s.stddev}}; }

}  // namespace

RunRecord run_fit(const MultiViewDataset& dataset, const SolverConfig& config,
                  const FitOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();

  RunRecord record;
  record.config = config;
  record.k = dataset.k;
  record.restarts = opts.restarts;
  record.seed = opts.seed;

  const SolveInput input = build_input(dataset, config, &record.sigmas);
  RepresentationResult result = solve(input);

  const Matrix representation = config.mode == Mode::Centroid
                                    ? *result.centroid
                                    : average_representations(result.representations);
  const AffinityMatrix affinity = affinity_from_representation(representation);
  const std::vector<ClusterAssignment> assignments =
      spectral_clustering(affinity, dataset.k, opts.restarts, opts.seed);

  std::size_t best = 0;
  for (std::size_t r = 1; r < assignments.size(); ++r) {
    if (assignments[r].inertia < assignments[best].inertia) best = r;
  }
  record.assignment = assignments[best].labels;

  if (dataset.has_labels()) {
    std::vector<std::vector<int>> predictions;
    predictions.reserve(assignments.size());
    for (const ClusterAssignment& a : assignments) predictions.push_back(a.labels);
    record.metrics = metric_report(dataset.labels, predictions);
  }

  record.report = std::move(result.report);
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

GridResult run_grid(const MultiViewDataset& dataset, const SolverConfig& base,
                    const GridSpec& grid, const FitOptions& opts, int workers,
                    const std::function<void(int done, int total)>& progress) {
  if (!dataset.has_labels()) {
    throw InvalidConfig("grid search needs ground-truth labels to select by NMI");
  }
  if (grid.beta1.empty() || grid.lambda.empty() || grid.mu_init.empty()) {
    throw InvalidConfig("grid dimensions must be nonempty");
  }
  const bool sweep_lambda = base.mode != Mode::SingleView;
  const bool sweep_sigma = base.kernel && base.kernel->kind == KernelSpec::Kind::Gaussian;
  if (sweep_sigma && grid.sigma_mult.empty()) throw InvalidConfig("sigma grid must be nonempty");

  std::vector<GridPoint> points;
  std::vector<SolverConfig> configs;
  const std::vector<double> lambda_values =
      sweep_lambda ? grid.lambda : std::vector<double>{base.lambda.front()};
  const std::vector<double> sigma_values =
      sweep_sigma ? grid.sigma_mult : std::vector<double>{0.0};
  for (double beta1 : grid.beta1) {
    for (double lambda : lambda_values) {
      for (double mu : grid.mu_init) {
        for (double sigma : sigma_values) {
          SolverConfig cfg = base;
          cfg.beta1 = beta1;
          cfg.beta2 = 1.0 - beta1;
          cfg.lambda = {lambda};
          cfg.mu_init = mu;
          if (sweep_sigma) cfg.kernel->sigma_multiplier = sigma;
          cfg.record_objective = false;  // sweep points skip the trace SVDs

          GridPoint point;
          point.index = static_cast<int>(points.size());
          point.beta1 = beta1;
          point.lambda = lambda;
          point.mu_init = mu;
          if (sweep_sigma) point.sigma_mult = sigma;
          points.push_back(point);
          configs.push_back(std::move(cfg));
        }
      }
    }
  }

  const int total = static_cast<int>(points.size());
  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    while (!failed.load()) {
      const int i = next.fetch_add(1);
      if (i >= total) break;
      try {
        FitOptions point_opts{opts.restarts, derive_seed(opts.seed, static_cast<std::uint64_t>(i))};
        const RunRecord record = run_fit(dataset, configs[static_cast<std::size_t>(i)], point_opts);
        points[static_cast<std::size_t>(i)].mean_nmi = record.metrics->nmi.mean;
        const int completed = done.fetch_add(1) + 1;
        if (progress) {
          std::lock_guard<std::mutex> lock(error_mutex);
          progress(completed, total);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
      }
    }
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  int best_index = 0;
  for (int i = 1; i < total; ++i) {
    if (points[static_cast<std::size_t>(i)].mean_nmi >
        points[static_cast<std::size_t>(best_index)].mean_nmi) {
      best_index = i;  // ties keep the earlier grid point
    }
  }

  SolverConfig best_config = configs[static_cast<std::size_t>(best_index)];
  best_config.record_objective = true;
  FitOptions best_opts{opts.restarts, derive_seed(opts.seed, static_cast<std::uint64_t>(best_index))};

  GridResult result;
  result.sweep = std::move(points);
  result.best = run_fit(dataset, best_config, best_opts);
  result.best_index = best_index;
  return result;
}

namespace {

MultiViewDataset subsample_blockwise(const MultiViewDataset& d, int n) {
  // Synthetic labels come in sorted component blocks; take a proportional
  // prefix of each block so subsamples stay balanced.
  const int total = d.n_points();
  std::vector<std::pair<int, int>> blocks;  // (start, count)
  int start = 0;
  for (int i = 1; i <= total; ++i) {
    if (i == total || d.labels[static_cast<std::size_t>(i)] != d.labels[static_cast<std::size_t>(start)]) {
      blocks.emplace_back(start, i - start);
      start = i;
    }
  }
  std::vector<int> take(blocks.size());
  int assigned = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    take[b] = static_cast<int>(static_cast<long long>(n) * blocks[b].second / total);
    assigned += take[b];
  }
  for (std::size_t b = 0; assigned < n; b = (b + 1) % blocks.size()) {
    if (take[b] < blocks[b].second) {
      ++take[b];
      ++assigned;
    }
  }

  std::vector<int> indices;
  indices.reserve(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int i = 0; i < take[b]; ++i) indices.push_back(blocks[b].first + i);
  }

  MultiViewDataset out;
  out.k = d.k;
  for (const Matrix& x : d.views) {
    Matrix sub(x.rows(), n);
    for (int i = 0; i < n; ++i) sub.col(i) = x.col(indices[static_cast<std::size_t>(i)]);
    out.views.push_back(std::move(sub));
  }
  out.labels.reserve(static_cast<std::size_t>(n));
  for (int i : indices) out.labels.push_back(d.labels[static_cast<std::size_t>(i)]);
  return validate_dataset(std::move(out));
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int repeats,
                                const SolverConfig& base, std::uint64_t seed) {
  if (sizes.empty()) throw InvalidConfig("bench needs at least one size");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw InvalidConfig("bench sizes must be ascending");
  }
  if (sizes.front() < 2) throw InvalidConfig("bench sizes must be >= 2");
  if (repeats < 1) throw InvalidConfig("bench repeats must be >= 1");

  SyntheticSpec spec = SyntheticSpec::benchmark(seed);
  spec.n_points = std::max(spec.n_points, sizes.back());
  const MultiViewDataset full = generate_synthetic(spec);

  std::vector<BenchRow> rows;
  for (int n : sizes) {
    const MultiViewDataset sub = subsample_blockwise(full, n);
    SolverConfig cfg = base;
    cfg.record_objective = false;
    const SolveInput input = build_input(sub, cfg, nullptr);
    double total_seconds = 0;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      (void)solve(input);
      total_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rows.push_back({n, repeats, total_seconds / repeats});
  }
  return rows;
}

std::string record_to_jsonl(const RunRecord& record, const std::string& type,
                            std::optional<int> grid_index) {
  const SolverConfig& cfg = record.config;
  json j;
  j["type"] = type;
  if (grid_index) j["grid_index"] = *grid_index;
  j["mode"] = to_string(cfg.mode);
  j["fidelity"] = to_string(cfg.fidelity);
  if (cfg.kernel) {
    j["kernel"] = {{"kind", to_string(cfg.kernel->kind)},
                   {"sigma_multiplier", cfg.kernel->sigma_multiplier}};
  } else {
    j["kernel"] = nullptr;
  }
  j["beta1"] = cfg.beta1;
  j["beta2"] = cfg.beta2;
  j["lambda"] = cfg.lambda;
  j["mu_init"] = cfg.mu_init;
  j["rho"] = cfg.rho;
  j["mu_max"] = cfg.mu_max;
  j["epsilon"] = cfg.epsilon;
  j["max_iters"] = cfg.max_iters;
  j["k"] = record.k;
  j["restarts"] = record.restarts;
  j["seed"] = record.seed;
  if (!record.sigmas.empty()) j["sigmas"] = record.sigmas;
  j["converged"] = record.report.converged;
  j["iterations"] = record.report.iterations;
  j["residual_trace"] = record.report.residual_trace;
  j["objective_trace"] = record.report.objective_trace;
  j["assignment"] = record.assignment;
  if (record.metrics) {
    j["metrics"] = {{"fscore", stats_to_json(record.metrics->fscore)},
                    {"precision", stats_to_json(record.metrics->precision)},
                    {"recall", stats_to_json(record.metrics->recall)},
                    {"nmi", stats_to_json(record.metrics->nmi)},
                    {"adjusted_rand", stats_to_json(record.metrics->adjusted_rand)}};
  } else {
    j["metrics"] = nullptr;
  }
  return j.dump();
}

std::string grid_point_to_jsonl(const GridPoint& point) {
  json j;
  j["type"] = "grid_point";
  j["index"] = point.index;
  j["beta1"] = point.beta1;
  j["lambda"] = point.lambda;
  j["mu_init"] = point.mu_init;
  if (point.sigma_mult) {
    j["sigma_mult"] = *point.sigma_mult;
  } else {
    j["sigma_mult"] = nullptr;
  }
  j["mean_nmi"] = point.mean_nmi;
  return j.dump();
}

std::string bench_row_to_jsonl(const BenchRow& row) {
  json j;
  j["type"] = "bench";
  j["n_points"] = row.n_points;
  j["repeats"] = row.repeats;
  j["mean_seconds"] = row.mean_seconds;
  return j.dump();
}

std::string trace_table(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "iter\terr_norm\tresid_sum\tobjective\n";
  if (report.residual_trace.empty()) return out.str();
  const std::size_t n_views = report.residual_trace.front().size();
  std::vector<double> first_sums(n_views, 0.0);
  for (std::size_t v = 0; v < n_views; ++v) {
    for (double r : report.residual_trace.front()[v]) first_sums[v] += r;
  }
  char buf[128];
  for (std::size_t it = 0; it < report.residual_trace.size(); ++it) {
    double err_norm = 0;
    double resid_sum = 0;
    for (std::size_t v = 0; v < n_views; ++v) {
      double sum = 0;
      double max_r = 0;
      for (double r : report.residual_trace[it][v]) {
        sum += r;
        max_r = std::max(max_r, r);
      }
      if (first_sums[v] > 0) err_norm += sum / first_sums[v];
      resid_sum += max_r;
    }
    const double objective =
        it < report.objective_trace.size() ? report.objective_trace[it] : std::nan("");
    std::snprintf(buf, sizeof(buf), "%zu\t%.12g\t%.12g\t%.12g\n", it + 1, err_norm, resid_sum,
                  objective);
    out << buf;
  }
  return out.str();
}

void pin_blas_threads() {
#if defined(MVLRSSC_HAVE_LAPACK)
  openblas_set_num_threads(1);
#endif
}

void reexec_with_tuned_blas_if_needed(char** argv) {
#if defined(MVLRSSC_HAVE_LAPACK) && defined(__linux__)
  if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
  if (std::getenv("MVLRSSC_BLAS_REEXECED") != nullptr) return;
  const char* corename = openblas_get_corename();
  // A modern core type means runtime dispatch worked; nothing to fix.
  if (corename == nullptr ||
      (std::strcmp(corename, "Prescott") != 0 && std::strcmp(corename, "generic") != 0)) {
    return;
  }
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  const char* target = nullptr;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("flags", 0) != 0) continue;
    std::istringstream tokens(line);
    std::string tok;
    bool avx2 = false, fma = false, avx512 = false;
    while (tokens >> tok) {
      if (tok == "avx512f") avx512 = true;
      if (tok == "avx2") avx2 = true;
      if (tok == "fma") fma = true;
    }
    if (avx512) target = "SKYLAKEX";
    else if (avx2 && fma) target = "HASWELL";
    break;
  }
  if (target == nullptr) return;
  setenv("OPENBLAS_CORETYPE", target, 1);
  setenv("MVLRSSC_BLAS_REEXECED", "1", 1);
  execv("/proc/self/exe", argv);
  // exec failing just leaves us on the slow kernels
#else
  (void)argv;
#endif
}

}  // namespace mvlrssc
