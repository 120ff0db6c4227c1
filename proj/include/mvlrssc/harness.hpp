#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mvlrssc/admm.hpp"
#include "mvlrssc/metrics.hpp"
#include "mvlrssc/types.hpp"

namespace mvlrssc {

/// Hyperparameter sweep: beta2 is always 1 - beta1, sigma multipliers apply
/// to kernel runs only. Selection is by mean NMI over the k-means restarts.
struct GridSpec {
  std::vector<double> beta1{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> lambda{0.3, 0.5, 0.7, 0.9};
  std::vector<double> mu_init{1e1, 1e2, 1e3, 1e4};
  std::vector<double> sigma_mult{0.5, 1.0, 5.0, 10.0, 50.0};
};

struct FitOptions {
  int restarts = 20;
  std::uint64_t seed = 42;
};

/// One full pipeline run: solve -> affinity -> spectral clustering -> metrics.
struct RunRecord {
  SolverConfig config;
  int k = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::vector<double> sigmas;          // per-view Gaussian bandwidths, kernel mode
  ConvergenceReport report;
  std::vector<int> assignment;         // lowest-inertia restart
  std::optional<MetricReport> metrics; // present when the dataset has labels
  double wall_seconds = 0.0;           // not serialized; see record_to_jsonl
};

RunRecord run_fit(const MultiViewDataset& dataset, const SolverConfig& config,
                  const FitOptions& opts);

struct GridPoint {
  int index = 0;
  double beta1 = 0;
  double lambda = 0;
  double mu_init = 0;
  std::optional<double> sigma_mult;
  double mean_nmi = 0;
};

struct GridResult {
  std::vector<GridPoint> sweep;
  RunRecord best;    // argmax mean NMI, re-run with the objective trace on
  int best_index = 0;
};

/**
 * @brief Exhaustive sweep of the grid for one algorithm variant.
 *
 * `base` fixes mode, fidelity, kernel kind, rho, epsilon and max_iters; the
 * grid overrides beta1/beta2, lambda, mu_init and (kernel) sigma multiplier.
 * Penalties restart from mu_init at every point. Points run concurrently up
 * to `workers`; results are deterministic in (dataset, grid, seed) because
 * every point derives its own seed from (seed, point index).
 */
GridResult run_grid(const MultiViewDataset& dataset, const SolverConfig& base,
                    const GridSpec& grid, const FitOptions& opts, int workers = 1,
                    const std::function<void(int done, int total)>& progress = {});

struct BenchRow {
  int n_points = 0;
  int repeats = 0;
  double mean_seconds = 0;
};

/// Times solve() on balanced subsamples of the synthetic benchmark at each
/// size (ascending). Gram construction, clustering and metrics are excluded.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int repeats,
                                const SolverConfig& base, std::uint64_t seed);

// --- Serialization ----------------------------------------------------------

/// One JSON line. Deterministic for a fixed (dataset, config, seed):
/// wall_seconds is deliberately not included.
std::string record_to_jsonl(const RunRecord& record, const std::string& type = "fit",
                            std::optional<int> grid_index = std::nullopt);
std::string grid_point_to_jsonl(const GridPoint& point);
std::string bench_row_to_jsonl(const BenchRow& row);

/// iter / err_norm / resid_sum / objective table. err_norm is each view's
/// four-residual sum scaled by its first-iteration value, summed over views;
/// resid_sum is the raw per-view max residual summed over views.
std::string trace_table(const ConvergenceReport& report);

// --- Runtime environment ----------------------------------------------------

/// Pins the BLAS backend to one thread; concurrency belongs to grid workers.
void pin_blas_threads();

/// OpenBLAS's runtime CPU dispatch can fall back to a generic kernel when a
/// hypervisor masks the CPU model string, costing 2-3x on SVD-heavy runs.
/// When that happens (and OPENBLAS_CORETYPE is unset) this re-executes the
/// current binary once with the core type pinned to match the CPU's actual
/// instruction set. No-op everywhere else.
void reexec_with_tuned_blas_if_needed(char** argv);

}  // namespace mvlrssc
