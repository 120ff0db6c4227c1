#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mvlrssc/types.hpp"

namespace mvlrssc {

/// The four augmented-Lagrangian penalty weights plus their schedule.
struct PenaltyState {
  double mu1, mu2, mu3, mu4;
  double rho;
  double mu_max;

  static PenaltyState from_config(const SolverConfig& cfg) {
    return {cfg.mu_init, cfg.mu_init, cfg.mu_init, cfg.mu_init, cfg.rho, cfg.mu_max};
  }
};

/// mu_i <- min(rho * mu_i, mu_max), applied once per outer iteration.
PenaltyState penalty_step(const PenaltyState& p);

/// Per-view ADMM iterates. L1 is D^(v) x N and only used in Exact mode
/// (0 x 0 otherwise); all other matrices are N x N.
struct AdmmViewState {
  Matrix A, C1, C2, C3;
  Matrix L1, L2, L3, L4;

  static AdmmViewState zero(int n, int d_exact = 0);
};

/// Solver input: per-view data matrices (linear modes) or per-view Gram
/// matrices (kernel mode). Exactly one of the two must be nonempty.
struct SolveInput {
  std::vector<Matrix> data;
  std::vector<Matrix> grams;
  SolverConfig config;

  int n_views() const { return static_cast<int>(data.empty() ? grams.size() : data.size()); }
};

struct ConvergenceReport {
  bool converged = false;
  int iterations = 0;
  /// residual_trace[it][view] = {|A-C1|_inf, |A-C2|_inf, |A-C3|_inf, |A_k - A_{k-1}|_inf}
  std::vector<std::vector<std::array<double, 4>>> residual_trace;
  /// Empty when SolverConfig::record_objective is off.
  std::vector<double> objective_trace;
};

struct RepresentationResult {
  std::vector<Matrix> representations;  // final C^(v) (zero diagonal)
  std::optional<Matrix> centroid;       // present iff mode == Centroid
  ConvergenceReport report;
};

// --- Per-iteration update rules ---------------------------------------------

/// Exact-fidelity A update: solves
/// [mu1 X^T X + (mu2+mu3+mu4) I] A = mu1 X^T X + mu2 C2 + mu3 C1 + mu4 C3
///                                   + X^T L1 - L2 - L3 - L4
/// as an SPD system. The two-argument form computes X^T X itself; the
/// gram-carrying overload reuses a cached product.
Matrix update_a_exact(const AdmmViewState& view, const Matrix& x, const PenaltyState& p);
Matrix update_a_exact(const AdmmViewState& view, const Matrix& x, const Matrix& gram,
                      const PenaltyState& p);

/// Noisy/kernel A update: solves
/// [G + (mu2+mu3+mu4) I] A = G + mu2 C2 + mu3 C1 + mu4 C3 - L2 - L3 - L4
/// where G is X^T X in linear mode or the Gram matrix in kernel mode.
Matrix update_a_noisy(const AdmmViewState& view, const Matrix& gram, const PenaltyState& p);

/// C1 = svt(A + L3/mu3, beta1/mu3).
Matrix update_c1(const Matrix& a, const Matrix& l3, double beta1, double mu3);

/// C2 = soft_threshold(A + L2/mu2, beta2/mu2) with the diagonal zeroed.
Matrix update_c2(const Matrix& a, const Matrix& l2, double beta2, double mu2);

/// Pairwise consensus update:
/// C3 = [2 lambda (n_v - 1) + mu4]^-1 (2 lambda sum_w C^(w) + mu4 A + L4)
/// where `others` holds the other views' consensus iterates.
Matrix update_c3_pairwise(const Matrix& a, const Matrix& l4, const std::vector<Matrix>& others,
                          double lambda_v, double mu4);

/// Centroid consensus update: C3 = (2 lambda + mu4)^-1 (2 lambda C* + mu4 A + L4).
Matrix update_c3_centroid(const Matrix& a, const Matrix& l4, const Matrix& centroid,
                          double lambda_v, double mu4);

/// C* = sum_v lambda_v C3^(v) / sum_v lambda_v. Throws AllZeroLambda.
Matrix update_centroid(const std::vector<Matrix>& c3_views, const std::vector<double>& lambdas);

/// Dual ascent with the current penalties; x must be non-null in Exact mode
/// (L1 += mu1 (X - X A)) and null otherwise.
void update_duals(AdmmViewState& view, const Matrix* x, const PenaltyState& p);

struct ResidualCheck {
  bool converged = false;
  std::vector<std::array<double, 4>> residuals;  // per view, same order as the trace
};

/// All 4 x n_v infinity-norm residuals against epsilon.
ResidualCheck check_convergence(const std::vector<AdmmViewState>& views,
                                const std::vector<Matrix>& previous_a, double epsilon);

/// Objective value at the given representations:
/// sum_v (1/2 fidelity + beta1 |C|_* + beta2 |C|_1) + consensus term.
/// Kernel-mode fidelity is 1/2 [tr(K) - 2 tr(KC) + tr(C^T K C)].
double evaluate_objective(const std::vector<Matrix>& representations,
                          const std::optional<Matrix>& centroid, const SolveInput& input);

/**
 * @brief Runs the full ADMM loop for the configured mode.
 *
 * All iterates start at zero. Each outer iteration updates A, C1, C2, C3 and
 * the duals per view against a start-of-iteration snapshot of the other
 * views, then steps the penalties and (Centroid mode) the centroid, until
 * the four residual families drop below epsilon or max_iters is hit.
 * Non-convergence at max_iters is reported, not thrown.
 */
RepresentationResult solve(const SolveInput& input);

}  // namespace mvlrssc
