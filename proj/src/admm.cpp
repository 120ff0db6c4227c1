#include "mvlrssc/admm.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <utility>

#include "linalg_backend.hpp"
#include "mvlrssc/prox.hpp"

namespace mvlrssc {

PenaltyState penalty_step(const PenaltyState& p) {
  PenaltyState next = p;
  next.mu1 = std::min(p.rho * p.mu1, p.mu_max);
  next.mu2 = std::min(p.rho * p.mu2, p.mu_max);
  next.mu3 = std::min(p.rho * p.mu3, p.mu_max);
  next.mu4 = std::min(p.rho * p.mu4, p.mu_max);
  return next;
}

AdmmViewState AdmmViewState::zero(int n, int d_exact) {
  AdmmViewState s;
  s.A = Matrix::Zero(n, n);
  s.C1 = Matrix::Zero(n, n);
  s.C2 = Matrix::Zero(n, n);
  s.C3 = Matrix::Zero(n, n);
  s.L1 = Matrix::Zero(d_exact, n);
  s.L2 = Matrix::Zero(n, n);
  s.L3 = Matrix::Zero(n, n);
  s.L4 = Matrix::Zero(n, n);
  return s;
}

namespace {

Matrix a_rhs_exact(const AdmmViewState& view, const Matrix& x, const Matrix& gram,
                   const PenaltyState& p) {
  Matrix rhs = p.mu1 * gram;
  rhs += p.mu2 * view.C2;
  rhs += p.mu3 * view.C1;
  rhs += p.mu4 * view.C3;
  rhs.noalias() += x.transpose() * view.L1;
  rhs -= view.L2;
  rhs -= view.L3;
  rhs -= view.L4;
  return rhs;
}

Matrix a_rhs_noisy(const AdmmViewState& view, const Matrix& gram, const PenaltyState& p) {
  Matrix rhs = gram;
  rhs += p.mu2 * view.C2;
  rhs += p.mu3 * view.C1;
  rhs += p.mu4 * view.C3;
  rhs -= view.L2;
  rhs -= view.L3;
  rhs -= view.L4;
  return rhs;
}

Eigen::LLT<Matrix> factor_a_system(const Matrix& gram, double gram_weight, double shift) {
  Matrix lhs = gram_weight * gram;
  lhs.diagonal().array() += shift;
  Eigen::LLT<Matrix> llt(lhs);
  if (llt.info() != Eigen::Success) {
    throw SingularSystem("A-update system is not positive-definite; check the penalties");
  }
  return llt;
}

Matrix c3_from_sum(const Matrix& a, const Matrix& l4, const Matrix* others_sum, int n_others,
                   double lambda_v, double mu4) {
  const double denom = 2.0 * lambda_v * static_cast<double>(n_others) + mu4;
  Matrix numerator = mu4 * a + l4;
  if (others_sum != nullptr) numerator += 2.0 * lambda_v * (*others_sum);
  return numerator / denom;
}

double nuclear_norm(const Matrix& c) {
  Vector s;
  if (!detail::svd_values(c, s)) throw SvdFailure("nuclear norm: SVD did not converge");
  return s.sum();
}

}  // namespace

Matrix update_a_exact(const AdmmViewState& view, const Matrix& x, const Matrix& gram,
                      const PenaltyState& p) {
  const auto llt = factor_a_system(gram, p.mu1, p.mu2 + p.mu3 + p.mu4);
  Matrix rhs = a_rhs_exact(view, x, gram, p);
  llt.solveInPlace(rhs);
  return rhs;
}

Matrix update_a_exact(const AdmmViewState& view, const Matrix& x, const PenaltyState& p) {
  Matrix gram;
  gram.noalias() = x.transpose() * x;
  return update_a_exact(view, x, gram, p);
}

Matrix update_a_noisy(const AdmmViewState& view, const Matrix& gram, const PenaltyState& p) {
  const auto llt = factor_a_system(gram, 1.0, p.mu2 + p.mu3 + p.mu4);
  Matrix rhs = a_rhs_noisy(view, gram, p);
  llt.solveInPlace(rhs);
  return rhs;
}

Matrix update_c1(const Matrix& a, const Matrix& l3, double beta1, double mu3) {
  return svt(a + l3 / mu3, beta1 / mu3);
}

Matrix update_c2(const Matrix& a, const Matrix& l2, double beta2, double mu2) {
  Matrix c2 = soft_threshold(a + l2 / mu2, beta2 / mu2);
  c2.diagonal().setZero();
  return c2;
}

Matrix update_c3_pairwise(const Matrix& a, const Matrix& l4, const std::vector<Matrix>& others,
                          double lambda_v, double mu4) {
  if (others.empty()) return c3_from_sum(a, l4, nullptr, 0, lambda_v, mu4);
  Matrix sum = others.front();
  for (std::size_t w = 1; w < others.size(); ++w) sum += others[w];
  return c3_from_sum(a, l4, &sum, static_cast<int>(others.size()), lambda_v, mu4);
}

Matrix update_c3_centroid(const Matrix& a, const Matrix& l4, const Matrix& centroid,
                          double lambda_v, double mu4) {
  const double denom = 2.0 * lambda_v + mu4;
  Matrix numerator = mu4 * a + l4;
  numerator += 2.0 * lambda_v * centroid;
  return numerator / denom;
}

Matrix update_centroid(const std::vector<Matrix>& c3_views, const std::vector<double>& lambdas) {
  if (c3_views.empty() || c3_views.size() != lambdas.size()) {
    throw LengthMismatch("update_centroid: one lambda per view required");
  }
  double total = 0;
  for (double l : lambdas) total += l;
  if (!(total > 0)) throw AllZeroLambda("update_centroid: all consensus weights are zero");
  Matrix numerator = lambdas.front() * c3_views.front();
  for (std::size_t v = 1; v < c3_views.size(); ++v) numerator += lambdas[v] * c3_views[v];
  return numerator / total;
}

void update_duals(AdmmViewState& view, const Matrix* x, const PenaltyState& p) {
  if (x != nullptr) {
    view.L1 += p.mu1 * (*x - *x * view.A);
  }
  view.L2 += p.mu2 * (view.A - view.C2);
  view.L3 += p.mu3 * (view.A - view.C1);
  view.L4 += p.mu4 * (view.A - view.C3);
}

ResidualCheck check_convergence(const std::vector<AdmmViewState>& views,
                                const std::vector<Matrix>& previous_a, double epsilon) {
  ResidualCheck rc;
  rc.converged = true;
  rc.residuals.reserve(views.size());
  for (std::size_t v = 0; v < views.size(); ++v) {
    const AdmmViewState& s = views[v];
    const std::array<double, 4> r = {
        (s.A - s.C1).cwiseAbs().maxCoeff(),
        (s.A - s.C2).cwiseAbs().maxCoeff(),
        (s.A - s.C3).cwiseAbs().maxCoeff(),
        (s.A - previous_a[v]).cwiseAbs().maxCoeff(),
    };
    for (double value : r) {
      if (!(value <= epsilon)) rc.converged = false;
    }
    rc.residuals.push_back(r);
  }
  return rc;
}

double evaluate_objective(const std::vector<Matrix>& representations,
                          const std::optional<Matrix>& centroid, const SolveInput& input) {
  const SolverConfig& cfg = input.config;
  const bool kernelized = !input.grams.empty();
  const int n_v = static_cast<int>(representations.size());
  const std::vector<double> lambdas = expand_lambda(cfg, n_v);

  double total = 0;
  for (int v = 0; v < n_v; ++v) {
    const Matrix& c = representations[static_cast<std::size_t>(v)];
    double fidelity = 0;
    if (kernelized) {
      const Matrix& k = input.grams[static_cast<std::size_t>(v)];
      Matrix kc;
      kc.noalias() = k * c;
      // 1/2 |Phi - Phi C|^2 expressed through the Gram matrix.
      fidelity = 0.5 * (k.trace() - 2.0 * k.cwiseProduct(c.transpose()).sum() +
                        c.cwiseProduct(kc).sum());
    } else {
      const Matrix& x = input.data[static_cast<std::size_t>(v)];
      fidelity = 0.5 * (x - x * c).squaredNorm();
    }
    total += fidelity + cfg.beta1 * nuclear_norm(c) + cfg.beta2 * c.lpNorm<1>();
  }

  if (cfg.mode == Mode::Pairwise && n_v > 1) {
    for (int v = 0; v < n_v; ++v) {
      for (int w = 0; w < n_v; ++w) {
        if (w == v) continue;
        total += lambdas[static_cast<std::size_t>(v)] *
                 (representations[static_cast<std::size_t>(v)] -
                  representations[static_cast<std::size_t>(w)])
                     .squaredNorm();
      }
    }
  } else if (cfg.mode == Mode::Centroid && centroid.has_value()) {
    for (int v = 0; v < n_v; ++v) {
      total += lambdas[static_cast<std::size_t>(v)] *
               (representations[static_cast<std::size_t>(v)] - *centroid).squaredNorm();
    }
  }
  return total;
}

RepresentationResult solve(const SolveInput& input) {
  const SolverConfig& cfg = input.config;
  if (input.data.empty() == input.grams.empty()) {
    throw InvalidConfig("solve: provide data matrices or Gram matrices, not both");
  }
  const bool kernelized = !input.grams.empty();
  const int n_v = input.n_views();
  validate_config(cfg, n_v);
  if (kernelized && cfg.fidelity == Fidelity::Exact) {
    throw InvalidConfig("kernel input requires noisy fidelity");
  }
  if (cfg.kernel && !kernelized) {
    throw InvalidConfig("kernel configured but the input carries no Gram matrices");
  }
  if (cfg.mode == Mode::SingleView && n_v != 1) {
    throw InvalidConfig("single-view mode takes exactly one view");
  }
  const bool exact = !kernelized && cfg.fidelity == Fidelity::Exact;

  Eigen::Index n = -1;
  for (int v = 0; v < n_v; ++v) {
    const Matrix& m = kernelized ? input.grams[static_cast<std::size_t>(v)]
                                 : input.data[static_cast<std::size_t>(v)];
    if (!m.allFinite()) throw NonFinite("solve: view " + std::to_string(v + 1) + " is not finite");
    if (n < 0) n = m.cols();
    if (m.cols() != n) throw MismatchedColumns("solve: views disagree on the number of points");
    if (kernelized) {
      if (m.rows() != n) throw MismatchedColumns("solve: Gram matrices must be square");
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
        throw InvalidConfig("solve: Gram matrix " + std::to_string(v + 1) + " is not symmetric");
      }
    }
  }

  const std::vector<double> lambdas = expand_lambda(cfg, n_v);
  const auto idx = [](int v) { return static_cast<std::size_t>(v); };

  // X^T X is cached once per solve; kernel mode uses the Gram input directly.
  std::vector<Matrix> owned_grams;
  std::vector<const Matrix*> grams(static_cast<std::size_t>(n_v));
  if (kernelized) {
    for (int v = 0; v < n_v; ++v) grams[idx(v)] = &input.grams[idx(v)];
  } else {
    owned_grams.reserve(static_cast<std::size_t>(n_v));
    for (int v = 0; v < n_v; ++v) {
      const Matrix& x = input.data[idx(v)];
      Matrix g;
      g.noalias() = x.transpose() * x;
      owned_grams.push_back(std::move(g));
    }
    for (int v = 0; v < n_v; ++v) grams[idx(v)] = &owned_grams[idx(v)];
  }

  std::vector<AdmmViewState> views;
  views.reserve(static_cast<std::size_t>(n_v));
  for (int v = 0; v < n_v; ++v) {
    const int d_exact = exact ? static_cast<int>(input.data[idx(v)].rows()) : 0;
    views.push_back(AdmmViewState::zero(static_cast<int>(n), d_exact));
  }
  std::vector<Matrix> previous_a(static_cast<std::size_t>(n_v), Matrix::Zero(n, n));
  Matrix centroid = Matrix::Zero(n, n);

  PenaltyState penalties = PenaltyState::from_config(cfg);
  // The A-update factorization only depends on mu; reuse it once the
  // penalties hit mu_max.
  std::vector<Eigen::LLT<Matrix>> factors(static_cast<std::size_t>(n_v));
  std::vector<std::pair<double, double>> factor_keys(
      static_cast<std::size_t>(n_v), {std::nan(""), std::nan("")});

  ConvergenceReport report;
  const bool pairwise_consensus = cfg.mode == Mode::Pairwise && n_v > 1;
  const bool centroid_consensus = cfg.mode == Mode::Centroid && n_v > 1;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    // Consensus terms read a snapshot taken at the start of the outer
    // iteration, so the per-view updates are order-independent.
    std::vector<Matrix> c3_snapshot;
    if (pairwise_consensus) {
      c3_snapshot.reserve(static_cast<std::size_t>(n_v));
      for (int v = 0; v < n_v; ++v) c3_snapshot.push_back(views[idx(v)].C3);
    }

    for (int v = 0; v < n_v; ++v) {
      AdmmViewState& view = views[idx(v)];
      const Matrix& gram = *grams[idx(v)];

      const double gram_weight = exact ? penalties.mu1 : 1.0;
      const double shift = penalties.mu2 + penalties.mu3 + penalties.mu4;
      if (factor_keys[idx(v)] != std::make_pair(gram_weight, shift)) {
        factors[idx(v)] = factor_a_system(gram, gram_weight, shift);
        factor_keys[idx(v)] = {gram_weight, shift};
      }
      Matrix rhs = exact ? a_rhs_exact(view, input.data[idx(v)], gram, penalties)
                         : a_rhs_noisy(view, gram, penalties);
      factors[idx(v)].solveInPlace(rhs);
      view.A = std::move(rhs);
      if (!view.A.allFinite()) throw NonFinite("solve: A diverged at iteration " + std::to_string(iter));

      view.C1 = update_c1(view.A, view.L3, cfg.beta1, penalties.mu3);
      view.C2 = update_c2(view.A, view.L2, cfg.beta2, penalties.mu2);

      if (pairwise_consensus) {
        Matrix others_sum = Matrix::Zero(n, n);
        for (int w = 0; w < n_v; ++w) {
          if (w != v) others_sum += c3_snapshot[idx(w)];
        }
        view.C3 = c3_from_sum(view.A, view.L4, &others_sum, n_v - 1, lambdas[idx(v)],
                              penalties.mu4);
      } else if (centroid_consensus) {
        view.C3 = update_c3_centroid(view.A, view.L4, centroid, lambdas[idx(v)], penalties.mu4);
      } else {
        // Single view: the consensus term vanishes structurally.
        view.C3 = c3_from_sum(view.A, view.L4, nullptr, 0, lambdas[idx(v)], penalties.mu4);
      }

      update_duals(view, exact ? &input.data[idx(v)] : nullptr, penalties);
    }

    penalties = penalty_step(penalties);
    if (cfg.mode == Mode::Centroid) {
      if (centroid_consensus) {
        std::vector<Matrix> c3_views;
        c3_views.reserve(static_cast<std::size_t>(n_v));
        for (int v = 0; v < n_v; ++v) c3_views.push_back(views[idx(v)].C3);
        centroid = update_centroid(c3_views, lambdas);
      } else {
        centroid = views[0].C3;
      }
    }

    const ResidualCheck rc = check_convergence(views, previous_a, cfg.epsilon);
    report.residual_trace.push_back(rc.residuals);
    if (cfg.record_objective) {
      std::vector<Matrix> reps;
      reps.reserve(static_cast<std::size_t>(n_v));
      for (int v = 0; v < n_v; ++v) reps.push_back(views[idx(v)].C2);
      std::optional<Matrix> c_star;
      if (cfg.mode == Mode::Centroid) c_star = centroid;
      report.objective_trace.push_back(evaluate_objective(reps, c_star, input));
    }
    for (int v = 0; v < n_v; ++v) previous_a[idx(v)] = views[idx(v)].A;

    report.iterations = iter;
    if (rc.converged) {
      report.converged = true;
      break;
    }
  }

  RepresentationResult result;
  result.representations.reserve(static_cast<std::size_t>(n_v));
  for (int v = 0; v < n_v; ++v) result.representations.push_back(std::move(views[idx(v)].C2));
  if (cfg.mode == Mode::Centroid) result.centroid = std::move(centroid);
  result.report = std::move(report);
  return result;
}

}  // namespace mvlrssc
