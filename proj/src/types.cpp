#include "mvlrssc/types.hpp"

namespace mvlrssc {

MultiViewDataset validate_dataset(MultiViewDataset d) {
  if (d.views.empty()) throw MismatchedColumns("dataset has no views");
  const Eigen::Index n = d.views.front().cols();
  if (n < 2) throw MismatchedColumns("dataset needs at least 2 points, got " + std::to_string(n));
  for (std::size_t v = 0; v < d.views.size(); ++v) {
    const Matrix& x = d.views[v];
    if (x.cols() != n) {
      throw MismatchedColumns("view " + std::to_string(v + 1) + " has " +
                              std::to_string(x.cols()) + " points, expected " + std::to_string(n));
    }
    if (x.rows() < 1) throw NonFinite("view " + std::to_string(v + 1) + " has no features");
    if (!x.allFinite()) throw NonFinite("view " + std::to_string(v + 1) + " has non-finite entries");
  }
  if (d.k < 1) throw BadLabels("cluster count k must be positive, got " + std::to_string(d.k));
  if (!d.labels.empty()) {
    if (static_cast<Eigen::Index>(d.labels.size()) != n) {
      throw BadLabels("got " + std::to_string(d.labels.size()) + " labels for " +
                      std::to_string(n) + " points");
    }
    for (int label : d.labels) {
      if (label < 1 || label > d.k) {
        throw BadLabels("label " + std::to_string(label) + " outside [1, " + std::to_string(d.k) +
                        "]");
      }
    }
  }
  return d;
}

void validate_config(const SolverConfig& cfg, int n_views) {
  if (cfg.beta1 < 0 || cfg.beta2 < 0) throw InvalidConfig("beta1 and beta2 must be nonnegative");
  if (cfg.lambda.empty()) throw InvalidConfig("lambda must have at least one entry");
  for (double l : cfg.lambda) {
    if (l < 0) throw InvalidConfig("lambda entries must be nonnegative");
  }
  if (n_views > 0 && cfg.lambda.size() != 1 &&
      cfg.lambda.size() != static_cast<std::size_t>(n_views)) {
    throw InvalidConfig("lambda needs one shared value or one per view (" +
                        std::to_string(n_views) + "), got " + std::to_string(cfg.lambda.size()));
  }
  if (!(cfg.mu_init > 0)) throw InvalidConfig("mu_init must be positive");
  if (!(cfg.mu_max > 0)) throw InvalidConfig("mu_max must be positive");
  if (cfg.mu_init > cfg.mu_max) throw InvalidConfig("mu_init must not exceed mu_max");
  if (cfg.rho < 1) throw InvalidConfig("rho must be >= 1");
  if (!(cfg.epsilon > 0)) throw InvalidConfig("epsilon must be positive");
  if (cfg.max_iters < 1) throw InvalidConfig("max_iters must be positive");
  if (cfg.kernel) {
    if (cfg.fidelity == Fidelity::Exact) {
      throw InvalidConfig("kernelization is defined for the noisy objective only");
    }
    if (cfg.kernel->kind == KernelSpec::Kind::Gaussian && !(cfg.kernel->sigma_multiplier > 0)) {
      throw InvalidConfig("sigma_multiplier must be positive");
    }
  }
}

std::vector<double> expand_lambda(const SolverConfig& cfg, int n_views) {
  if (cfg.lambda.size() == 1) {
    return std::vector<double>(static_cast<std::size_t>(n_views), cfg.lambda.front());
  }
  if (cfg.lambda.size() != static_cast<std::size_t>(n_views)) {
    throw InvalidConfig("lambda needs one shared value or one per view");
  }
  return cfg.lambda;
}

const char* to_string(Fidelity f) {
  return f == Fidelity::Exact ? "exact" : "noisy";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::SingleView: return "single";
    case Mode::Pairwise: return "pairwise";
    case Mode::Centroid: return "centroid";
  }
  return "?";
}

const char* to_string(KernelSpec::Kind k) {
  return k == KernelSpec::Kind::Linear ? "linear" : "gaussian";
}

}  // namespace mvlrssc
