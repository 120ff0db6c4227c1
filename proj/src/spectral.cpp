#include "mvlrssc/spectral.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "linalg_backend.hpp"
#include "mvlrssc/rng.hpp"

namespace mvlrssc {

namespace {

constexpr int kLloydMaxIters = 300;
constexpr double kLloydRelTol = 1e-9;
constexpr double kDegreeFloor = 1e-12;

std::vector<int> sample_distinct_indices(int n, int k, Rng& rng) {
  std::vector<int> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + rng.uniform_int(n - i);
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  }
  indices.resize(static_cast<std::size_t>(k));
  return indices;
}

ClusterAssignment kmeans_restart(const Matrix& points, int k, std::uint64_t restart_seed) {
  Rng rng(restart_seed);
  const auto init = sample_distinct_indices(static_cast<int>(points.rows()), k, rng);
  return detail::lloyd(points, k, init, kLloydMaxIters, kLloydRelTol).assignment;
}

}  // namespace

AffinityMatrix affinity_from_representation(const Matrix& c) {
  if (!c.allFinite()) throw NonFinite("affinity_from_representation: non-finite input");
  AffinityMatrix a;
  const Matrix abs = c.cwiseAbs();
  a.W = abs + abs.transpose();
  return a;
}

Matrix average_representations(const std::vector<Matrix>& c_views) {
  if (c_views.empty()) throw LengthMismatch("average_representations needs at least one view");
  Matrix sum = c_views.front();
  for (std::size_t v = 1; v < c_views.size(); ++v) {
    if (c_views[v].rows() != sum.rows() || c_views[v].cols() != sum.cols()) {
      throw MismatchedColumns("representation matrices have different shapes");
    }
    sum += c_views[v];
  }
  return sum / static_cast<double>(c_views.size());
}

Matrix spectral_embedding(const AffinityMatrix& affinity, int k) {
  const Eigen::Index n = affinity.W.rows();
  if (k < 1 || k > n) throw BadK("spectral_embedding: k must be in [1, N]");
  Vector degree = affinity.W.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (degree(i) <= 0.0) degree(i) = kDegreeFloor;
  }
  const Vector scale = degree.array().rsqrt();
  // Elementwise W .* (s s^T) keeps the matrix exactly symmetric.
  const Matrix normalized = affinity.W.array() * (scale * scale.transpose()).array();
  Vector evals;
  Matrix evecs;
  if (!detail::sym_eig_topk(normalized, k, evals, evecs)) {
    throw EigenFailure("spectral_embedding: eigendecomposition failed");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = evecs.row(i).norm();
    if (norm > 0.0) evecs.row(i) /= norm;
  }
  return evecs;
}

namespace detail {

LloydRun lloyd(const Matrix& points, int k, const std::vector<int>& init_indices, int max_iters,
               double rel_tol) {
  const Eigen::Index n = points.rows();
  Matrix centroids(k, points.cols());
  for (int c = 0; c < k; ++c) centroids.row(c) = points.row(init_indices[static_cast<std::size_t>(c)]);

  LloydRun run;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> previous;
  double previous_inertia = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < max_iters; ++iter) {
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_dist = (points.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double dist = (points.row(i) - centroids.row(c)).squaredNorm();
        if (dist < best_dist) {
          best_dist = dist;
          best = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = best;
      inertia += best_dist;
    }
    run.inertia_history.push_back(inertia);

    const bool stable = labels == previous;
    const bool tiny_change =
        !previous.empty() &&
        std::abs(previous_inertia - inertia) <= rel_tol * std::max(previous_inertia, 1e-300);
    if (stable || tiny_change) break;
    previous = labels;
    previous_inertia = inertia;

    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      // Empty clusters keep their previous centroid.
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
  }

  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  run.assignment.degenerate =
      std::any_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
  run.assignment.inertia = run.inertia_history.back();
  run.assignment.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    run.assignment.labels[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(i)] + 1;
  }
  return run;
}

}  // namespace detail

ClusterAssignment kmeans(const Matrix& points, int k, int restarts, std::uint64_t seed) {
  if (k < 1 || k > points.rows()) throw BadK("kmeans: k must be in [1, N]");
  if (restarts < 1) throw BadK("kmeans: restarts must be >= 1");
  ClusterAssignment best;
  for (int r = 0; r < restarts; ++r) {
    ClusterAssignment candidate = kmeans_restart(points, k, derive_seed(seed, static_cast<std::uint64_t>(r)));
    if (r == 0 || candidate.inertia < best.inertia) best = std::move(candidate);
  }
  return best;
}

std::vector<ClusterAssignment> spectral_clustering(const AffinityMatrix& affinity, int k,
                                                   int restarts, std::uint64_t seed) {
  if (restarts < 1) throw BadK("spectral_clustering: restarts must be >= 1");
  const Matrix embedding = spectral_embedding(affinity, k);
  std::vector<ClusterAssignment> assignments;
  assignments.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    assignments.push_back(kmeans_restart(embedding, k, derive_seed(seed, static_cast<std::uint64_t>(r))));
  }
  return assignments;
}

}  // namespace mvlrssc
