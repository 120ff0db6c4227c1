#pragma once

#include <cstdint>
#include <vector>

#include "mvlrssc/types.hpp"

namespace mvlrssc {

struct AffinityMatrix {
  Matrix W;  // symmetric, nonnegative
};

/// W = |C| + |C|^T. Exactly symmetric.
AffinityMatrix affinity_from_representation(const Matrix& c);

/// Element-wise mean of the per-view representation matrices.
Matrix average_representations(const std::vector<Matrix>& c_views);

/**
 * @brief Normalized spectral embedding.
 *
 * Rows of the k leading eigenvectors of D^{-1/2} W D^{-1/2}, each row scaled
 * to unit norm. Zero-degree vertices get a regularized degree of 1e-12.
 */
Matrix spectral_embedding(const AffinityMatrix& affinity, int k);

struct ClusterAssignment {
  std::vector<int> labels;     // 1-based, length N
  double inertia = 0.0;
  bool degenerate = false;     // some cluster ended up empty
};

/// Lloyd k-means on row vectors with `restarts` seeded random
/// initializations; returns the restart with the lowest inertia.
ClusterAssignment kmeans(const Matrix& points, int k, int restarts, std::uint64_t seed);

/// Embedding computed once, k-means run `restarts` times on it.
/// One assignment per restart, in restart order.
std::vector<ClusterAssignment> spectral_clustering(const AffinityMatrix& affinity, int k,
                                                   int restarts, std::uint64_t seed);

namespace detail {

struct LloydRun {
  ClusterAssignment assignment;
  std::vector<double> inertia_history;  // one entry per Lloyd iteration
};

/// Single Lloyd run from the given initial centroid point indices.
LloydRun lloyd(const Matrix& points, int k, const std::vector<int>& init_indices,
               int max_iters, double rel_tol);

}  // namespace detail

}  // namespace mvlrssc
