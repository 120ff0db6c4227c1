#pragma once

#include <optional>

#include "mvlrssc/types.hpp"

namespace mvlrssc {

struct GramMatrix {
  Matrix K;  // N x N, symmetric
  KernelSpec::Kind kind = KernelSpec::Kind::Linear;
  std::optional<double> sigma;  // Gaussian bandwidth actually used
};

/// K = X^T X.
GramMatrix gram_linear(const Matrix& x);

/// Median over the N(N-1)/2 unordered pairwise Euclidean distances;
/// even count averages the two middle values.
/// Throws DegenerateData when every pairwise distance is zero.
double median_pairwise_distance(const Matrix& x);

/// K_ij = exp(-|x_i - x_j|^2 / (2 sigma^2)). Unit diagonal and exact symmetry
/// by construction (upper triangle computed, then mirrored).
GramMatrix gram_gaussian(const Matrix& x, double sigma);

}  // namespace mvlrssc
