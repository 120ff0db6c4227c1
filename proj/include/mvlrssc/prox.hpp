#pragma once

#include "mvlrssc/types.hpp"

namespace mvlrssc {

/// Rank-truncated SVD: M = U * S.asDiagonal() * V^T with only the singular
/// values above 1e-12 * max(S) retained.
struct SkinnySvd {
  Matrix U;  // D x r, orthonormal columns
  Vector S;  // r positive values, nonincreasing
  Matrix V;  // N x r, orthonormal columns

  int rank() const { return static_cast<int>(S.size()); }
};

/// Throws SvdFailure if the decomposition does not converge.
SkinnySvd skinny_svd(const Matrix& m);

/// Entry-wise shrinkage y = sign(x) * max(|x| - tau, 0).
Matrix soft_threshold(const Matrix& m, double tau);

/// Singular value thresholding: shrink the singular values of m by tau.
/// Proximal operator of tau * nuclear norm.
Matrix svt(const Matrix& m, double tau);

}  // namespace mvlrssc
