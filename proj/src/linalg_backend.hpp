#pragma once

#include "mvlrssc/types.hpp"

// Thin wrappers around the dense decompositions the solver leans on.
// Backed by LAPACK (dgesdd / dsyevr) when MVLRSSC_HAVE_LAPACK is set,
// otherwise by Eigen. Each returns false when the backend fails to converge;
// callers translate that into the module-level error types.

namespace mvlrssc::detail {

/// Thin SVD a = U diag(s) V^T, s nonincreasing. U is rows(a) x min, V cols(a) x min.
bool svd_thin(const Matrix& a, Matrix& u, Vector& s, Matrix& v);

/// Singular values only, nonincreasing.
bool svd_values(const Matrix& a, Vector& s);

/// The k largest eigenpairs of a symmetric matrix, eigenvalues descending.
bool sym_eig_topk(const Matrix& a, int k, Vector& evals, Matrix& evecs);

}  // namespace mvlrssc::detail
