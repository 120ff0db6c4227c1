#pragma once

#include "mvlrssc/types.hpp"

namespace mvlrssc {

/// Closed-form low-rank representation for clean data: C = V V^T from the
/// skinny SVD of X. Satisfies X = X C and C^2 = C.
Matrix lrr_exact(const Matrix& x);

/// Closed-form solution of min 1/2 |X - XC|_F^2 + lambda |C|_*:
/// C = V1 (I - lambda^-1 S1^-2) V1^T over the singular values with
/// sigma > 1/sqrt(lambda); zero when none qualify.
Matrix lrr_noisy(const Matrix& x, double lambda);

}  // namespace mvlrssc
