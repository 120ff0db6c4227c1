#include "mvlrssc/baselines.hpp"

#include <cmath>

#include "mvlrssc/prox.hpp"

namespace mvlrssc {

Matrix lrr_exact(const Matrix& x) {
  const SkinnySvd d = skinny_svd(x);
  return d.V * d.V.transpose();
}

Matrix lrr_noisy(const Matrix& x, double lambda) {
  if (!(lambda > 0)) throw InvalidConfig("lrr_noisy: lambda must be positive");
  const SkinnySvd d = skinny_svd(x);
  const double threshold = 1.0 / std::sqrt(lambda);
  int r = 0;
  while (r < d.S.size() && d.S(r) > threshold) ++r;
  const Eigen::Index n = x.cols();
  if (r == 0) return Matrix::Zero(n, n);
  // V1 (I - lambda^-1 S1^-2) V1^T over the singular values above 1/sqrt(lambda).
  Vector scale(r);
  for (int i = 0; i < r; ++i) scale(i) = 1.0 - 1.0 / (lambda * d.S(i) * d.S(i));
  return d.V.leftCols(r) * scale.asDiagonal() * d.V.leftCols(r).transpose();
}

}  // namespace mvlrssc
