#include "mvlrssc/prox.hpp"

#include <algorithm>
#include <cmath>

#include "linalg_backend.hpp"

namespace mvlrssc {

namespace {
constexpr double kRankCutoff = 1e-12;  // relative to the largest singular value
}

SkinnySvd skinny_svd(const Matrix& m) {
  if (!m.allFinite()) throw SvdFailure("skinny_svd: input has non-finite entries");
  Matrix u, v;
  Vector s;
  if (!detail::svd_thin(m, u, s, v)) throw SvdFailure("skinny_svd: decomposition did not converge");
  const double cutoff = s.size() > 0 ? kRankCutoff * s(0) : 0.0;
  int rank = 0;
  while (rank < s.size() && s(rank) > cutoff && s(rank) > 0.0) ++rank;
  SkinnySvd out;
  out.U = u.leftCols(rank);
  out.S = s.head(rank);
  out.V = v.leftCols(rank);
  return out;
}

Matrix soft_threshold(const Matrix& m, double tau) {
  return m.unaryExpr([tau](double x) {
    const double shrunk = std::abs(x) - tau;
    return shrunk > 0.0 ? (x > 0.0 ? shrunk : -shrunk) : 0.0;
  });
}

Matrix svt(const Matrix& m, double tau) {
  const SkinnySvd d = skinny_svd(m);
  // Singular values are nonnegative, so the shrinkage needs no sign handling.
  int kept = 0;
  while (kept < d.S.size() && d.S(kept) > tau) ++kept;
  if (kept == 0) return Matrix::Zero(m.rows(), m.cols());
  const Vector shrunk = d.S.head(kept).array() - tau;
  return d.U.leftCols(kept) * shrunk.asDiagonal() * d.V.leftCols(kept).transpose();
}

}  // namespace mvlrssc
