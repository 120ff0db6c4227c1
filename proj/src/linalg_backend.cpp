#include "linalg_backend.hpp"

#ifdef MVLRSSC_HAVE_LAPACK
#include <lapacke.h>
#else
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#endif

namespace mvlrssc::detail {

#ifdef MVLRSSC_HAVE_LAPACK

bool svd_thin(const Matrix& a, Matrix& u, Vector& s, Matrix& v) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int r = std::min(m, n);
  Matrix work = a;  // dgesdd destroys its input
  u.resize(m, r);
  s.resize(r);
  Matrix vt(r, n);
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), std::max<lapack_int>(1, m),
                     s.data(), u.data(), std::max<lapack_int>(1, m), vt.data(),
                     std::max<lapack_int>(1, r));
  if (info != 0) return false;
  v = vt.transpose();
  return true;
}

bool svd_values(const Matrix& a, Vector& s) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  Matrix work = a;
  s.resize(std::min(m, n));
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), std::max<lapack_int>(1, m),
                     s.data(), nullptr, 1, nullptr, 1);
  return info == 0;
}

bool sym_eig_topk(const Matrix& a, int k, Vector& evals, Matrix& evecs) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  Vector w(n);
  Matrix z(n, k);
  std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * std::max(1, k)));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(),
                                         std::max<lapack_int>(1, n), 0.0, 0.0, n - k + 1, n, 0.0,
                                         &found, w.data(), z.data(), std::max<lapack_int>(1, n),
                                         isuppz.data());
  if (info != 0 || found != k) return false;
  // dsyevr returns the selected range ascending; flip to descending.
  evals.resize(k);
  evecs.resize(n, k);
  for (int j = 0; j < k; ++j) {
    evals(j) = w(k - 1 - j);
    evecs.col(j) = z.col(k - 1 - j);
  }
  return true;
}

#else  // Eigen fallback

bool svd_thin(const Matrix& a, Matrix& u, Vector& s, Matrix& v) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) return false;
  u = svd.matrixU();
  s = svd.singularValues();
  v = svd.matrixV();
  return true;
}

bool svd_values(const Matrix& a, Vector& s) {
  Eigen::BDCSVD<Matrix> svd(a);
  if (svd.info() != Eigen::Success) return false;
  s = svd.singularValues();
  return true;
}

bool sym_eig_topk(const Matrix& a, int k, Vector& evals, Matrix& evecs) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) return false;
  const int n = static_cast<int>(a.rows());
  evals.resize(k);
  evecs.resize(n, k);
  for (int j = 0; j < k; ++j) {
    evals(j) = es.eigenvalues()(n - 1 - j);
    evecs.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  return true;
}

#endif

}  // namespace mvlrssc::detail
