#include "mvlrssc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mvlrssc {

GramMatrix gram_linear(const Matrix& x) {
  if (!x.allFinite()) throw NonFinite("gram_linear: non-finite input");
  GramMatrix g;
  g.K.noalias() = x.transpose() * x;
  g.kind = KernelSpec::Kind::Linear;
  return g;
}

double median_pairwise_distance(const Matrix& x) {
  const Eigen::Index n = x.cols();
  if (n < 2) throw DegenerateData("median_pairwise_distance needs at least 2 points");
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      dists.push_back((x.col(i) - x.col(j)).norm());
    }
  }
  if (*std::max_element(dists.begin(), dists.end()) == 0.0) {
    throw DegenerateData("all pairwise distances are zero");
  }
  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  double median = dists[mid];
  if (dists.size() % 2 == 0) {
    const double below = *std::max_element(dists.begin(), dists.begin() + mid);
    median = 0.5 * (below + median);
  }
  return median;
}

GramMatrix gram_gaussian(const Matrix& x, double sigma) {
  if (!(sigma > 0)) throw DegenerateData("gram_gaussian: sigma must be positive");
  const Eigen::Index n = x.cols();
  GramMatrix g;
  g.K.resize(n, n);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (Eigen::Index i = 0; i < n; ++i) {
    g.K(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double k = std::exp(-(x.col(i) - x.col(j)).squaredNorm() * inv);
      g.K(i, j) = k;
      g.K(j, i) = k;
    }
  }
  g.kind = KernelSpec::Kind::Gaussian;
  g.sigma = sigma;
  return g;
}

}  // namespace mvlrssc
