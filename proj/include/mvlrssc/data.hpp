#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvlrssc/types.hpp"

namespace mvlrssc {

struct GaussianComponent {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};

/// Two-view, two-component Gaussian mixture benchmark description.
struct SyntheticSpec {
  int n_points = 1000;
  std::vector<std::vector<GaussianComponent>> components;  // [view][component]
  std::vector<double> mixing{0.5, 0.5};
  std::uint64_t seed = 0;

  /// The benchmark mixture: view 1 components N((1,1), [1 .5; .5 1.5]) and
  /// N((2,2), [.3 0; 0 .6]); view 2 swaps the two.
  static SyntheticSpec benchmark(std::uint64_t seed);
};

/// Draws the mixture with a shared latent component label per point
/// (component counts are exact, points ordered by component). Labels are the
/// 1-based component indices, k = number of components.
MultiViewDataset generate_synthetic(const SyntheticSpec& spec);
MultiViewDataset generate_synthetic(std::uint64_t seed);

/// Reads delimited numeric text files, one row per data point, comma or
/// whitespace separated; transposed internally to D x N. The labels file has
/// one integer per line. The result is validated.
MultiViewDataset load_views(const std::vector<std::string>& view_paths,
                            const std::string& labels_path, int k);

/// Writes a view matrix in the load_views format (rows = points) with full
/// double round-trip precision.
void save_view(const std::string& path, const Matrix& x);
void save_labels(const std::string& path, const std::vector<int>& labels);

/// Centers features and projects onto the smallest leading set of principal
/// directions whose cumulative explained variance reaches variance_fraction.
/// Output is r x N with r <= min(D, N-1). Throws DegenerateData when the
/// centered data has no variance.
Matrix pca_reduce(const Matrix& x, double variance_fraction);

/// Stacks all views into a single (sum_v D^(v)) x N view.
MultiViewDataset concat_features(const MultiViewDataset& d);

}  // namespace mvlrssc
