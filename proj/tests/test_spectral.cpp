#include "doctest.h"
#include "mvlrssc/metrics.hpp"
#include "mvlrssc/spectral.hpp"
#include "oracles.hpp"

using namespace mvlrssc;

namespace {

// Block-diagonal affinity with two dense blocks; the textbook separable case.
AffinityMatrix two_block_affinity(int block, double noise = 0.0, std::uint64_t seed = 0) {
  const int n = 2 * block;
  Matrix c = Matrix::Zero(n, n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool same = (i < block) == (j < block);
      if (same) c(i, j) = 1.0 + 0.1 * rng.uniform();
      else if (noise > 0) c(i, j) = noise * rng.uniform();
    }
  }
  return affinity_from_representation(c);
}

}  // namespace

TEST_CASE("affinity from a representation matrix") {
  Matrix c(2, 2);
  c << 0, 1, -2, 0;
  Matrix expected(2, 2);
  expected << 0, 3, 3, 0;
  CHECK(affinity_from_representation(c).W == expected);
}

TEST_CASE("affinity of a symmetric nonnegative matrix doubles it") {
  Matrix c(2, 2);
  c << 0.5, 0.25, 0.25, 1.0;
  CHECK((affinity_from_representation(c).W - 2.0 * c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("affinity is exactly symmetric and nonnegative") {
  Rng rng(51);
  const Matrix c = oracles::random_matrix(8, 8, rng);
  const Matrix w = affinity_from_representation(c).W;
  CHECK(w == Matrix(w.transpose()));
  CHECK(w.minCoeff() >= 0.0);
}

TEST_CASE("average_representations") {
  Matrix a(2, 2), b(2, 2);
  a << 0, 2, 0, 0;
  b << 0, 0, 2, 0;
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(average_representations({a, b}) == expected);
  CHECK(average_representations({a}) == a);

  Rng rng(52);
  std::vector<Matrix> views;
  for (int v = 0; v < 3; ++v) views.push_back(oracles::random_matrix(4, 4, rng));
  const Matrix avg = average_representations(views);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect = (views[0](i, j) + views[1](i, j) + views[2](i, j)) / 3.0;
      CHECK(avg(i, j) == expect);
    }
}

TEST_CASE("spectral embedding separates two disconnected blocks") {
  const AffinityMatrix w = two_block_affinity(5);
  const Matrix embedding = spectral_embedding(w, 2);
  REQUIRE(embedding.rows() == 10);
  REQUIRE(embedding.cols() == 2);
  // Rows within a block coincide up to sign; across blocks they differ.
  for (int i = 1; i < 5; ++i) {
    CHECK(std::min((embedding.row(i) - embedding.row(0)).norm(),
                   (embedding.row(i) + embedding.row(0)).norm()) < 1e-8);
  }
  const ClusterAssignment best = kmeans(embedding, 2, 5, 7);
  CHECK(nmi(best.labels, {1, 1, 1, 1, 1, 2, 2, 2, 2, 2}) == 1.0);
}

TEST_CASE("embedding rows are unit norm") {
  const AffinityMatrix w = two_block_affinity(4, 0.3, 99);
  for (int k = 1; k <= 8; k += 3) {
    const Matrix embedding = spectral_embedding(w, k);
    for (int i = 0; i < embedding.rows(); ++i) {
      CHECK(std::abs(embedding.row(i).norm() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("embedding rejects bad k") {
  const AffinityMatrix w = two_block_affinity(3);
  CHECK_THROWS_AS(spectral_embedding(w, 7), BadK);
  CHECK_THROWS_AS(spectral_embedding(w, 0), BadK);
}

TEST_CASE("kmeans with k = N puts every distinct point in its own cluster") {
  Rng rng(53);
  const Matrix points = oracles::random_matrix(6, 2, rng);
  const ClusterAssignment a = kmeans(points, 6, 3, 11);
  CHECK(a.inertia == 0.0);
  std::vector<int> sorted = a.labels;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("kmeans recovers two far-separated blobs on every restart") {
  Rng rng(54);
  Matrix points(40, 2);
  std::vector<int> truth;
  for (int i = 0; i < 40; ++i) {
    const bool first = i < 20;
    points(i, 0) = (first ? 0.0 : 100.0) + rng.normal();
    points(i, 1) = (first ? 0.0 : 100.0) + rng.normal();
    truth.push_back(first ? 1 : 2);
  }
  for (int restart = 0; restart < 10; ++restart) {
    const ClusterAssignment a = kmeans(points, 2, 1, derive_seed(1000, restart));
    CHECK(nmi(a.labels, truth) == 1.0);
  }
}

TEST_CASE("kmeans is deterministic in the seed") {
  Rng rng(55);
  const Matrix points = oracles::random_matrix(30, 3, rng);
  const ClusterAssignment a = kmeans(points, 4, 6, 42);
  const ClusterAssignment b = kmeans(points, 4, 6, 42);
  CHECK(a.labels == b.labels);
  CHECK(a.inertia == b.inertia);
  CHECK_THROWS_AS(kmeans(points, 31, 1, 42), BadK);
}

TEST_CASE("lloyd inertia is nonincreasing within a run") {
  Rng rng(56);
  const Matrix points = oracles::random_matrix(60, 2, rng);
  const auto run = detail::lloyd(points, 4, {0, 1, 2, 3}, 300, 1e-9);
  REQUIRE(!run.inertia_history.empty());
  for (std::size_t i = 1; i < run.inertia_history.size(); ++i) {
    CHECK(run.inertia_history[i] <= run.inertia_history[i - 1] + 1e-12);
  }
}

TEST_CASE("spectral_clustering returns one assignment per restart") {
  const AffinityMatrix w = two_block_affinity(6, 0.05, 3);
  const auto assignments = spectral_clustering(w, 2, 8, 17);
  REQUIRE(assignments.size() == 8);
  const std::vector<int> truth{1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2};
  for (const ClusterAssignment& a : assignments) {
    CHECK(nmi(a.labels, truth) == 1.0);
  }
}

TEST_CASE("spectral_clustering with k = 1 is a single cluster") {
  const AffinityMatrix w = two_block_affinity(4);
  const auto assignments = spectral_clustering(w, 1, 2, 5);
  for (const ClusterAssignment& a : assignments) {
    CHECK(std::all_of(a.labels.begin(), a.labels.end(), [](int l) { return l == 1; }));
  }
}

TEST_CASE("spectral_clustering is byte-deterministic for a fixed seed") {
  const AffinityMatrix w = two_block_affinity(5, 0.2, 8);
  const auto a = spectral_clustering(w, 2, 20, 123);
  const auto b = spectral_clustering(w, 2, 20, 123);
  for (std::size_t r = 0; r < a.size(); ++r) CHECK(a[r].labels == b[r].labels);
}

TEST_CASE("permuting the points permutes the labels consistently") {
  const int n = 12;
  const AffinityMatrix w = two_block_affinity(6, 0.1, 21);
  std::vector<int> truth(n);
  for (int i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = i < 6 ? 1 : 2;

  std::vector<int> perm(n);
  Rng rng(57);
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < n - 1; ++i) std::swap(perm[i], perm[i + rng.uniform_int(n - i)]);

  Matrix permuted(n, n);
  std::vector<int> permuted_truth(n);
  for (int i = 0; i < n; ++i) {
    permuted_truth[i] = truth[static_cast<std::size_t>(perm[i])];
    for (int j = 0; j < n; ++j) permuted(i, j) = w.W(perm[i], perm[j]);
  }

  const auto original = spectral_clustering(w, 2, 4, 99);
  const auto shuffled = spectral_clustering(AffinityMatrix{permuted}, 2, 4, 99);
  for (std::size_t r = 0; r < original.size(); ++r) {
    const double a = nmi(original[r].labels, truth);
    const double b = nmi(shuffled[r].labels, permuted_truth);
    CHECK(std::abs(a - b) < 1e-10);
  }
}
