#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvlrssc/types.hpp"

namespace mvlrssc {

/// Cross-tabulation of two label vectors with dense remapped indices.
struct ContingencyTable {
  Eigen::MatrixXi counts;               // rows: truth clusters, cols: predicted
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t n = 0;
};

ContingencyTable build_contingency(const std::vector<int>& truth,
                                   const std::vector<int>& pred);

struct PairCounts {
  std::int64_t tp = 0;  // same cluster in both partitions
  std::int64_t fp = 0;  // same in pred only
  std::int64_t fn = 0;  // same in truth only
  std::int64_t tn = 0;  // different in both
};

/// Agreement counts over all N(N-1)/2 unordered point pairs.
PairCounts pair_counts(const std::vector<int>& truth, const std::vector<int>& pred);

struct PrecisionRecallF {
  double precision = 0;
  double recall = 0;
  double fscore = 0;
};

/// Pair-counting precision/recall/F; each is 0 when its denominator is 0.
PrecisionRecallF precision_recall_fscore(const PairCounts& pc);

/// Mutual information normalized by the arithmetic mean of the entropies
/// (natural log). 0 when both partitions are single-cluster.
double nmi(const std::vector<int>& truth, const std::vector<int>& pred);

/// Hubert-Arabie adjusted Rand index; 1 when both trivial partitions agree.
double adjusted_rand(const std::vector<int>& truth, const std::vector<int>& pred);

struct MetricStats {
  double mean = 0;
  double stddev = 0;  // population (divide by n)
};

/// "mean (std)" with three decimals, e.g. "0.294 (0.000)".
std::string format_mean_std(const MetricStats& s);

struct MetricReport {
  MetricStats fscore, precision, recall, nmi, adjusted_rand;
  int n_runs = 0;

  /// Tab-separated F-score / precision / recall / NMI / Adj-RI row.
  std::string table_row() const;
};

/// Mean and population std of the five metrics across k-means restarts.
MetricReport metric_report(const std::vector<int>& truth,
                           const std::vector<std::vector<int>>& predictions);

}  // namespace mvlrssc
