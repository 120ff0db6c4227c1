#include "mvlrssc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace mvlrssc {

namespace {

void require_same_length(const std::vector<int>& truth, const std::vector<int>& pred) {
  if (truth.size() != pred.size()) {
    throw LengthMismatch("label vectors have lengths " + std::to_string(truth.size()) + " and " +
                         std::to_string(pred.size()));
  }
  if (truth.size() < 2) throw LengthMismatch("need at least 2 points");
}

std::vector<int> remap_dense(const std::vector<int>& labels) {
  std::map<int, int> ids;
  for (int l : labels) ids.emplace(l, 0);
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  return out;
}

std::int64_t pairs_of(std::int64_t n) { return n * (n - 1) / 2; }

}  // namespace

ContingencyTable build_contingency(const std::vector<int>& truth, const std::vector<int>& pred) {
  require_same_length(truth, pred);
  const std::vector<int> t = remap_dense(truth);
  const std::vector<int> p = remap_dense(pred);
  const int rows = *std::max_element(t.begin(), t.end()) + 1;
  const int cols = *std::max_element(p.begin(), p.end()) + 1;
  ContingencyTable table;
  table.counts = Eigen::MatrixXi::Zero(rows, cols);
  for (std::size_t i = 0; i < t.size(); ++i) table.counts(t[i], p[i]) += 1;
  table.row_sums.assign(rows, 0);
  table.col_sums.assign(cols, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      table.row_sums[i] += table.counts(i, j);
      table.col_sums[j] += table.counts(i, j);
    }
  table.n = static_cast<std::int64_t>(t.size());
  return table;
}

PairCounts pair_counts(const std::vector<int>& truth, const std::vector<int>& pred) {
  const ContingencyTable table = build_contingency(truth, pred);
  std::int64_t same_both = 0;
  for (int i = 0; i < table.counts.rows(); ++i)
    for (int j = 0; j < table.counts.cols(); ++j) same_both += pairs_of(table.counts(i, j));
  std::int64_t same_truth = 0, same_pred = 0;
  for (std::int64_t a : table.row_sums) same_truth += pairs_of(a);
  for (std::int64_t b : table.col_sums) same_pred += pairs_of(b);
  PairCounts pc;
  pc.tp = same_both;
  pc.fn = same_truth - same_both;
  pc.fp = same_pred - same_both;
  pc.tn = pairs_of(table.n) - pc.tp - pc.fn - pc.fp;
  return pc;
}

PrecisionRecallF precision_recall_fscore(const PairCounts& pc) {
  PrecisionRecallF out;
  const std::int64_t pd = pc.tp + pc.fp;
  const std::int64_t rd = pc.tp + pc.fn;
  out.precision = pd > 0 ? static_cast<double>(pc.tp) / static_cast<double>(pd) : 0.0;
  out.recall = rd > 0 ? static_cast<double>(pc.tp) / static_cast<double>(rd) : 0.0;
  const double pr = out.precision + out.recall;
  out.fscore = pr > 0 ? 2.0 * out.precision * out.recall / pr : 0.0;
  return out;
}

double nmi(const std::vector<int>& truth, const std::vector<int>& pred) {
  const ContingencyTable table = build_contingency(truth, pred);
  const double n = static_cast<double>(table.n);
  const double log_n = std::log(n);
  // Shared accumulations keep NMI(identical partitions) exactly 1:
  // I = (sum_cells - sum_rows - sum_cols)/N + ln N, H = ln N - sum/N.
  double sum_cells = 0.0;
  for (int i = 0; i < table.counts.rows(); ++i)
    for (int j = 0; j < table.counts.cols(); ++j) {
      const double c = table.counts(i, j);
      if (c > 0) sum_cells += c * std::log(c);
    }
  double sum_rows = 0.0, sum_cols = 0.0;
  for (std::int64_t a : table.row_sums) sum_rows += static_cast<double>(a) * std::log(static_cast<double>(a));
  for (std::int64_t b : table.col_sums) sum_cols += static_cast<double>(b) * std::log(static_cast<double>(b));
  const double h_truth = log_n - sum_rows / n;
  const double h_pred = log_n - sum_cols / n;
  const double denom = 0.5 * (h_truth + h_pred);
  if (denom <= 0.0) return 0.0;
  const double mutual = (sum_cells - sum_rows - sum_cols) / n + log_n;
  return std::clamp(mutual / denom, 0.0, 1.0);
}

double adjusted_rand(const std::vector<int>& truth, const std::vector<int>& pred) {
  const ContingencyTable table = build_contingency(truth, pred);
  std::int64_t sum_cells = 0;
  for (int i = 0; i < table.counts.rows(); ++i)
    for (int j = 0; j < table.counts.cols(); ++j) sum_cells += pairs_of(table.counts(i, j));
  std::int64_t sum_rows = 0, sum_cols = 0;
  for (std::int64_t a : table.row_sums) sum_rows += pairs_of(a);
  for (std::int64_t b : table.col_sums) sum_cols += pairs_of(b);
  const double expected = static_cast<double>(sum_rows) * static_cast<double>(sum_cols) /
                          static_cast<double>(pairs_of(table.n));
  const double numerator = static_cast<double>(sum_cells) - expected;
  const double denominator = 0.5 * static_cast<double>(sum_rows + sum_cols) - expected;
  if (denominator == 0.0) return 1.0;  // both partitions trivial and agreeing
  return numerator / denominator;
}

std::string format_mean_std(const MetricStats& s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f (%.3f)", s.mean, s.stddev);
  return buf;
}

std::string MetricReport::table_row() const {
  return format_mean_std(fscore) + "\t" + format_mean_std(precision) + "\t" +
         format_mean_std(recall) + "\t" + format_mean_std(nmi) + "\t" +
         format_mean_std(adjusted_rand);
}

MetricReport metric_report(const std::vector<int>& truth,
                           const std::vector<std::vector<int>>& predictions) {
  if (predictions.empty()) throw LengthMismatch("metric_report needs at least one restart");
  const std::size_t n_runs = predictions.size();
  std::vector<std::array<double, 5>> values;
  values.reserve(n_runs);
  for (const auto& pred : predictions) {
    const PrecisionRecallF prf = precision_recall_fscore(pair_counts(truth, pred));
    values.push_back({prf.fscore, prf.precision, prf.recall, nmi(truth, pred),
                      adjusted_rand(truth, pred)});
  }
  auto stats = [&](int idx) {
    MetricStats s;
    for (const auto& v : values) s.mean += v[idx];
    s.mean /= static_cast<double>(n_runs);
    double acc = 0;
    for (const auto& v : values) acc += (v[idx] - s.mean) * (v[idx] - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(n_runs));
    return s;
  };
  MetricReport report;
  report.fscore = stats(0);
  report.precision = stats(1);
  report.recall = stats(2);
  report.nmi = stats(3);
  report.adjusted_rand = stats(4);
  report.n_runs = static_cast<int>(n_runs);
  return report;
}

}  // namespace mvlrssc
