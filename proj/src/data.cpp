#include "mvlrssc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mvlrssc/prox.hpp"
#include "mvlrssc/rng.hpp"

namespace mvlrssc {

SyntheticSpec SyntheticSpec::benchmark(std::uint64_t seed) {
  GaussianComponent wide{{1.0, 1.0}, (Eigen::Matrix2d() << 1.0, 0.5, 0.5, 1.5).finished()};
  GaussianComponent tight{{2.0, 2.0}, (Eigen::Matrix2d() << 0.3, 0.0, 0.0, 0.6).finished()};
  SyntheticSpec spec;
  spec.n_points = 1000;
  spec.components = {{wide, tight}, {tight, wide}};  // view 2 swaps the components
  spec.mixing = {0.5, 0.5};
  spec.seed = seed;
  return spec;
}

MultiViewDataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.components.empty()) throw InvalidConfig("synthetic spec has no views");
  const std::size_t n_components = spec.components.front().size();
  if (n_components == 0 || spec.mixing.size() != n_components) {
    throw InvalidConfig("mixing must have one entry per component");
  }
  double mix_total = 0;
  for (double p : spec.mixing) mix_total += p;
  if (std::abs(mix_total - 1.0) > 1e-9) throw InvalidConfig("mixing must sum to 1");

  std::vector<std::vector<Eigen::Matrix2d>> cholesky(spec.components.size());
  for (std::size_t v = 0; v < spec.components.size(); ++v) {
    if (spec.components[v].size() != n_components) {
      throw InvalidConfig("all views need the same number of components");
    }
    for (const GaussianComponent& comp : spec.components[v]) {
      if (!comp.cov.isApprox(comp.cov.transpose(), 1e-12)) {
        throw InvalidConfig("component covariance must be symmetric");
      }
      Eigen::LLT<Eigen::Matrix2d> llt(comp.cov);
      if (llt.info() != Eigen::Success) {
        throw InvalidConfig("component covariance must be positive-definite");
      }
      cholesky[v].push_back(llt.matrixL());
    }
  }

  // Exact per-component counts: floor(p_c N), remainder to the first components.
  std::vector<int> counts(n_components);
  int assigned = 0;
  for (std::size_t c = 0; c < n_components; ++c) {
    counts[c] = static_cast<int>(std::floor(spec.mixing[c] * spec.n_points));
    assigned += counts[c];
  }
  for (std::size_t c = 0; assigned < spec.n_points; c = (c + 1) % n_components) {
    ++counts[c];
    ++assigned;
  }

  MultiViewDataset d;
  d.k = static_cast<int>(n_components);
  d.labels.reserve(static_cast<std::size_t>(spec.n_points));
  for (std::size_t c = 0; c < n_components; ++c) {
    for (int i = 0; i < counts[c]; ++i) d.labels.push_back(static_cast<int>(c) + 1);
  }

  Rng rng(spec.seed);
  for (std::size_t v = 0; v < spec.components.size(); ++v) {
    Matrix x(2, spec.n_points);
    for (int i = 0; i < spec.n_points; ++i) {
      const std::size_t c = static_cast<std::size_t>(d.labels[static_cast<std::size_t>(i)] - 1);
      const Eigen::Vector2d z(rng.normal(), rng.normal());
      x.col(i) = spec.components[v][c].mean + cholesky[v][c] * z;
    }
    d.views.push_back(std::move(x));
  }
  return validate_dataset(std::move(d));
}

MultiViewDataset generate_synthetic(std::uint64_t seed) {
  return generate_synthetic(SyntheticSpec::benchmark(seed));
}

namespace {

double parse_double(std::string_view token, const std::string& path, int line) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
  if (ec != std::errc() || ptr != token.end()) {
    throw ParseError(path, line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    std::vector<double> row;
    row.reserve(tokens.size());
    for (std::string_view t : tokens) row.push_back(parse_double(t, path, line_no));
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError(path, line_no,
                       "row has " + std::to_string(row.size()) + " columns, expected " +
                           std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path, std::max(line_no, 1), "file has no numeric rows");
  // Rows are data points on disk; stored transposed as D x N.
  Matrix x(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t f = 0; f < width; ++f)
      x(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) = rows[i][f];
  return x;
}

std::vector<int> load_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw ParseError(path, line_no, "expected one label per line");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tokens[0].begin(), tokens[0].end(), value);
    if (ec != std::errc() || ptr != tokens[0].end()) {
      throw ParseError(path, line_no, "expected an integer, got '" + std::string(tokens[0]) + "'");
    }
    labels.push_back(value);
  }
  return labels;
}

}  // namespace

MultiViewDataset load_views(const std::vector<std::string>& view_paths,
                            const std::string& labels_path, int k) {
  MultiViewDataset d;
  for (const std::string& path : view_paths) d.views.push_back(load_matrix(path));
  if (!labels_path.empty()) d.labels = load_label_file(labels_path);
  d.k = k;
  return validate_dataset(std::move(d));
}

void save_view(const std::string& path, const Matrix& x) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw IoError("cannot write " + path);
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    for (Eigen::Index f = 0; f < x.rows(); ++f) {
      std::fprintf(out, f == 0 ? "%.17g" : " %.17g", x(f, i));
    }
    std::fputc('\n', out);
  }
  std::fclose(out);
}

void save_labels(const std::string& path, const std::vector<int>& labels) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw IoError("cannot write " + path);
  for (int l : labels) std::fprintf(out, "%d\n", l);
  std::fclose(out);
}

Matrix pca_reduce(const Matrix& x, double variance_fraction) {
  if (!(variance_fraction > 0.0) || variance_fraction > 1.0) {
    throw InvalidConfig("variance_fraction must be in (0, 1]");
  }
  const Eigen::Index n = x.cols();
  if (n < 2) throw DegenerateData("pca_reduce needs at least 2 points");
  const Vector means = x.rowwise().mean();
  const Matrix centered = x.colwise() - means;
  const SkinnySvd d = skinny_svd(centered);
  if (d.rank() == 0) throw DegenerateData("pca_reduce: centered data has zero variance");

  const Vector variances = d.S.array().square();
  const double total = variances.sum();
  int r = 0;
  double covered = 0;
  while (r < d.rank()) {
    covered += variances(r);
    ++r;
    if (covered >= variance_fraction * total - 1e-12 * total) break;
  }
  r = std::min<int>(r, static_cast<int>(n) - 1);
  // Scores of the leading principal directions: U_r^T X_c = S_r V_r^T.
  return d.S.head(r).asDiagonal() * d.V.leftCols(r).transpose();
}

MultiViewDataset concat_features(const MultiViewDataset& d) {
  MultiViewDataset validated = validate_dataset(d);
  Eigen::Index total_rows = 0;
  for (const Matrix& x : validated.views) total_rows += x.rows();
  Matrix stacked(total_rows, validated.n_points());
  Eigen::Index offset = 0;
  for (const Matrix& x : validated.views) {
    stacked.middleRows(offset, x.rows()) = x;
    offset += x.rows();
  }
  MultiViewDataset out;
  out.views = {std::move(stacked)};
  out.labels = validated.labels;
  out.k = validated.k;
  return out;
}

}  // namespace mvlrssc
