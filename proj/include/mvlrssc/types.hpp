#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvlrssc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// --- Error hierarchy -------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MVLRSSC_DEFINE_ERROR(name)              \
  class name : public Error {                   \
   public:                                      \
    using Error::Error;                         \
  }

MVLRSSC_DEFINE_ERROR(MismatchedColumns);
MVLRSSC_DEFINE_ERROR(NonFinite);
MVLRSSC_DEFINE_ERROR(BadLabels);
MVLRSSC_DEFINE_ERROR(InvalidConfig);
MVLRSSC_DEFINE_ERROR(SvdFailure);
MVLRSSC_DEFINE_ERROR(SingularSystem);
MVLRSSC_DEFINE_ERROR(AllZeroLambda);
MVLRSSC_DEFINE_ERROR(DegenerateData);
MVLRSSC_DEFINE_ERROR(EigenFailure);
MVLRSSC_DEFINE_ERROR(BadK);
MVLRSSC_DEFINE_ERROR(LengthMismatch);
MVLRSSC_DEFINE_ERROR(IoError);

#undef MVLRSSC_DEFINE_ERROR

/// Parse failure in a delimited input file; carries the file and 1-based line.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, int line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// --- Core domain types ------------------------------------------------------

enum class Fidelity { Exact, Noisy };
enum class Mode { SingleView, Pairwise, Centroid };

struct KernelSpec {
  enum class Kind { Linear, Gaussian };

  Kind kind = Kind::Gaussian;
  /// Gaussian bandwidth as a multiple of the median pairwise distance.
  double sigma_multiplier = 1.0;
};

/**
 * @brief Multi-view data: one feature matrix per view, columns are points.
 *
 * Every view stores a D^(v) x N matrix over the same N data points. Labels,
 * when present, are 1-based cluster indices of length N.
 */
struct MultiViewDataset {
  std::vector<Matrix> views;
  std::vector<int> labels;  // empty when ground truth is unknown
  int k = 0;

  int n_views() const { return static_cast<int>(views.size()); }
  int n_points() const { return views.empty() ? 0 : static_cast<int>(views.front().cols()); }
  bool has_labels() const { return !labels.empty(); }
};

/// Returns the dataset unchanged iff all invariants hold.
/// Throws MismatchedColumns, NonFinite or BadLabels otherwise.
MultiViewDataset validate_dataset(MultiViewDataset d);

/**
 * @brief All solver hyperparameters.
 *
 * `lambda` holds either a single shared consensus weight or one value per
 * view. Penalties mu_1..mu_4 all start at `mu_init` and grow by `rho` per
 * outer iteration up to `mu_max`.
 */
struct SolverConfig {
  double beta1 = 0.5;            // nuclear-norm weight
  double beta2 = 0.5;            // l1 weight
  std::vector<double> lambda{0.5};
  double mu_init = 100.0;
  double rho = 1.5;
  double mu_max = 1e6;
  double epsilon = 1e-3;
  int max_iters = 100;
  Fidelity fidelity = Fidelity::Noisy;
  Mode mode = Mode::Pairwise;
  std::optional<KernelSpec> kernel;
  /// Record the objective value each iteration. Costs one singular-value
  /// decomposition per view per iteration; sweeps turn it off.
  bool record_objective = true;
};

/// Throws InvalidConfig unless all SolverConfig invariants hold
/// (n_views < 0 skips the per-view lambda count check).
void validate_config(const SolverConfig& cfg, int n_views = -1);

/// Expands a shared lambda to one entry per view.
std::vector<double> expand_lambda(const SolverConfig& cfg, int n_views);

const char* to_string(Fidelity f);
const char* to_string(Mode m);
const char* to_string(KernelSpec::Kind k);

}  // namespace mvlrssc
