#pragma once
// Core domain types shared by every module: the Monte Carlo sample container,
// evaluated score matrices, constraint targets, and the solver result record.
// All types are immutable after construction and safe to share across threads.

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tilt {

// Draws are stored row-major by draw index: weight computations stream over
// rows, so row i (one draw, one score vector) is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class errc {
  // core
  non_finite,
  too_few_draws,
  empty,
  invalid_argument,
  // scores
  ratio_division_by_zero,
  // solver
  infeasible_target,
  singular_hessian,
  max_iterations,
  // quantile
  empty_region,
  // analytic
  non_positive,
  not_spd,
  // diagnostics
  bound_not_above_baseline,
  // cli
  parse_error,
  non_monotone_cutpoints,
};

// "solver.InfeasibleTarget"-style code used in reports and error output.
std::string qualified_code(errc code);

class TiltError : public std::runtime_error {
public:
  TiltError(errc code, const std::string& message)
      : std::runtime_error(qualified_code(code) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& message);

// Monte Carlo sample from the baseline distribution: I draws by m dimensions.
class SampleMatrix {
public:
  explicit SampleMatrix(Matrix draws);

  const Matrix& draws() const noexcept { return draws_; }
  Index draw_count() const noexcept { return draws_.rows(); }
  Index dim_count() const noexcept { return draws_.cols(); }

private:
  Matrix draws_;
};

// Validates a raw matrix into a SampleMatrix. Idempotent: a valid matrix
// passes through unchanged.
SampleMatrix validate_samples(Matrix raw);

// Score functions evaluated on the sample: I draws by q scores. The
// normalization score is not stored; it is absorbed into the cumulant.
class ScoreMatrix {
public:
  explicit ScoreMatrix(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  Index draw_count() const noexcept { return values_.rows(); }
  Index score_count() const noexcept { return values_.cols(); }

private:
  Matrix values_;
};

enum class TargetMode { Exact, LowerBound };

// Target expected-score vector. LowerBound dominance over the baseline is
// checked at solve time, not here.
struct TargetSpec {
  Vector target;
  TargetMode mode = TargetMode::Exact;

  void validate() const;
};

// Full output of a tilting solve: the tilting vector, cumulant and KL values,
// normalized importance weights, and the moments achieved under the tilt.
struct TiltResult {
  Vector tau;
  double cumulant = 0.0;
  double kl = 0.0;
  Vector weights;
  double ess = 0.0;
  Vector achieved_mean;
  Matrix achieved_cov;
  int iterations = 0;
  bool converged = false;
};

// Shared assertion helper: throws TiltError(invalid_argument) on the first
// violated TiltResult invariant. Used in every solver's postcondition tests.
void check_result_invariants(const TiltResult& result, const TargetSpec& spec);

}  // namespace tilt
