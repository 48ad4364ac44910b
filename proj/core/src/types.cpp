#include "tilt/types.hpp"

#include <cmath>
#include <utility>

namespace tilt {

namespace {

struct CodeInfo {
  const char* module;
  const char* name;
};

CodeInfo code_info(errc code) {
  switch (code) {
    case errc::non_finite: return {"core", "NonFinite"};
    case errc::too_few_draws: return {"core", "TooFewDraws"};
    case errc::empty: return {"core", "Empty"};
    case errc::invalid_argument: return {"core", "InvalidArgument"};
    case errc::ratio_division_by_zero: return {"scores", "RatioDivisionByZero"};
    case errc::infeasible_target: return {"solver", "InfeasibleTarget"};
    case errc::singular_hessian: return {"solver", "SingularHessian"};
    case errc::max_iterations: return {"solver", "MaxIterations"};
    case errc::empty_region: return {"quantile", "EmptyRegion"};
    case errc::non_positive: return {"analytic", "NonPositive"};
    case errc::not_spd: return {"analytic", "NotSPD"};
    case errc::bound_not_above_baseline: return {"diagnostics", "BoundNotAboveBaseline"};
    case errc::parse_error: return {"cli", "ParseError"};
    case errc::non_monotone_cutpoints: return {"cli", "NonMonotoneCutpoints"};
  }
  return {"tilt", "Unknown"};
}

}  // namespace

std::string qualified_code(errc code) {
  const CodeInfo info = code_info(code);
  return std::string(info.module) + "." + info.name;
}

void raise(errc code, const std::string& message) { throw TiltError(code, message); }

SampleMatrix::SampleMatrix(Matrix draws) : draws_(std::move(draws)) {
  if (draws_.size() == 0) {
    raise(errc::empty, "sample matrix is empty");
  }
  if (draws_.rows() < 2) {
    raise(errc::too_few_draws,
          "need at least 2 draws, got " + std::to_string(draws_.rows()));
  }
  if (!draws_.allFinite()) {
    raise(errc::non_finite, "sample matrix contains NaN or infinite entries");
  }
}

SampleMatrix validate_samples(Matrix raw) { return SampleMatrix(std::move(raw)); }

ScoreMatrix::ScoreMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.size() == 0) {
    raise(errc::empty, "score matrix is empty");
  }
  if (!values_.allFinite()) {
    raise(errc::non_finite, "score matrix contains NaN or infinite entries");
  }
}

void TargetSpec::validate() const {
  if (target.size() == 0) {
    raise(errc::empty, "target vector is empty");
  }
  if (!target.allFinite()) {
    raise(errc::non_finite, "target vector contains NaN or infinite entries");
  }
}

void check_result_invariants(const TiltResult& result, const TargetSpec& spec) {
  const auto fail = [](const std::string& what) {
    raise(errc::invalid_argument, "TiltResult invariant violated: " + what);
  };

  const Index q = result.tau.size();
  if (spec.target.size() != q) fail("tau and target length differ");
  if (result.achieved_mean.size() != q) fail("achieved_mean length");
  if (result.achieved_cov.rows() != q || result.achieved_cov.cols() != q) {
    fail("achieved_cov shape");
  }

  if (result.converged && spec.mode == TargetMode::Exact) {
    const double kl_identity = result.tau.dot(spec.target) - result.cumulant;
    if (std::abs(result.kl - kl_identity) > 1e-12 * std::max(1.0, std::abs(result.kl))) {
      fail("kl != tau.target - cumulant");
    }
  }
  if (result.converged && result.kl < -1e-12) fail("kl < 0");

  const Index n = result.weights.size();
  if (n < 1) fail("empty weights");
  if ((result.weights.array() < 0.0).any()) fail("negative weight");
  double wsum = 0.0;
  double sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    wsum += result.weights(i);
    sq += result.weights(i) * result.weights(i);
  }
  if (std::abs(wsum - 1.0) > 1e-12) fail("weights do not sum to 1");
  if (std::abs(result.ess - 1.0 / sq) > 1e-12 * std::max(1.0, result.ess)) {
    fail("ess != 1 / sum w^2");
  }
  if (result.ess < 1.0 - 1e-9 || result.ess > static_cast<double>(n) * (1.0 + 1e-9)) {
    fail("ess outside [1, I]");
  }

  if (!result.achieved_cov.isApprox(result.achieved_cov.transpose(), 1e-12)) {
    fail("achieved_cov not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(result.achieved_cov);
  if (eig.info() != Eigen::Success) fail("achieved_cov eigendecomposition failed");
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
    fail("achieved_cov not positive semidefinite");
  }

  if (result.iterations < 0) fail("negative iteration count");
}

}  // namespace tilt
