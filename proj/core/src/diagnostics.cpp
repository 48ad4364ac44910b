#include "tilt/diagnostics.hpp"

#include "tilt/numeric.hpp"
#include "tilt/random.hpp"
#include "tilt/scores.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace tilt {

WeightVector::WeightVector(Vector w) : w_(std::move(w)) {
  if (w_.size() == 0) raise(errc::empty, "weight vector is empty");
  if (!w_.allFinite()) raise(errc::non_finite, "weights not finite");
  KahanSum total;
  for (Index i = 0; i < w_.size(); ++i) {
    if (w_(i) < 0.0) raise(errc::invalid_argument, "negative weight");
    total.add(w_(i));
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    raise(errc::invalid_argument, "weights must sum to 1");
  }
}

WeightVector compute_weights(const Vector& tau, const ScoreMatrix& scores) {
  if (tau.size() != scores.score_count()) {
    raise(errc::invalid_argument, "tau length does not match score count");
  }
  if (!tau.allFinite()) raise(errc::non_finite, "tau not finite");
  const Vector z = scores.values() * tau;
  Vector w;
  softmax(z, w);
  return WeightVector(std::move(w));
}

double ess(const WeightVector& w) {
  KahanSum sq;
  for (Index i = 0; i < w.size(); ++i) sq.add(w.values()(i) * w.values()(i));
  return 1.0 / sq.value();
}

SampleMatrix resample(const WeightVector& w, const SampleMatrix& samples, Index n,
                      std::uint64_t seed) {
  if (w.size() != samples.draw_count()) {
    raise(errc::invalid_argument, "weight count does not match draw count");
  }
  if (n < 1) raise(errc::invalid_argument, "resample size must be >= 1");

  const Index I = w.size();
  std::vector<double> cdf(static_cast<std::size_t>(I));
  KahanSum acc;
  for (Index i = 0; i < I; ++i) {
    acc.add(w.values()(i));
    cdf[static_cast<std::size_t>(i)] = acc.value();
  }
  cdf.back() = 1.0;

  Rng rng(seed);
  Matrix out(n, samples.dim_count());
  for (Index k = 0; k < n; ++k) {
    const double u = rng.u01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const Index pick = std::min<Index>(static_cast<Index>(it - cdf.begin()), I - 1);
    out.row(k) = samples.draws().row(pick);
  }
  return SampleMatrix(std::move(out));
}

double kl_value(const Vector& tau, const Vector& target, double cumulant) {
  if (tau.size() != target.size()) {
    raise(errc::invalid_argument, "tau and target lengths differ");
  }
  return tau.dot(target) - cumulant;
}

double calibrate_bayes_factor(double kappa) {
  if (!std::isfinite(kappa)) raise(errc::non_finite, "kappa not finite");
  if (kappa >= 0.0) {
    return 1.0 / (1.0 + std::exp(-kappa));
  }
  const double e = std::exp(kappa);
  return e / (1.0 + e);
}

TiltResult ret_solve(const ScoreMatrix& scores, const TargetSpec& bound,
                     const SolverOptions& opts) {
  bound.validate();
  if (bound.mode != TargetMode::LowerBound) {
    raise(errc::invalid_argument, "ret_solve requires a LowerBound target spec");
  }
  const Vector s0 = baseline_expected_scores(scores);
  if (s0.size() != bound.target.size()) {
    raise(errc::invalid_argument, "bound length does not match score count");
  }
  bool any_strict = false;
  for (Index j = 0; j < s0.size(); ++j) {
    if (bound.target(j) < s0(j)) {
      raise(errc::bound_not_above_baseline,
            "bound component " + std::to_string(j) + " lies below the baseline expected score");
    }
    any_strict = any_strict || bound.target(j) > s0(j);
  }
  if (!any_strict) {
    raise(errc::bound_not_above_baseline,
          "bound must exceed the baseline expected score in at least one component");
  }
  // Optimal over the dominated set at the bound itself: the KL metric is
  // convex and increasing along every ray above the baseline.
  return solve_moment(scores, bound, opts);
}

PerturbationApprox perturbation_approx(const Matrix& baseline_cov, const Vector& epsilon) {
  const Index q = baseline_cov.rows();
  if (q == 0 || baseline_cov.cols() != q) {
    raise(errc::invalid_argument, "baseline covariance must be square and nonempty");
  }
  if (epsilon.size() != q) {
    raise(errc::invalid_argument, "epsilon length must match covariance size");
  }
  if (!baseline_cov.isApprox(baseline_cov.transpose(), 1e-12)) {
    raise(errc::not_spd, "baseline covariance is not symmetric");
  }
  Eigen::LLT<Matrix> llt(baseline_cov);
  if (llt.info() != Eigen::Success) {
    raise(errc::not_spd, "baseline covariance is not positive definite");
  }
  PerturbationApprox out;
  out.epsilon = epsilon;
  out.tau_approx = llt.solve(epsilon);
  out.s_approx = baseline_cov * out.tau_approx;
  out.kl_approx = 0.5 * epsilon.dot(out.tau_approx);
  return out;
}

PerturbationErrorDecay second_order_error_check(
    const std::function<Vector(const Vector&)>& solve_at_target, const Vector& baseline_mean,
    const Matrix& baseline_cov, const Vector& epsilon, const std::vector<double>& deltas) {
  if (deltas.empty()) raise(errc::empty, "delta sequence is empty");
  for (std::size_t k = 0; k + 1 < deltas.size(); ++k) {
    if (!(deltas[k] > deltas[k + 1]) || !(deltas[k + 1] >= 0.0)) {
      raise(errc::invalid_argument, "deltas must be positive and decreasing");
    }
  }

  PerturbationErrorDecay out;
  out.deltas = deltas;
  for (const double d : deltas) {
    if (d == 0.0) {
      out.errors.push_back(0.0);
      continue;
    }
    const PerturbationApprox approx = perturbation_approx(baseline_cov, d * epsilon);
    const Vector tau_solver = solve_at_target(baseline_mean + d * epsilon);
    out.errors.push_back((tau_solver - approx.tau_approx).cwiseAbs().maxCoeff());
  }
  for (std::size_t k = 0; k + 1 < out.errors.size(); ++k) {
    out.ratios.push_back(out.errors[k + 1] > 0.0 ? out.errors[k] / out.errors[k + 1]
                                                 : std::numeric_limits<double>::infinity());
  }
  return out;
}

}  // namespace tilt
