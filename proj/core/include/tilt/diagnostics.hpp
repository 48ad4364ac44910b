#pragma once
// Importance-sampling outputs and decision-analytic summaries: normalized
// weights, effective sample size, seeded resampling, Bayes-factor calibration
// of the KL value, lower-bound (relaxed) tilting, and the small-perturbation
// approximations around the baseline.

#include "tilt/solver.hpp"
#include "tilt/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace tilt {

// Normalized importance weights: nonnegative, summing to 1 within 1e-12.
class WeightVector {
public:
  explicit WeightVector(Vector w);

  const Vector& values() const noexcept { return w_; }
  Index size() const noexcept { return w_.size(); }

private:
  Vector w_;
};

// w_i proportional to exp(tau . s(y_i)), max-shifted softmax.
WeightVector compute_weights(const Vector& tau, const ScoreMatrix& scores);

// ESS = 1 / sum w_i^2, in [1, I].
double ess(const WeightVector& w);

// n rows drawn with replacement, multinomially by w, from a deterministic
// seeded generator: identical (seed, inputs) give byte-identical output.
SampleMatrix resample(const WeightVector& w, const SampleMatrix& samples, Index n,
                      std::uint64_t seed);

// kappa = tau . target - cumulant.
double kl_value(const Vector& tau, const Vector& target, double cumulant);

// Posterior probability of the tilted model under a 50:50 prior when kappa is
// read as an expected log Bayes factor: exp(kappa)/(1+exp(kappa)), computed
// stably for large |kappa|.
double calibrate_bayes_factor(double kappa);

// Lower-bound tilting: validates bound >= baseline expected scores
// elementwise with at least one strict increase, then solves exactly at the
// bound, which is optimal over the whole dominated set by convexity of the
// KL metric. Throws bound_not_above_baseline on a bad bound.
TiltResult ret_solve(const ScoreMatrix& scores, const TargetSpec& bound,
                     const SolverOptions& opts = {});

// First-order approximations around the baseline for a target increment
// epsilon: tau ~ Lambda epsilon, implied score increment V tau, and
// kl ~ epsilon'Lambda epsilon / 2.
struct PerturbationApprox {
  Vector epsilon;
  Vector tau_approx;
  Vector s_approx;
  double kl_approx = 0.0;
};

PerturbationApprox perturbation_approx(const Matrix& baseline_cov, const Vector& epsilon);

// Error decay of the first-order tau approximation along a target ray
// s0 + delta * epsilon. errors[k] = max-norm of (solver tau - Lambda * delta_k
// * epsilon); ratios[k] = errors[k] / errors[k+1], which approaches 4 when
// consecutive deltas halve (second-order decay).
struct PerturbationErrorDecay {
  std::vector<double> deltas;
  std::vector<double> errors;
  std::vector<double> ratios;
};

PerturbationErrorDecay second_order_error_check(
    const std::function<Vector(const Vector&)>& solve_at_target, const Vector& baseline_mean,
    const Matrix& baseline_cov, const Vector& epsilon, const std::vector<double>& deltas);

}  // namespace tilt
