#pragma once
// General moment-constraint tilting solver. Finds tau with E_f[s(y)] = s on a
// Monte Carlo sample by Newton minimization of the convex dual
//   D(tau) = c(tau) - tau's,
// whose gradient is the tilted mean minus the target and whose Hessian is the
// tilted score covariance.

#include "tilt/types.hpp"

namespace tilt {

struct SolverOptions {
  // Convergence: max-norm of the dual gradient, scaled by (1 + max|s|).
  double grad_tol = 1e-10;
  int max_iter = 100;
  // Divergence guard on max|tau|; exceeding it signals an infeasible target.
  double tau_bound = 50.0;
  // Armijo sufficient-decrease factor; backtracking halves from step 1.
  double armijo = 1e-4;

  void validate() const;
};

// c(tau) = log( (1/I) sum_i exp(tau . s(y_i)) ), computed with a max shift.
// c(0) = 0 and the value is finite for any finite inputs.
double cumulant(const Vector& tau, const ScoreMatrix& scores);

struct TiltedMoments {
  Vector mean;
  Matrix cov;  // symmetrized after accumulation
};

// Weighted mean and covariance of the scores under weights proportional to
// exp(tau . s(y_i)). These are the gradient and Hessian of the cumulant.
TiltedMoments tilted_moments(const Vector& tau, const ScoreMatrix& scores);

// Throws TiltError with code:
//  - infeasible_target: tau escaped the bound or the line search failed, i.e.
//    the target lies outside (or on the boundary of) the convex hull of the
//    sample score vectors;
//  - singular_hessian: tilted covariance not positive definite to working
//    precision after gradient-step fallbacks, i.e. linearly dependent scores;
//  - max_iterations: not converged within opts.max_iter.
TiltResult solve_moment(const ScoreMatrix& scores, const TargetSpec& spec,
                        const SolverOptions& opts = {});

// d tau / d s' = inverse of the tilted covariance, via Cholesky solves.
Matrix tau_sensitivity(const Vector& tau, const ScoreMatrix& scores);

}  // namespace tilt
