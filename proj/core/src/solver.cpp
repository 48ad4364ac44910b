#include "tilt/solver.hpp"

#include "tilt/numeric.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace tilt {

void SolverOptions::validate() const {
  if (!(grad_tol > 0.0)) raise(errc::invalid_argument, "grad_tol must be > 0");
  if (max_iter < 1) raise(errc::invalid_argument, "max_iter must be >= 1");
  if (!(tau_bound > 0.0)) raise(errc::invalid_argument, "tau_bound must be > 0");
  if (!(armijo > 0.0) || armijo >= 1.0) raise(errc::invalid_argument, "armijo must be in (0,1)");
}

namespace {

void check_tau(const Vector& tau, const ScoreMatrix& scores) {
  if (tau.size() != scores.score_count()) {
    raise(errc::invalid_argument, "tau length " + std::to_string(tau.size()) +
                                      " does not match score count " +
                                      std::to_string(scores.score_count()));
  }
  if (!tau.allFinite()) raise(errc::non_finite, "tau contains NaN or infinite entries");
}

// Mean and covariance of the rows of S under normalized weights w.
// Compensated accumulation throughout; cov symmetrized by construction.
TiltedMoments weighted_moments(const Matrix& S, const Vector& w) {
  const Index I = S.rows();
  const Index q = S.cols();
  TiltedMoments out;

  std::vector<KahanSum> mean_acc(static_cast<std::size_t>(q));
  for (Index i = 0; i < I; ++i) {
    const double wi = w(i);
    for (Index j = 0; j < q; ++j) {
      mean_acc[static_cast<std::size_t>(j)].add(wi * S(i, j));
    }
  }
  out.mean.resize(q);
  for (Index j = 0; j < q; ++j) {
    out.mean(j) = mean_acc[static_cast<std::size_t>(j)].value();
  }

  std::vector<KahanSum> cov_acc(static_cast<std::size_t>(q * q));
  Vector centered(q);
  for (Index i = 0; i < I; ++i) {
    const double wi = w(i);
    for (Index j = 0; j < q; ++j) centered(j) = S(i, j) - out.mean(j);
    for (Index j = 0; j < q; ++j) {
      const double wc = wi * centered(j);
      for (Index k = j; k < q; ++k) {
        cov_acc[static_cast<std::size_t>(j * q + k)].add(wc * centered(k));
      }
    }
  }
  out.cov.resize(q, q);
  for (Index j = 0; j < q; ++j) {
    for (Index k = j; k < q; ++k) {
      const double v = cov_acc[static_cast<std::size_t>(j * q + k)].value();
      out.cov(j, k) = v;
      out.cov(k, j) = v;
    }
  }
  return out;
}

// Cholesky solve with a pivot-ratio guard against near-singularity.
bool spd_solve(const Matrix& A, const Vector& b, Vector& x) {
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success) return false;
  const Vector diag = llt.matrixLLT().diagonal();
  const double dmax = diag.maxCoeff();
  const double dmin = diag.minCoeff();
  if (!(dmin > 0.0) || dmin < dmax * 1e-8) return false;
  x = llt.solve(b);
  return x.allFinite();
}

struct NewtonOutcome {
  Vector tau;
  int iterations = 0;
};

// Damped Newton on the dual D(tau) = c(tau) - tau's over the given columns.
// Assumes no column of S is constant.
NewtonOutcome newton_minimize(const Matrix& S, const Vector& target, const SolverOptions& opts) {
  const Index I = S.rows();
  const Index q = S.cols();
  const double s_scale = 1.0 + target.cwiseAbs().maxCoeff();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  Vector tau = Vector::Zero(q);
  Vector z(I), w(I), grad(q), dir(q), cand(q), zc(I);

  // One cheap warm start: the small-perturbation approximation
  // tau ~ V0^-1 (s - s0), exact in the Gaussian case.
  {
    const TiltedMoments base = weighted_moments(S, Vector::Constant(I, 1.0 / double(I)));
    Vector tau0;
    if (spd_solve(base.cov, target - base.mean, tau0) &&
        tau0.cwiseAbs().maxCoeff() <= opts.tau_bound) {
      tau = tau0;
    }
  }

  int consecutive_singular = 0;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    z.noalias() = S * tau;
    const double c = log_mean_exp(z);
    softmax(z, w);
    const TiltedMoments mo = weighted_moments(S, w);
    grad = mo.mean - target;
    const double dual = c - tau.dot(target);

    if (grad.cwiseAbs().maxCoeff() <= opts.grad_tol * s_scale) {
      return {tau, iter};
    }

    if (spd_solve(mo.cov, grad, dir)) {
      dir = -dir;
      consecutive_singular = 0;
    } else {
      // Gradient fallback; persistent failure means linearly dependent scores.
      dir = -grad;
      if (++consecutive_singular > 15) {
        raise(errc::singular_hessian,
              "tilted covariance not positive definite after repeated gradient fallbacks");
      }
    }
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
    }

    // Backtracking line search from step 1, Armijo test with an eps-level
    // slack so the comparison stays meaningful once decrements reach
    // rounding scale.
    const double slack = 4.0 * eps * (1.0 + std::abs(dual));
    double step = 1.0;
    bool accepted = false;
    for (int h = 0; h < 60; ++h) {
      cand = tau + step * dir;
      zc.noalias() = S * cand;
      const double dual_cand = log_mean_exp(zc) - cand.dot(target);
      if (dual_cand <= dual + opts.armijo * step * slope + slack) {
        tau = cand;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      raise(errc::infeasible_target,
            "line search failed: target appears to lie outside the convex hull "
            "of the sample score vectors");
    }
    if (tau.cwiseAbs().maxCoeff() > 0.999 * opts.tau_bound) {
      raise(errc::infeasible_target,
            "tau escaped the divergence bound " + std::to_string(opts.tau_bound) +
                ": target appears infeasible on this sample");
    }
  }
  raise(errc::max_iterations,
        "no convergence within " + std::to_string(opts.max_iter) + " iterations");
}

}  // namespace

double cumulant(const Vector& tau, const ScoreMatrix& scores) {
  check_tau(tau, scores);
  const Vector z = scores.values() * tau;
  return log_mean_exp(z);
}

TiltedMoments tilted_moments(const Vector& tau, const ScoreMatrix& scores) {
  check_tau(tau, scores);
  const Vector z = scores.values() * tau;
  Vector w;
  softmax(z, w);
  return weighted_moments(scores.values(), w);
}

TiltResult solve_moment(const ScoreMatrix& scores, const TargetSpec& spec,
                        const SolverOptions& opts) {
  opts.validate();
  spec.validate();
  const Matrix& S = scores.values();
  const Index I = S.rows();
  const Index q = S.cols();
  if (spec.target.size() != q) {
    raise(errc::invalid_argument, "target length " + std::to_string(spec.target.size()) +
                                      " does not match score count " + std::to_string(q));
  }

  // A constant score column carries no tilting freedom: its tau is pinned to
  // 0 and its target must equal the constant exactly, or no solution exists.
  std::vector<Index> active;
  active.reserve(static_cast<std::size_t>(q));
  for (Index j = 0; j < q; ++j) {
    const double lo = S.col(j).minCoeff();
    const double hi = S.col(j).maxCoeff();
    if (lo == hi) {
      if (spec.target(j) != lo) {
        raise(errc::infeasible_target, "score column " + std::to_string(j) +
                                           " is constant at " + std::to_string(lo) +
                                           " but the target is " +
                                           std::to_string(spec.target(j)));
      }
    } else {
      active.push_back(j);
    }
  }

  Vector tau = Vector::Zero(q);
  int iterations = 0;
  if (!active.empty()) {
    Matrix Sa(I, static_cast<Index>(active.size()));
    Vector ta(static_cast<Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) {
      Sa.col(static_cast<Index>(a)) = S.col(active[a]);
      ta(static_cast<Index>(a)) = spec.target(active[a]);
    }
    NewtonOutcome out = newton_minimize(Sa, ta, opts);
    for (std::size_t a = 0; a < active.size(); ++a) {
      tau(active[a]) = out.tau(static_cast<Index>(a));
    }
    iterations = out.iterations;
  }

  TiltResult result;
  result.tau = tau;
  const Vector z = S * tau;
  result.cumulant = log_mean_exp(z);
  softmax(z, result.weights);
  const TiltedMoments mo = weighted_moments(S, result.weights);
  result.achieved_mean = mo.mean;
  result.achieved_cov = mo.cov;
  result.kl = tau.dot(spec.target) - result.cumulant;
  KahanSum sq;
  for (Index i = 0; i < I; ++i) sq.add(result.weights(i) * result.weights(i));
  result.ess = 1.0 / sq.value();
  result.iterations = iterations;
  result.converged = true;
  return result;
}

Matrix tau_sensitivity(const Vector& tau, const ScoreMatrix& scores) {
  const TiltedMoments mo = tilted_moments(tau, scores);
  const Index q = mo.cov.rows();
  Matrix inv(q, q);
  Eigen::LLT<Matrix> llt(mo.cov);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    const Vector diag = llt.matrixLLT().diagonal();
    ok = diag.minCoeff() > 0.0 && diag.minCoeff() >= diag.maxCoeff() * 1e-8;
  }
  if (!ok) {
    raise(errc::singular_hessian,
          "tilted covariance is not positive definite to working precision");
  }
  inv = llt.solve(Matrix::Identity(q, q));
  // Symmetrize: the solve introduces eps-level asymmetry.
  inv = ((inv + inv.transpose()) / 2.0).eval();
  return inv;
}

}  // namespace tilt
