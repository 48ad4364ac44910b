#pragma once
// Closed-form tilting for two oracle families, used to verify the numeric
// solver: a Poisson mean shift and a zero-mean multivariate normal mean
// shift. Also the Gaussian feasibility region for lower-bound targets.

#include "tilt/types.hpp"

namespace tilt {

// Poisson(mu) tilted to mean `target`: tau = log(target/mu),
// c = target - mu, kl = mu + target*log(target/mu) - target.
struct PoissonTilt {
  double mu = 0.0;
  double target = 0.0;
  double tau = 0.0;
  double cumulant = 0.0;
  double kl = 0.0;
};

PoissonTilt poisson_tilt(double mu, double target);

// N(0, V) tilted to mean `target`: tau = Lambda * target with Lambda = V^-1,
// c = tau'V tau / 2 and kl = target'Lambda target / 2 (equal in this family).
struct GaussianTilt {
  Matrix V;
  Matrix Lambda;
  Vector target;
  Vector tau;
  double cumulant = 0.0;
  double kl = 0.0;
};

GaussianTilt gaussian_tilt(Matrix V, Vector target);

// True iff every element of V*tau is >= 0, i.e. the expected score s = V*tau
// dominates the zero baseline elementwise. In the bivariate unit-variance
// case with rho > 0 this is the condition tau_2 >= max(-rho*tau_1, -tau_1/rho).
bool gaussian_ret_region(const Matrix& V, const Vector& tau);

}  // namespace tilt
