#include "tilt/analytic.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <utility>

namespace tilt {

PoissonTilt poisson_tilt(double mu, double target) {
  if (!(mu > 0.0)) raise(errc::non_positive, "Poisson baseline mean must be > 0");
  if (!(target > 0.0)) raise(errc::non_positive, "Poisson target mean must be > 0");
  PoissonTilt t;
  t.mu = mu;
  t.target = target;
  t.tau = std::log(target / mu);
  t.cumulant = target - mu;
  t.kl = mu + target * std::log(target / mu) - target;
  return t;
}

GaussianTilt gaussian_tilt(Matrix V, Vector target) {
  const Index q = V.rows();
  if (q == 0 || V.cols() != q) raise(errc::invalid_argument, "V must be square and nonempty");
  if (target.size() != q) raise(errc::invalid_argument, "target length must match V");
  if (!V.isApprox(V.transpose(), 1e-12)) raise(errc::not_spd, "V is not symmetric");
  Eigen::LLT<Matrix> llt(V);
  if (llt.info() != Eigen::Success) raise(errc::not_spd, "V is not positive definite");

  GaussianTilt t;
  t.V = std::move(V);
  t.Lambda = llt.solve(Matrix::Identity(q, q));
  t.Lambda = ((t.Lambda + t.Lambda.transpose()) / 2.0).eval();
  t.target = std::move(target);
  t.tau = llt.solve(t.target);
  t.cumulant = 0.5 * t.tau.dot(t.V * t.tau);
  t.kl = 0.5 * t.target.dot(t.Lambda * t.target);
  return t;
}

bool gaussian_ret_region(const Matrix& V, const Vector& tau) {
  const Index q = V.rows();
  if (q == 0 || V.cols() != q) raise(errc::invalid_argument, "V must be square and nonempty");
  if (tau.size() != q) raise(errc::invalid_argument, "tau length must match V");
  if (!V.isApprox(V.transpose(), 1e-12)) raise(errc::not_spd, "V is not symmetric");
  Eigen::LLT<Matrix> llt(V);
  if (llt.info() != Eigen::Success) raise(errc::not_spd, "V is not positive definite");
  const Vector s = V * tau;
  return (s.array() >= 0.0).all();
}

}  // namespace tilt
