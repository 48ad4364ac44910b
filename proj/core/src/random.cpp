#include "tilt/random.hpp"

#include <cmath>
#include <numbers>

namespace tilt {

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  // Box-Muller on (0,1] uniforms so the log argument is never zero.
  const double u1 = 1.0 - u01();
  const double u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(angle);
  has_cached_ = true;
  return r * std::cos(angle);
}

int Rng::poisson(double mu) {
  if (!(mu > 0.0)) raise(errc::non_positive, "Poisson mean must be > 0");
  const double limit = std::exp(-mu);
  int count = 0;
  double prod = u01();
  while (prod > limit) {
    ++count;
    prod *= u01();
  }
  return count;
}

Matrix sample_poisson(Rng& rng, Index draws, double mu) {
  Matrix out(draws, 1);
  for (Index i = 0; i < draws; ++i) {
    out(i, 0) = static_cast<double>(rng.poisson(mu));
  }
  return out;
}

Matrix sample_bivariate_normal(Rng& rng, Index draws, double rho) {
  if (!(rho > -1.0 && rho < 1.0)) {
    raise(errc::invalid_argument, "correlation must lie in (-1,1)");
  }
  const double mix = std::sqrt(1.0 - rho * rho);
  Matrix out(draws, 2);
  for (Index i = 0; i < draws; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    out(i, 0) = z1;
    out(i, 1) = rho * z1 + mix * z2;
  }
  return out;
}

Matrix sample_bivariate_lognormal(Rng& rng, Index draws, const Vector& log_mean,
                                  const Vector& log_var, double log_corr) {
  if (log_mean.size() != 2 || log_var.size() != 2) {
    raise(errc::invalid_argument, "log-scale parameters must have length 2");
  }
  if (!(log_var(0) > 0.0) || !(log_var(1) > 0.0)) {
    raise(errc::non_positive, "log-scale variances must be > 0");
  }
  if (!(log_corr > -1.0 && log_corr < 1.0)) {
    raise(errc::invalid_argument, "log-scale correlation must lie in (-1,1)");
  }
  const double sd1 = std::sqrt(log_var(0));
  const double sd2 = std::sqrt(log_var(1));
  const double mix = std::sqrt(1.0 - log_corr * log_corr);
  Matrix out(draws, 2);
  for (Index i = 0; i < draws; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    out(i, 0) = std::exp(log_mean(0) + sd1 * z1);
    out(i, 1) = std::exp(log_mean(1) + sd2 * (log_corr * z1 + mix * z2));
  }
  return out;
}

}  // namespace tilt
