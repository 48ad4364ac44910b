#include "tilt/analytic.hpp"

#include <doctest.h>

#include <cmath>

using namespace tilt;

TEST_CASE("poisson_tilt: baseline target gives zeros") {
  const PoissonTilt t = poisson_tilt(2.0, 2.0);
  CHECK(t.tau == 0.0);
  CHECK(t.cumulant == 0.0);
  CHECK(t.kl == 0.0);
}

TEST_CASE("poisson_tilt: closed forms at mu=2, target=3") {
  const PoissonTilt t = poisson_tilt(2.0, 3.0);
  CHECK(t.tau == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(t.cumulant == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.kl == doctest::Approx(2.0 + 3.0 * std::log(1.5) - 3.0).epsilon(1e-14));
}

TEST_CASE("poisson_tilt: rejects nonpositive parameters") {
  try {
    poisson_tilt(0.0, 1.0);
    FAIL("expected TiltError");
  } catch (const TiltError& e) {
    CHECK(e.code() == errc::non_positive);
  }
  CHECK_THROWS_AS(poisson_tilt(2.0, -1.0), TiltError);
}

TEST_CASE("poisson_tilt: kl convex in the target, cumulant linear, kl not convex in tau") {
  // Convexity of kl in s.
  CHECK(poisson_tilt(2.0, 2.5).kl <= (poisson_tilt(2.0, 2.0).kl + poisson_tilt(2.0, 3.0).kl) / 2.0);

  // Second differences over a target grid: c is linear in s, kl strictly convex.
  const double h = 0.25;
  for (double s = 1.0; s <= 4.0; s += h) {
    const double c2 =
        poisson_tilt(2.0, s + h).cumulant - 2.0 * poisson_tilt(2.0, s).cumulant +
        poisson_tilt(2.0, s - h).cumulant;
    CHECK(std::abs(c2) < 1e-12);
    const double k2 = poisson_tilt(2.0, s + h).kl - 2.0 * poisson_tilt(2.0, s).kl +
                      poisson_tilt(2.0, s - h).kl;
    CHECK(k2 > 0.0);
  }

  // As a function of tau, kl(tau) = mu + (tau - 1) mu e^tau has a negative
  // second difference somewhere on a tau grid.
  const auto kl_of_tau = [](double tau) {
    return poisson_tilt(2.0, 2.0 * std::exp(tau)).kl;
  };
  bool found_negative = false;
  const double ht = 0.1;
  for (double tau = -3.0; tau <= 0.5; tau += ht) {
    const double k2 = kl_of_tau(tau + ht) - 2.0 * kl_of_tau(tau) + kl_of_tau(tau - ht);
    if (k2 < 0.0) found_negative = true;
  }
  CHECK(found_negative);
}

namespace {

Matrix unit_variance(double rho) {
  Matrix V(2, 2);
  V << 1.0, rho, rho, 1.0;
  return V;
}

}  // namespace

TEST_CASE("gaussian_tilt: zero target gives zeros") {
  const GaussianTilt t = gaussian_tilt(unit_variance(0.3), Vector::Zero(2));
  CHECK(t.tau.cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.kl == 0.0);
  CHECK(t.cumulant == 0.0);
}

TEST_CASE("gaussian_tilt: rho=0.5 with target (1,0)") {
  const GaussianTilt t = gaussian_tilt(unit_variance(0.5), (Vector(2) << 1.0, 0.0).finished());
  CHECK(t.tau(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(t.tau(1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("gaussian_tilt: rho=0 makes tau equal the target") {
  const Vector target = (Vector(2) << 0.7, -0.4).finished();
  const GaussianTilt t = gaussian_tilt(unit_variance(0.0), target);
  CHECK((t.tau - target).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gaussian_tilt: kl equals the cumulant") {
  for (const double rho : {-0.6, 0.0, 0.4, 0.8}) {
    const GaussianTilt t =
        gaussian_tilt(unit_variance(rho), (Vector(2) << 0.3, -0.1).finished());
    CHECK(t.kl == doctest::Approx(t.cumulant).epsilon(1e-13));
    CHECK(t.kl == doctest::Approx(0.5 * t.target.dot(t.Lambda * t.target)).epsilon(1e-13));
  }
}

TEST_CASE("gaussian_tilt: sign pattern for positive rho") {
  // With rho > 0 and rho*s1 >= s2 >= 0, tau1 >= 0 and tau2 <= 0.
  const double rho = 0.5;
  for (const auto& [s1, s2] : {std::pair{1.0, 0.2}, {0.8, 0.4}, {1.0, 0.5}, {0.4, 0.1}}) {
    REQUIRE(rho * s1 >= s2);
    REQUIRE(s2 >= 0.0);
    const GaussianTilt t = gaussian_tilt(unit_variance(rho), (Vector(2) << s1, s2).finished());
    CHECK(t.tau(0) >= 0.0);
    CHECK(t.tau(1) <= 0.0);
  }
}

TEST_CASE("gaussian_tilt: rejects a non-SPD matrix") {
  Matrix bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  try {
    gaussian_tilt(bad, Vector::Zero(2));
    FAIL("expected TiltError");
  } catch (const TiltError& e) {
    CHECK(e.code() == errc::not_spd);
  }
}

TEST_CASE("gaussian_ret_region: boundary and both sides") {
  const Matrix V = unit_variance(0.5);
  CHECK(gaussian_ret_region(V, Vector::Zero(2)));

  // s = V tau = (0.8, 0.1) >= 0; matches tau2 >= max(-rho tau1, -tau1/rho).
  Vector tau(2);
  tau << 1.0, -0.4;
  CHECK(gaussian_ret_region(V, tau));
  CHECK(tau(1) >= std::max(-0.5 * tau(0), -tau(0) / 0.5));

  tau << 1.0, -0.8;  // s = (0.6, -0.3)
  CHECK_FALSE(gaussian_ret_region(V, tau));
}
