#pragma once
// Seeded deterministic sampling used by fixtures, tests, and resampling.
// Transforms are hand-rolled from raw engine bits because the standard
// distributions are implementation-defined and would break byte-for-byte
// reproducibility of artifacts.

#include "tilt/types.hpp"

#include <cstdint>
#include <random>

namespace tilt {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform [0,1), top 53 bits of the engine output.
  double u01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired value is cached.
  double normal();

  // Poisson count by exponential waiting times (fine for small mu).
  int poisson(double mu);

  std::uint64_t raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

// I x 1 matrix of Poisson(mu) counts.
Matrix sample_poisson(Rng& rng, Index draws, double mu);

// I x 2 matrix from N(0, [[1, rho], [rho, 1]]).
Matrix sample_bivariate_normal(Rng& rng, Index draws, double rho);

// I x 2 matrix of exp(z) with z bivariate normal on the log scale:
// means log_mean, variances log_var, correlation log_corr.
Matrix sample_bivariate_lognormal(Rng& rng, Index draws, const Vector& log_mean,
                                  const Vector& log_var, double log_corr);

}  // namespace tilt
