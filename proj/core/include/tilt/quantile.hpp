#pragma once
// Closed-form tilting under marginal quantile constraints. With indicator
// scores the optimal tau has the analytic elementwise form
//   tau_i = log( (b_{q+1} t_i) / (t_{q+1} b_i) )
// where b are baseline region probabilities and t the targets, so no
// iteration is needed. The forward map, its cumulant, and the inverse pair
// are all exact up to floating point.

#include "tilt/types.hpp"

namespace tilt {

// Probabilities of the q+1 regions cut by q cutpoints, on the open simplex:
// every entry strictly positive, summing to 1. Carries the unconstrained tail
// region explicitly even though tau has length q.
class RegionProbs {
public:
  explicit RegionProbs(Vector probs);

  const Vector& probs() const noexcept { return probs_; }
  // Number of constrained regions q (= size - 1).
  Index q() const noexcept { return probs_.size() - 1; }
  double tail() const noexcept { return probs_(probs_.size() - 1); }

private:
  Vector probs_;
};

// Empirical region probabilities of an indicator ScoreMatrix: the q column
// means plus the implicit tail 1 - sum. Throws empty_region if any region has
// no sample mass.
RegionProbs region_probs_from_scores(const ScoreMatrix& scores);

// The analytic tau, elementwise, exact up to floating point.
Vector solve_quantile(const RegionProbs& baseline, const RegionProbs& target);

// c(tau) = log(1 + sum_j b_j (e^{tau_j} - 1)). Matches the log-sum-exp
// cumulant on the indicator ScoreMatrix the baseline was computed from.
double quantile_cumulant(const Vector& tau, const RegionProbs& baseline);

// t_i = b_i e^{tau_i - c(tau)}, tail = 1 - sum. Inverse of solve_quantile.
RegionProbs quantile_forward(const Vector& tau, const RegionProbs& baseline);

// Target with probability 1 - epsilon on region squeeze_index and the
// remaining epsilon spread over the other regions in proportion to their
// baseline probabilities.
RegionProbs almost_deterministic_target(const RegionProbs& baseline, Index squeeze_index,
                                        double epsilon);

}  // namespace tilt
