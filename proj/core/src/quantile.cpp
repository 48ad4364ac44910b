#include "tilt/quantile.hpp"

#include "tilt/numeric.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace tilt {

RegionProbs::RegionProbs(Vector probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    raise(errc::invalid_argument, "region probabilities need at least 2 entries");
  }
  if (!probs_.allFinite()) raise(errc::non_finite, "region probabilities not finite");
  KahanSum total;
  for (Index i = 0; i < probs_.size(); ++i) {
    if (!(probs_(i) > 0.0)) {
      raise(errc::invalid_argument,
            "region probability " + std::to_string(i) + " is not strictly positive");
    }
    total.add(probs_(i));
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    raise(errc::invalid_argument, "region probabilities must sum to 1");
  }
}

RegionProbs region_probs_from_scores(const ScoreMatrix& scores) {
  const Matrix& S = scores.values();
  const Index I = S.rows();
  const Index q = S.cols();
  Vector probs(q + 1);
  double covered = 0.0;
  for (Index j = 0; j < q; ++j) {
    // Indicator columns sum to an integer count, exact in double.
    double count = 0.0;
    for (Index i = 0; i < I; ++i) {
      const double v = S(i, j);
      if (v != 0.0 && v != 1.0) {
        raise(errc::invalid_argument, "score matrix is not an indicator matrix");
      }
      count += v;
    }
    probs(j) = count / static_cast<double>(I);
    covered += count;
    if (probs(j) == 0.0) {
      raise(errc::empty_region,
            "no sample mass in region " + std::to_string(j) + "; refine the cutpoints");
    }
  }
  probs(q) = (static_cast<double>(I) - covered) / static_cast<double>(I);
  if (probs(q) == 0.0) {
    raise(errc::empty_region, "no sample mass in the tail region; refine the cutpoints");
  }
  return RegionProbs(std::move(probs));
}

Vector solve_quantile(const RegionProbs& baseline, const RegionProbs& target) {
  const Index q = baseline.q();
  if (target.q() != q) {
    raise(errc::invalid_argument, "baseline and target region counts differ");
  }
  Vector tau(q);
  const double b_tail = baseline.tail();
  const double t_tail = target.tail();
  for (Index i = 0; i < q; ++i) {
    tau(i) = std::log((b_tail * target.probs()(i)) / (t_tail * baseline.probs()(i)));
  }
  return tau;
}

double quantile_cumulant(const Vector& tau, const RegionProbs& baseline) {
  if (tau.size() != baseline.q()) {
    raise(errc::invalid_argument, "tau length does not match region count");
  }
  if (!tau.allFinite()) raise(errc::non_finite, "tau not finite");
  KahanSum acc;
  for (Index j = 0; j < tau.size(); ++j) {
    acc.add(baseline.probs()(j) * std::expm1(tau(j)));
  }
  return std::log1p(acc.value());
}

RegionProbs quantile_forward(const Vector& tau, const RegionProbs& baseline) {
  const double c = quantile_cumulant(tau, baseline);
  const Index q = baseline.q();
  Vector probs(q + 1);
  KahanSum covered;
  for (Index i = 0; i < q; ++i) {
    probs(i) = baseline.probs()(i) * std::exp(tau(i) - c);
    covered.add(probs(i));
  }
  probs(q) = 1.0 - covered.value();
  return RegionProbs(std::move(probs));
}

RegionProbs almost_deterministic_target(const RegionProbs& baseline, Index squeeze_index,
                                        double epsilon) {
  const Index n = baseline.probs().size();
  if (squeeze_index < 0 || squeeze_index >= n) {
    raise(errc::invalid_argument, "squeeze index out of range");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    raise(errc::invalid_argument, "epsilon must lie in (0,1)");
  }
  const double rest = 1.0 - baseline.probs()(squeeze_index);
  Vector probs(n);
  for (Index i = 0; i < n; ++i) {
    probs(i) = (i == squeeze_index) ? 1.0 - epsilon
                                    : epsilon * baseline.probs()(i) / rest;
  }
  return RegionProbs(std::move(probs));
}

}  // namespace tilt
