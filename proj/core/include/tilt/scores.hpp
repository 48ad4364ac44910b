#pragma once
// Score-function definitions and evaluation: moment scores over functionals
// of y, and indicator scores over half-open intervals for quantile
// constraints. Consumers may also supply a precomputed ScoreMatrix directly.

#include "tilt/types.hpp"

#include <string>
#include <vector>

namespace tilt {

// A scalar functional phi(y) of one draw.
class Functional {
public:
  enum class Kind { Coordinate, Sum, Linear, Ratio };

  static Functional coordinate(Index j);
  static Functional sum();
  static Functional linear(Vector coeffs);
  // phi(y) = y[numerator] / y[denominator]
  static Functional ratio(Index numerator, Index denominator);

  Kind kind() const noexcept { return kind_; }
  Index index() const noexcept { return j_; }
  Index denominator_index() const noexcept { return k_; }
  const Vector& coeffs() const noexcept { return coeffs_; }

  std::string describe() const;

private:
  Functional() = default;

  Kind kind_ = Kind::Sum;
  Index j_ = 0;
  Index k_ = 0;
  Vector coeffs_;
};

struct MomentScoreSpec {
  std::vector<Functional> functionals;

  void validate() const;
};

// Quantile constraint on phi(y): strictly increasing cutpoints f_1..f_q and
// target probabilities for the half-open intervals (f_{i-1}, f_i], with the
// tail (f_q, inf) carrying the remaining 1 - sum(probs) > 0.
struct QuantileConstraint {
  Functional functional = Functional::sum();
  Vector cutpoints;
  Vector probs;

  void validate() const;
};

// Element i is phi(y_i). Ratio errors on an exactly-zero denominator entry;
// an infinity would poison the cumulant downstream.
Vector eval_functional(const Functional& phi, const SampleMatrix& samples);

// Column j holds eval_functional(functionals[j], samples).
ScoreMatrix eval_moment_scores(const MomentScoreSpec& spec, const SampleMatrix& samples);

// Entry (i,j) = 1 iff f_{j-1} < phi(y_i) <= f_j with f_0 = -inf. A value equal
// to a cutpoint belongs to the lower-indexed interval; ties are exact, no
// epsilon band. The tail region carries no column, so each row sums to <= 1.
ScoreMatrix eval_quantile_scores(const QuantileConstraint& qc, const SampleMatrix& samples);

// Column means; for indicator scores this is the empirical probability of
// each region under the baseline.
Vector baseline_expected_scores(const ScoreMatrix& scores);

}  // namespace tilt
