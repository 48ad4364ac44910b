#include "tilt/scores.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tilt {

Functional Functional::coordinate(Index j) {
  if (j < 0) raise(errc::invalid_argument, "coordinate index must be nonnegative");
  Functional f;
  f.kind_ = Kind::Coordinate;
  f.j_ = j;
  return f;
}

Functional Functional::sum() {
  Functional f;
  f.kind_ = Kind::Sum;
  return f;
}

Functional Functional::linear(Vector coeffs) {
  if (coeffs.size() == 0) raise(errc::empty, "linear coefficient vector is empty");
  if (!coeffs.allFinite()) raise(errc::non_finite, "linear coefficients not finite");
  if ((coeffs.array() == 0.0).all()) {
    raise(errc::invalid_argument, "linear coefficient vector is all-zero");
  }
  Functional f;
  f.kind_ = Kind::Linear;
  f.coeffs_ = std::move(coeffs);
  return f;
}

Functional Functional::ratio(Index numerator, Index denominator) {
  if (numerator < 0 || denominator < 0) {
    raise(errc::invalid_argument, "ratio indices must be nonnegative");
  }
  Functional f;
  f.kind_ = Kind::Ratio;
  f.j_ = numerator;
  f.k_ = denominator;
  return f;
}

std::string Functional::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Coordinate: os << "coordinate(" << j_ << ")"; break;
    case Kind::Sum: os << "sum"; break;
    case Kind::Linear: {
      os << "linear(";
      for (Index i = 0; i < coeffs_.size(); ++i) {
        if (i > 0) os << ",";
        os << coeffs_(i);
      }
      os << ")";
      break;
    }
    case Kind::Ratio: os << "ratio(" << j_ << "/" << k_ << ")"; break;
  }
  return os.str();
}

void MomentScoreSpec::validate() const {
  if (functionals.empty()) raise(errc::empty, "moment score spec has no functionals");
}

void QuantileConstraint::validate() const {
  const Index q = cutpoints.size();
  if (q == 0) raise(errc::empty, "quantile constraint has no cutpoints");
  if (!cutpoints.allFinite()) raise(errc::non_finite, "cutpoints not finite");
  for (Index i = 1; i < q; ++i) {
    if (!(cutpoints(i - 1) < cutpoints(i))) {
      raise(errc::invalid_argument, "cutpoints must be strictly increasing");
    }
  }
  if (probs.size() != q) {
    raise(errc::invalid_argument, "probs length must match cutpoints length");
  }
  if (!probs.allFinite()) raise(errc::non_finite, "probs not finite");
  double total = 0.0;
  for (Index i = 0; i < q; ++i) {
    if (!(probs(i) > 0.0)) raise(errc::invalid_argument, "every interval probability must be > 0");
    total += probs(i);
  }
  if (!(total < 1.0)) {
    raise(errc::invalid_argument, "interval probabilities must leave tail mass: sum < 1");
  }
}

namespace {

void check_dimension(Index index, Index m, const char* what) {
  if (index >= m) {
    raise(errc::invalid_argument, std::string(what) + " index " + std::to_string(index) +
                                      " out of range for " + std::to_string(m) + " dimensions");
  }
}

}  // namespace

Vector eval_functional(const Functional& phi, const SampleMatrix& samples) {
  const Matrix& y = samples.draws();
  const Index m = y.cols();
  switch (phi.kind()) {
    case Functional::Kind::Coordinate:
      check_dimension(phi.index(), m, "coordinate");
      return y.col(phi.index());
    case Functional::Kind::Sum:
      return y.rowwise().sum();
    case Functional::Kind::Linear:
      if (phi.coeffs().size() != m) {
        raise(errc::invalid_argument, "linear coefficient length " +
                                          std::to_string(phi.coeffs().size()) +
                                          " does not match dimension " + std::to_string(m));
      }
      return y * phi.coeffs();
    case Functional::Kind::Ratio: {
      check_dimension(phi.index(), m, "ratio numerator");
      check_dimension(phi.denominator_index(), m, "ratio denominator");
      const auto den = y.col(phi.denominator_index());
      if ((den.array() == 0.0).any()) {
        raise(errc::ratio_division_by_zero,
              "ratio functional undefined: zero denominator entry in the sample");
      }
      return y.col(phi.index()).cwiseQuotient(den);
    }
  }
  raise(errc::invalid_argument, "unknown functional kind");
}

ScoreMatrix eval_moment_scores(const MomentScoreSpec& spec, const SampleMatrix& samples) {
  spec.validate();
  const Index q = static_cast<Index>(spec.functionals.size());
  Matrix values(samples.draw_count(), q);
  for (Index j = 0; j < q; ++j) {
    values.col(j) = eval_functional(spec.functionals[static_cast<std::size_t>(j)], samples);
  }
  return ScoreMatrix(std::move(values));
}

ScoreMatrix eval_quantile_scores(const QuantileConstraint& qc, const SampleMatrix& samples) {
  qc.validate();
  const Vector phi = eval_functional(qc.functional, samples);
  const Index I = phi.size();
  const Index q = qc.cutpoints.size();
  Matrix values = Matrix::Zero(I, q);
  const double* first = qc.cutpoints.data();
  const double* last = first + q;
  for (Index i = 0; i < I; ++i) {
    // First cutpoint >= phi marks the half-open interval (f_{j-1}, f_j];
    // a value above every cutpoint lands in the tail and leaves the row zero.
    const double* it = std::lower_bound(first, last, phi(i));
    if (it != last) {
      values(i, it - first) = 1.0;
    }
  }
  return ScoreMatrix(std::move(values));
}

Vector baseline_expected_scores(const ScoreMatrix& scores) {
  return scores.values().colwise().mean();
}

}  // namespace tilt
