#pragma once
// Small numerical utilities: compensated summation and the log-sum-exp shift.
// Weight accumulations run over up to 1e7 draws with skewed weights, so every
// reduction here is Neumaier-compensated.

#include <Eigen/Dense>

#include <cmath>

namespace tilt {

// Neumaier variant of Kahan summation.
class KahanSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log( (1/n) * sum_i exp(z_i) ), shifted by max(z) so the exponentials cannot
// overflow. Finite for any finite input.
double log_mean_exp(const Eigen::Ref<const Eigen::VectorXd>& z);

// w_i = exp(z_i - max z) / sum_j exp(z_j - max z), written into `out`.
void softmax(const Eigen::Ref<const Eigen::VectorXd>& z, Eigen::VectorXd& out);

}  // namespace tilt
