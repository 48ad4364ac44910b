#include "tilt/numeric.hpp"

namespace tilt {

double log_mean_exp(const Eigen::Ref<const Eigen::VectorXd>& z) {
  const Eigen::Index n = z.size();
  const double shift = z.maxCoeff();
  KahanSum acc;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc.add(std::exp(z(i) - shift));
  }
  return shift + std::log(acc.value()) - std::log(static_cast<double>(n));
}

void softmax(const Eigen::Ref<const Eigen::VectorXd>& z, Eigen::VectorXd& out) {
  const Eigen::Index n = z.size();
  out.resize(n);
  const double shift = z.maxCoeff();
  KahanSum acc;
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = std::exp(z(i) - shift);
    acc.add(out(i));
  }
  out /= acc.value();
}

}  // namespace tilt
