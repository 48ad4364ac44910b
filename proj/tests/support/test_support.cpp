#include "support/test_support.hpp"

#include <algorithm>

namespace tiltest {

namespace {

// All index subsets of size k from {0..n-1}.
void subsets(Index n, Index k, std::vector<std::vector<Index>>& out) {
  std::vector<Index> cur;
  std::function<void(Index)> rec = [&](Index start) {
    if (static_cast<Index>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Index i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Derivative of KL(f + t d | p) in t: sum_i d_i log((f_i + t d_i) / p_i),
// using 1'd = 0. Strictly increasing in t, so a safeguarded scalar Newton
// finds the exact minimizer on the positivity interval.
double line_minimize(Vector& f, const Vector& p, const Vector& d) {
  double t_lo = -1e18, t_hi = 1e18;
  for (Index i = 0; i < f.size(); ++i) {
    if (d(i) > 0.0) {
      t_lo = std::max(t_lo, -f(i) / d(i));
    } else if (d(i) < 0.0) {
      t_hi = std::min(t_hi, -f(i) / d(i));
    }
  }
  const double width = t_hi - t_lo;
  t_lo += 1e-12 * width;
  t_hi -= 1e-12 * width;

  auto deriv = [&](double t) {
    double g = 0.0;
    for (Index i = 0; i < f.size(); ++i) {
      if (d(i) != 0.0) g += d(i) * std::log((f(i) + t * d(i)) / p(i));
    }
    return g;
  };

  // The derivative goes to -inf/+inf at the interval ends, so a root exists.
  double lo = t_lo, hi = t_hi, t = 0.0;
  if (deriv(0.0) > 0.0) {
    hi = 0.0;
  } else {
    lo = 0.0;
  }
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    double g = deriv(t);
    if (g > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    if (hi - lo < 1e-16 * std::max(1.0, std::abs(t))) break;
  }
  t = 0.5 * (lo + hi);
  for (Index i = 0; i < f.size(); ++i) f(i) += t * d(i);
  return t;
}

}  // namespace

std::vector<Vector> elementary_directions(const Matrix& atom_scores) {
  const Index n = atom_scores.rows();
  const Index q = atom_scores.cols();
  const Index support = std::min<Index>(n, q + 2);

  std::vector<std::vector<Index>> subs;
  subsets(n, support, subs);

  std::vector<Vector> dirs;
  for (const auto& sub : subs) {
    Matrix constraints(q + 1, support);
    for (Index c = 0; c < support; ++c) {
      constraints(0, c) = 1.0;
      for (Index j = 0; j < q; ++j) constraints(j + 1, c) = atom_scores(sub[static_cast<std::size_t>(c)], j);
    }
    const Eigen::FullPivLU<Matrix> lu(constraints);
    const auto kernel = lu.kernel();
    for (Index k = 0; k < kernel.cols(); ++k) {
      Vector d = Vector::Zero(n);
      for (Index c = 0; c < support; ++c) d(sub[static_cast<std::size_t>(c)]) = kernel(c, k);
      const double norm = d.norm();
      if (norm > 1e-12) dirs.push_back(d / norm);
    }
  }
  return dirs;
}

double brute_force_min_kl(const Vector& atom_probs, const Matrix& atom_scores, Vector f_start,
                          int sweeps) {
  const std::vector<Vector> dirs = elementary_directions(atom_scores);
  Vector f = std::move(f_start);
  double kl = discrete_kl(f, atom_probs);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (const Vector& d : dirs) {
      line_minimize(f, atom_probs, d);
    }
    const double kl_next = discrete_kl(f, atom_probs);
    if (kl - kl_next < 1e-15) {
      kl = kl_next;
      break;
    }
    kl = kl_next;
  }
  return kl;
}

}  // namespace tiltest
