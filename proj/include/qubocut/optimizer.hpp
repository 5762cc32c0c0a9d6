#ifndef QUBOCUT_OPTIMIZER_HPP
#define QUBOCUT_OPTIMIZER_HPP

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qubocut {

struct TrustRegionOptions {
  int max_evals = 200;
  double initial_radius = 0.3;
  double final_radius = 1e-7;
};

struct TrustRegionResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

// Derivative-free local maximizer in the COBYLA family: a simplex of dim+1
// points defines a linear interpolation model whose gradient drives a step
// of trust-region length; the radius shrinks when steps stop paying off.
// The best point ever evaluated is returned, so the result never falls
// below the value at x0.
template <typename F>
TrustRegionResult maximize_trust_region(F&& f, const std::vector<double>& x0,
                                        const TrustRegionOptions& opt) {
  const int dim = static_cast<int>(x0.size());
  if (dim == 0) throw std::invalid_argument("maximize_trust_region: empty x0");

  TrustRegionResult best;
  best.x = x0;
  best.value = -std::numeric_limits<double>::infinity();
  int evals = 0;

  auto eval = [&](const Eigen::VectorXd& x) {
    std::vector<double> v(x.data(), x.data() + dim);
    const double val = f(v);
    ++evals;
    if (val > best.value) {
      best.value = val;
      best.x = v;
    }
    return val;
  };

  const Eigen::VectorXd start =
      Eigen::Map<const Eigen::VectorXd>(x0.data(), dim);
  double rho = opt.initial_radius;

  std::vector<Eigen::VectorXd> pts(dim + 1);
  std::vector<double> vals(dim + 1);

  auto rebuild = [&](const Eigen::VectorXd& center, double center_value) {
    pts[0] = center;
    vals[0] = center_value;
    for (int i = 0; i < dim && evals < opt.max_evals; ++i) {
      pts[i + 1] = center;
      pts[i + 1](i) += rho;
      vals[i + 1] = eval(pts[i + 1]);
    }
  };

  vals[0] = eval(start);
  rebuild(start, vals[0]);

  int stall = 0;
  while (evals < opt.max_evals && rho >= opt.final_radius) {
    int b = 0, w = 0;
    for (int i = 1; i <= dim; ++i) {
      if (vals[i] > vals[b]) b = i;
      if (vals[i] < vals[w]) w = i;
    }

    // gradient of the interpolating linear model
    Eigen::MatrixXd d(dim, dim);
    Eigen::VectorXd rhs(dim);
    int row = 0;
    for (int i = 0; i <= dim; ++i) {
      if (i == b) continue;
      d.row(row) = (pts[i] - pts[b]).transpose();
      rhs(row) = vals[i] - vals[b];
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) {
      rebuild(pts[b], vals[b]);
      continue;
    }
    const Eigen::VectorXd grad = lu.solve(rhs);
    const double gnorm = grad.norm();
    if (gnorm < 1e-14) {
      rho *= 0.5;
      rebuild(pts[b], vals[b]);
      continue;
    }

    const Eigen::VectorXd candidate = pts[b] + (rho / gnorm) * grad;
    const double cval = eval(candidate);
    if (cval > vals[b]) {
      pts[w] = candidate;
      vals[w] = cval;
      stall = 0;
      continue;
    }
    if (cval > vals[w]) {
      pts[w] = candidate;
      vals[w] = cval;
    }
    if (++stall >= 2) {
      stall = 0;
      rho *= 0.5;
      int nb = 0;
      for (int i = 1; i <= dim; ++i)
        if (vals[i] > vals[nb]) nb = i;
      rebuild(pts[nb], vals[nb]);
    }
  }

  best.evals = evals;
  return best;
}

}  // namespace qubocut

#endif  // QUBOCUT_OPTIMIZER_HPP
