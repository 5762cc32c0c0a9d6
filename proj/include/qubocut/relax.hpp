#ifndef QUBOCUT_RELAX_HPP
#define QUBOCUT_RELAX_HPP

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qubocut/qubo.hpp"
#include "qubocut/rng.hpp"

namespace qubocut {

struct RelaxConfig {
  int iterations = 100;     // stochastic sweeps per restart
  int restarts = 50;        // independent initial conditions
  double eta = 0.05;        // perturbation step size
  int bases_sampled = 50;   // random frames tried when projecting
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (iterations <= 0 || restarts <= 0 || eta <= 0.0 || bases_sampled <= 0)
      throw std::invalid_argument("RelaxConfig: all fields must be positive");
  }
};

// Unit vectors on the circle (k=2) or sphere (k=3), stored as angles.
//   k=2: Y_i = (cos theta_i, sin theta_i),            theta in [0, 2pi)
//   k=3: Y_i = (sin t cos p, sin t sin p, cos t),     theta in [0, pi], phi in [0, 2pi)
struct RelaxedEmbedding {
  int k = 2;
  std::vector<double> theta;
  std::vector<double> phi;  // only used when k == 3

  int size() const { return static_cast<int>(theta.size()); }

  Matrix columns() const {
    const int n = size();
    Matrix y(k, n);
    for (int i = 0; i < n; ++i) {
      if (k == 2) {
        y(0, i) = std::cos(theta[i]);
        y(1, i) = std::sin(theta[i]);
      } else {
        y(0, i) = std::sin(theta[i]) * std::cos(phi[i]);
        y(1, i) = std::sin(theta[i]) * std::sin(phi[i]);
        y(2, i) = std::cos(theta[i]);
      }
    }
    return y;
  }
};

// Rank-k factor of a Gram matrix, unit columns. solve_gw returns k = m.
struct GramFactor {
  Matrix y;  // k x n

  int size() const { return static_cast<int>(y.cols()); }
};

// Point of the box relaxation y in [0,1]^n.
struct BoxPoint {
  std::vector<double> y_c;

  int size() const { return static_cast<int>(y_c.size()); }
};

namespace detail {

inline double wrap_angle_2pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

// angles of a unit k-vector, ranges as required by RelaxedEmbedding
inline void angles_from_unit(const Eigen::VectorXd& v, int k, double& theta,
                             double& phi) {
  if (k == 2) {
    theta = wrap_angle_2pi(std::atan2(v(1), v(0)));
    phi = 0.0;
  } else {
    theta = std::acos(std::clamp(v(2), -1.0, 1.0));
    phi = wrap_angle_2pi(std::atan2(v(1), v(0)));
  }
}

inline RelaxedEmbedding embedding_from_columns(const Matrix& y) {
  RelaxedEmbedding e;
  e.k = static_cast<int>(y.rows());
  const int n = static_cast<int>(y.cols());
  e.theta.resize(n);
  e.phi.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    angles_from_unit(y.col(i), e.k, e.theta[i], e.phi[i]);
  return e;
}

// Exact per-column maximization sweeps (Y_i <- -g_i / |g_i|) until the
// objective stalls. Shared by the GW solver and the BM polish.
inline double coordinate_ascent(const Matrix& a, Matrix& y, int max_sweeps) {
  const int n = static_cast<int>(y.cols());
  auto objective = [&] {
    return -0.25 * a.cwiseProduct(y.transpose() * y).sum();
  };
  double obj = objective();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd g = y * a.col(i) - a(i, i) * y.col(i);
      const double norm = g.norm();
      if (norm > 1e-14) y.col(i) = -g / norm;
    }
    const double next = objective();
    if (next - obj <= 1e-13 * (1.0 + std::abs(obj))) {
      obj = std::max(obj, next);
      break;
    }
    obj = next;
  }
  return obj;
}

}  // namespace detail

// -1/4 sum_ij A_ij (Y^T Y)_ij for unit columns Y_i.
inline double relaxation_objective(const MaxCutInstance& m, const Matrix& y) {
  if (y.cols() != m.size())
    throw std::invalid_argument("relaxation_objective: dimension mismatch");
  return -0.25 * m.adjacency.cwiseProduct(y.transpose() * y).sum();
}

inline double relaxation_objective(const MaxCutInstance& m,
                                   const GramFactor& y) {
  return relaxation_objective(m, y.y);
}

inline double relaxation_objective(const MaxCutInstance& m,
                                   const RelaxedEmbedding& e) {
  return relaxation_objective(m, e.columns());
}

// Rank-k Burer-Monteiro ascent: every restart starts from uniformly random
// angles and runs `iterations` sweeps of greedy Gaussian perturbations
// (std eta, accepted when the objective does not decrease), then exact
// coordinate sweeps polish the run to a machine-precision local optimum.
// The best restart wins.
inline RelaxedEmbedding solve_bm(const MaxCutInstance& m, int k,
                                 const RelaxConfig& cfg) {
  if (k != 2 && k != 3) throw std::invalid_argument("solve_bm: k must be 2 or 3");
  cfg.validate();
  const int n = m.size();
  const Matrix& a = m.adjacency;

  Matrix best_y;
  double best_obj = -std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(derive_seed(cfg.rng_seed, "bm", k, restart));
    std::vector<double> theta(n), phi(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (k == 2) {
        theta[i] = rng.uniform(0.0, 2.0 * M_PI);
      } else {
        theta[i] = rng.uniform(0.0, M_PI);
        phi[i] = rng.uniform(0.0, 2.0 * M_PI);
      }
    }
    RelaxedEmbedding e{k, theta, phi};
    Matrix y = e.columns();
    Matrix coupling = y * a;  // column i = sum_j A_ij Y_j

    auto column_for = [&](int i, double t, double p) {
      Eigen::VectorXd col(k);
      if (k == 2) {
        col << std::cos(t), std::sin(t);
      } else {
        col << std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t);
      }
      return col;
    };
    auto try_move = [&](int i, double t, double p) {
      const Eigen::VectorXd cand = column_for(i, t, p);
      const Eigen::VectorXd diff = cand - y.col(i);
      const Eigen::VectorXd g = coupling.col(i) - a(i, i) * y.col(i);
      const double delta = -0.5 * diff.dot(g);
      if (delta < 0.0) return false;
      coupling += diff * a.row(i);
      y.col(i) = cand;
      return true;
    };

    for (int iter = 0; iter < cfg.iterations; ++iter) {
      for (int i = 0; i < n; ++i) {
        const double t = theta[i] + cfg.eta * rng.normal();
        if (try_move(i, t, phi[i])) theta[i] = t;
        if (k == 3) {
          const double p = phi[i] + cfg.eta * rng.normal();
          if (try_move(i, theta[i], p)) phi[i] = p;
        }
      }
    }

    const double obj = detail::coordinate_ascent(a, y, 200);
    if (obj > best_obj) {
      best_obj = obj;
      best_y = y;
    }
  }
  RelaxedEmbedding result = detail::embedding_from_columns(best_y);
  result.k = k;
  return result;
}

// Full-rank (k = m) Burer-Monteiro ascent for the GW relaxation. At full
// rank the block-coordinate update Y_i <- -g_i/|g_i| has no spurious local
// optima generically, so converged restarts land on the SDP optimum.
inline GramFactor solve_gw(const MaxCutInstance& m, const RelaxConfig& cfg) {
  cfg.validate();
  const int n = m.size();
  Matrix best_y;
  double best_obj = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(derive_seed(cfg.rng_seed, "gw", restart));
    Matrix y(n, n);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd col(n);
      for (int r = 0; r < n; ++r) col(r) = rng.normal();
      const double norm = col.norm();
      y.col(i) = norm > 1e-14 ? (col / norm).eval() : Eigen::VectorXd::Unit(n, 0);
    }
    const double obj = detail::coordinate_ascent(m.adjacency, y, 2000);
    if (obj > best_obj) {
      best_obj = obj;
      best_y = y;
    }
  }
  return GramFactor{best_y};
}

// Orthonormal k-frame in R^dim: Gram-Schmidt on i.i.d. standard normal
// vectors; a degenerate draw resamples the whole frame.
inline Matrix sample_orthonormal_frame(int dim, int k, Rng& rng) {
  if (k > dim)
    throw std::invalid_argument("sample_orthonormal_frame: k exceeds dimension");
  while (true) {
    Matrix f(dim, k);
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) {
      Eigen::VectorXd v(dim);
      for (int r = 0; r < dim; ++r) v(r) = rng.normal();
      for (int prev = 0; prev < j; ++prev) v -= v.dot(f.col(prev)) * f.col(prev);
      const double norm = v.norm();
      if (norm < 1e-12) {
        ok = false;
        break;
      }
      f.col(j) = v / norm;
    }
    if (ok) return f;
  }
}

// Components x_j^T Y_i normalized to unit length; a column orthogonal to
// the frame (norm < 1e-12) gets angle 0 deterministically.
inline RelaxedEmbedding project_onto_frame(const GramFactor& y,
                                           const Matrix& frame) {
  if (frame.rows() != y.y.rows())
    throw std::invalid_argument("project_onto_frame: dimension mismatch");
  const int k = static_cast<int>(frame.cols());
  if (k != 2 && k != 3)
    throw std::invalid_argument("project_onto_frame: k must be 2 or 3");
  const int n = y.size();
  Matrix projected = frame.transpose() * y.y;  // k x n
  RelaxedEmbedding e;
  e.k = k;
  e.theta.assign(n, 0.0);
  e.phi.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double norm = projected.col(i).norm();
    if (norm < 1e-12) continue;  // theta = 0
    detail::angles_from_unit(projected.col(i) / norm, k, e.theta[i], e.phi[i]);
  }
  return e;
}

// GW_k warm-start: try `bases_sampled` random frames and keep the projected
// embedding with the largest relaxation objective.
inline RelaxedEmbedding project_gw(const GramFactor& y, const MaxCutInstance& m,
                                   int k, const RelaxConfig& cfg) {
  cfg.validate();
  if (y.size() != m.size())
    throw std::invalid_argument("project_gw: factor does not match instance");
  Rng rng(derive_seed(cfg.rng_seed, "gwproj", k));
  RelaxedEmbedding best;
  double best_obj = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < cfg.bases_sampled; ++b) {
    const Matrix frame =
        sample_orthonormal_frame(static_cast<int>(y.y.rows()), k, rng);
    RelaxedEmbedding cand = project_onto_frame(y, frame);
    const double obj = relaxation_objective(m, cand);
    if (obj > best_obj) {
      best_obj = obj;
      best = std::move(cand);
    }
  }
  return best;
}

namespace detail {

// single projected-gradient ascent of y^T Q y over [0,1]^n, Armijo
// backtracking along the projection arc, analytic gradient 2Qy
inline double box_ascent(const Matrix& q, Eigen::VectorXd& y) {
  auto value = [&](const Eigen::VectorXd& v) { return v.dot(q * v); };
  auto clamp01 = [](Eigen::VectorXd v) {
    return v.cwiseMax(0.0).cwiseMin(1.0).eval();
  };
  double f = value(y);
  for (int iter = 0; iter < 1000; ++iter) {
    const Eigen::VectorXd grad = 2.0 * (q * y);
    double t = 1.0;
    Eigen::VectorXd next = clamp01(y + t * grad);
    double fn = value(next);
    int backtracks = 0;
    while (fn < f + 1e-4 * grad.dot(next - y) && backtracks < 60) {
      t *= 0.5;
      next = clamp01(y + t * grad);
      fn = value(next);
      ++backtracks;
    }
    if (fn <= f || (next - y).lpNorm<Eigen::Infinity>() < 1e-12) {
      if (fn > f) {
        y = next;
        f = fn;
      }
      break;
    }
    y = next;
    f = fn;
  }
  return f;
}

}  // namespace detail

// Local box-relaxation optimum over `restarts` random starts. When Q is
// negative semidefinite the objective is concave and one start suffices.
inline BoxPoint solve_box_relaxed(const Qubo& q, int restarts,
                                  std::uint64_t rng_seed) {
  if (restarts < 1)
    throw std::invalid_argument("solve_box_relaxed: restarts must be >= 1");
  const int n = q.size();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q.q, Eigen::EigenvaluesOnly);
  const bool concave = eig.eigenvalues().maxCoeff() <= 1e-9;
  const int starts = concave ? 1 : restarts;

  Eigen::VectorXd best;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < starts; ++restart) {
    Rng rng(derive_seed(rng_seed, "box", restart));
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.uniform();
    const double val = detail::box_ascent(q.q, y);
    if (val > best_val) {
      best_val = val;
      best = y;
    }
  }
  BoxPoint p;
  p.y_c.assign(best.data(), best.data() + n);
  return p;
}

}  // namespace qubocut

#endif  // QUBOCUT_RELAX_HPP
