#ifndef QUBOCUT_PROBLEMS_HPP
#define QUBOCUT_PROBLEMS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qubocut/qubo.hpp"
#include "qubocut/rng.hpp"

namespace qubocut {

enum class ProblemKind {
  RandomContinuous,
  RandomDiscrete,
  Tsp,
  Portfolio,
  MisGnp,
  MisNws,
};

constexpr std::array<ProblemKind, 6> kAllProblemKinds = {
    ProblemKind::RandomContinuous, ProblemKind::RandomDiscrete,
    ProblemKind::Tsp,              ProblemKind::Portfolio,
    ProblemKind::MisGnp,           ProblemKind::MisNws};

inline std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::RandomContinuous: return "random-continuous";
    case ProblemKind::RandomDiscrete: return "random-discrete";
    case ProblemKind::Tsp: return "tsp";
    case ProblemKind::Portfolio: return "portfolio";
    case ProblemKind::MisGnp: return "mis-gnp";
    case ProblemKind::MisNws: return "mis-nws";
  }
  return "unknown";
}

inline ProblemKind problem_kind_from_string(const std::string& s) {
  for (ProblemKind kind : kAllProblemKinds)
    if (to_string(kind) == s) return kind;
  throw std::invalid_argument("unknown problem kind '" + s + "'");
}

namespace detail {

// accumulates polynomial terms into a symmetric QUBO matrix
class QuboBuilder {
 public:
  explicit QuboBuilder(int n) : q_(Matrix::Zero(n, n)) {}

  void add_linear(int a, double coef) { q_(a, a) += coef; }

  void add_quadratic(int a, int b, double coef) {
    if (a == b) {
      q_(a, a) += coef;  // x^2 = x on binary variables
    } else {
      q_(a, b) += coef / 2.0;
      q_(b, a) += coef / 2.0;
    }
  }

  Qubo build() { return Qubo(std::move(q_)); }

 private:
  Matrix q_;
};

}  // namespace detail

// Random QUBO: upper triangle (i <= j) i.i.d. uniform on [-1,1] or {-1,+1},
// mirrored to keep the matrix symmetric.
inline Qubo gen_random(ProblemKind kind, int n, std::uint64_t seed) {
  if (kind != ProblemKind::RandomContinuous && kind != ProblemKind::RandomDiscrete)
    throw std::invalid_argument("gen_random: kind must be a random ensemble");
  if (n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
  Rng rng(derive_seed(seed, "random-qubo"));
  Matrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = kind == ProblemKind::RandomContinuous
                           ? rng.uniform(-1.0, 1.0)
                           : (rng.below(2) ? 1.0 : -1.0);
      q(i, j) = v;
      q(j, i) = v;
    }
  return Qubo(std::move(q));
}

// Symmetric Euclidean TSP on `cities` random points in [-1,1]^2, encoded as
// the symmetry-reduced permutation QUBO: city 0 is pinned to time 0 and the
// remaining (cities-1)^2 variables x~_{t,i} say city i+1 is visited at time
// t+1. The QUBO maximizes -C(tour); the additive constant that a pure
// quadratic cannot carry is dropped, so feasible assignments satisfy
// qubo_value = 2 * (cities-1) * lambda - tour_length.
struct TspInstance {
  std::vector<Eigen::Vector2d> points;
  Matrix distances;
  double lambda = 0.0;

  int cities() const { return static_cast<int>(points.size()); }
  int variables() const { return (cities() - 1) * (cities() - 1); }

  int var(int t, int i) const { return (cities() - 1) * t + i; }

  // full tour starting at city 0, or nullopt if the assignment violates
  // the permutation constraints
  std::optional<std::vector<int>> decode_tour(const BinaryAssignment& x) const {
    const int m = cities() - 1;
    if (x.size() != variables()) return std::nullopt;
    std::vector<int> tour{0};
    std::vector<int> seen(cities(), 0);
    seen[0] = 1;
    for (int t = 0; t < m; ++t) {
      int city = -1;
      for (int i = 0; i < m; ++i) {
        if (!x.bits[var(t, i)]) continue;
        if (city >= 0) return std::nullopt;  // two cities in one slot
        city = i + 1;
      }
      if (city < 0 || seen[city]) return std::nullopt;
      seen[city] = 1;
      tour.push_back(city);
    }
    return tour;
  }

  double tour_length(const std::vector<int>& order) const {
    double len = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i)
      len += distances(order[i], order[(i + 1) % order.size()]);
    return len;
  }

  // value every feasible assignment attains minus its tour length
  double feasible_value_offset() const { return 2.0 * (cities() - 1) * lambda; }
};

inline std::pair<TspInstance, Qubo> gen_tsp(std::uint64_t seed, int cities = 5) {
  if (cities < 3) throw std::invalid_argument("gen_tsp: need at least 3 cities");
  Rng rng(derive_seed(seed, "tsp"));
  TspInstance inst;
  inst.points.resize(cities);
  for (int i = 0; i < cities; ++i) {
    inst.points[i].x() = rng.uniform(-1.0, 1.0);
    inst.points[i].y() = rng.uniform(-1.0, 1.0);
  }
  inst.distances = Matrix::Zero(cities, cities);
  double max_dist = 0.0;
  for (int i = 0; i < cities; ++i)
    for (int j = i + 1; j < cities; ++j) {
      const double d = (inst.points[i] - inst.points[j]).norm();
      inst.distances(i, j) = d;
      inst.distances(j, i) = d;
      max_dist = std::max(max_dist, d);
    }
  inst.lambda = 1.1 * max_dist;

  const int m = cities - 1;
  detail::QuboBuilder builder(m * m);
  const Matrix& a = inst.distances;
  const double lambda = inst.lambda;

  // tour distance between consecutive reduced time slots
  for (int t = 0; t + 1 < m; ++t)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        builder.add_quadratic(inst.var(t, i), inst.var(t + 1, j),
                              -a(i + 1, j + 1));
      }
  // boundary hops through the pinned city 0
  for (int i = 0; i < m; ++i) {
    builder.add_linear(inst.var(0, i), -a(0, i + 1));
    builder.add_linear(inst.var(m - 1, i), -a(i + 1, 0));
  }
  // -lambda (1 - sum)^2 for every time slot and every city; constants are
  // dropped, so each variable picks up +lambda from its slot constraint and
  // +lambda from its city constraint
  for (int t = 0; t < m; ++t)
    for (int i = 0; i < m; ++i) {
      builder.add_linear(inst.var(t, i), 2.0 * lambda);
      for (int i2 = i + 1; i2 < m; ++i2)
        builder.add_quadratic(inst.var(t, i), inst.var(t, i2), -2.0 * lambda);
      for (int t2 = t + 1; t2 < m; ++t2)
        builder.add_quadratic(inst.var(t, i), inst.var(t2, i), -2.0 * lambda);
    }

  return {std::move(inst), builder.build()};
}

// Portfolio selection over geometric-Brownian-motion price paths: maximize
// mu^T x - q x^T Sigma x - lambda (1^T x - B)^2 with the additive constant
// -lambda B^2 dropped from the QUBO.
struct PortfolioInstance {
  Matrix prices;  // assets x (steps + 1)
  Matrix sigma;
  Vector mu;
  int budget = 8;
  double risk = 0.5;
  double lambda = 0.0;

  int assets() const { return static_cast<int>(mu.size()); }
};

inline std::pair<PortfolioInstance, Qubo> gen_portfolio(std::uint64_t seed,
                                                        int assets = 16,
                                                        int budget = 8,
                                                        int steps = 250,
                                                        double risk = 0.5) {
  if (assets < 1 || budget < 1 || budget > assets || steps < 2)
    throw std::invalid_argument("gen_portfolio: bad parameters");
  Rng rng(derive_seed(seed, "portfolio"));
  PortfolioInstance inst;
  inst.budget = budget;
  inst.risk = risk;

  Vector drift(assets), vol(assets);
  for (int i = 0; i < assets; ++i) drift(i) = rng.uniform(-0.05, 0.05);
  for (int i = 0; i < assets; ++i) vol(i) = rng.uniform(-0.20, 0.20);

  inst.prices = Matrix::Zero(assets, steps + 1);
  const double sqrt_steps = std::sqrt(static_cast<double>(steps));
  for (int i = 0; i < assets; ++i) {
    inst.prices(i, 0) = 1.0;
    double brownian = 0.0;
    for (int k = 1; k <= steps; ++k) {
      brownian += rng.normal() / sqrt_steps;
      inst.prices(i, k) = std::exp(
          (drift(i) - vol(i) * vol(i) / 2.0) * k / steps + vol(i) * brownian);
    }
  }

  Matrix returns(assets, steps);
  for (int i = 0; i < assets; ++i)
    for (int k = 1; k <= steps; ++k)
      returns(i, k - 1) = inst.prices(i, k) / inst.prices(i, k - 1) - 1.0;

  inst.mu = returns.rowwise().mean();
  Matrix centered = returns.colwise() - inst.mu;
  inst.sigma = centered * centered.transpose() / (steps - 1);
  inst.lambda = inst.sigma.cwiseAbs().sum() + inst.mu.cwiseAbs().sum();

  detail::QuboBuilder builder(assets);
  for (int i = 0; i < assets; ++i) {
    builder.add_linear(i, inst.mu(i));
    builder.add_quadratic(i, i, -risk * inst.sigma(i, i));
    for (int j = i + 1; j < assets; ++j)
      builder.add_quadratic(i, j, -2.0 * risk * inst.sigma(i, j));
  }
  // -lambda (1^T x - B)^2, constant dropped
  for (int i = 0; i < assets; ++i) {
    builder.add_linear(i, inst.lambda * (2.0 * budget - 1.0));
    for (int j = i + 1; j < assets; ++j)
      builder.add_quadratic(i, j, -2.0 * inst.lambda);
  }
  return {std::move(inst), builder.build()};
}

enum class MisModel { Gnp, Nws };

// Maximum independent set on a connected unweighted graph:
// x^T Q x = sum_i x_i - c sum_{(i,j) in E} x_i x_j with c = 1.1.
struct MisInstance {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  double penalty = 1.1;

  std::vector<std::uint32_t> adjacency_masks() const {
    std::vector<std::uint32_t> masks(n, 0);
    for (auto [u, v] : edges) {
      masks[u] |= 1u << v;
      masks[v] |= 1u << u;
    }
    return masks;
  }

  bool is_independent(const BinaryAssignment& x) const {
    for (auto [u, v] : edges)
      if (x.bits[u] && x.bits[v]) return false;
    return true;
  }
};

namespace detail {

inline bool graph_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
  }
  return reached == n;
}

inline std::vector<std::pair<int, int>> sample_gnp(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return edges;
}

// Newman-Watts-Strogatz: ring lattice with floor(k/2) neighbors per side,
// then every lattice edge spawns a random shortcut with probability p.
// Shortcuts never duplicate an edge or form a self loop.
inline std::vector<std::pair<int, int>> sample_nws(int n, int k, double p,
                                                   Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::uint32_t> has(n, 0);
  auto add_edge = [&](int u, int v) {
    edges.emplace_back(u, v);
    has[u] |= 1u << v;
    has[v] |= 1u << u;
  };
  const int per_side = k / 2;
  for (int u = 0; u < n; ++u)
    for (int d = 1; d <= per_side; ++d) {
      const int v = (u + d) % n;
      if (!(has[u] >> v & 1u)) add_edge(u, v);
    }
  const std::size_t lattice_edges = edges.size();
  for (std::size_t e = 0; e < lattice_edges; ++e) {
    const int u = edges[e].first;
    if (!rng.bernoulli(p)) continue;
    int w = -1;
    for (int attempt = 0; attempt < 10 * n; ++attempt) {
      const int cand = static_cast<int>(rng.below(n));
      if (cand != u && !(has[u] >> cand & 1u)) {
        w = cand;
        break;
      }
    }
    if (w >= 0) add_edge(u, w);
  }
  return edges;
}

}  // namespace detail

inline std::pair<MisInstance, Qubo> gen_mis(MisModel model, std::uint64_t seed,
                                            int n = 16) {
  if (n < 2 || n > 31) throw std::invalid_argument("gen_mis: n out of range");
  constexpr int kResampleCap = 10000;
  Rng rng(derive_seed(seed, "mis", model == MisModel::Gnp ? 0 : 1));
  MisInstance inst;
  inst.n = n;
  inst.penalty = 1.1;
  bool connected = false;
  for (int draw = 0; draw < kResampleCap && !connected; ++draw) {
    inst.edges = model == MisModel::Gnp ? detail::sample_gnp(n, 0.25, rng)
                                        : detail::sample_nws(n, 3, 0.5, rng);
    connected = detail::graph_connected(n, inst.edges);
  }
  if (!connected)
    throw std::runtime_error("gen_mis: resampling budget exhausted");

  detail::QuboBuilder builder(n);
  for (int i = 0; i < n; ++i) builder.add_linear(i, 1.0);
  for (auto [u, v] : inst.edges)
    builder.add_quadratic(u, v, -inst.penalty);
  return {std::move(inst), builder.build()};
}

// QUBO from a fixed edge list, used to validate the MIS formulation on
// known graphs.
inline Qubo mis_qubo_from_edges(int n,
                                const std::vector<std::pair<int, int>>& edges,
                                double penalty = 1.1) {
  detail::QuboBuilder builder(n);
  for (int i = 0; i < n; ++i) builder.add_linear(i, 1.0);
  for (auto [u, v] : edges) builder.add_quadratic(u, v, -penalty);
  return builder.build();
}

struct GeneratedInstance {
  ProblemKind kind;
  std::uint64_t seed;
  Qubo qubo;
};

// Benchmark instance at a reduced variable count; `n` follows the random
// ensembles, TSP picks the city count whose reduced encoding fits, and MIS
// and portfolio shrink their graphs and budgets proportionally.
inline GeneratedInstance generate_scaled(ProblemKind kind, std::uint64_t seed,
                                         int n) {
  switch (kind) {
    case ProblemKind::RandomContinuous:
    case ProblemKind::RandomDiscrete:
      return {kind, seed, gen_random(kind, n, seed)};
    case ProblemKind::Tsp: {
      const int cities =
          std::max(3, static_cast<int>(std::lround(std::sqrt(double(n)))) + 1);
      return {kind, seed, gen_tsp(seed, cities).second};
    }
    case ProblemKind::Portfolio:
      return {kind, seed,
              gen_portfolio(seed, n, std::max(1, n / 2)).second};
    case ProblemKind::MisGnp:
      return {kind, seed, gen_mis(MisModel::Gnp, seed, n).second};
    case ProblemKind::MisNws:
      return {kind, seed, gen_mis(MisModel::Nws, seed, n).second};
  }
  throw std::invalid_argument("generate_scaled: unknown kind");
}

// default benchmark sizes: 16-variable QUBOs across every kind
inline GeneratedInstance generate(ProblemKind kind, std::uint64_t seed) {
  return generate_scaled(kind, seed, 16);
}

}  // namespace qubocut

#endif  // QUBOCUT_PROBLEMS_HPP
