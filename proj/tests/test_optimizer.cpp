#include "qubocut/optimizer.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qubocut/qaoa.hpp"
#include "qubocut/qubo.hpp"
#include "qubocut/rng.hpp"
#include "qubocut/warmstart.hpp"

using namespace qubocut;

TEST(TrustRegion, MaximizesQuadraticBowl) {
  const std::vector<double> target{0.7, -1.3, 2.1, 0.4};
  auto f = [&](const std::vector<double>& x) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      v -= (x[i] - target[i]) * (x[i] - target[i]);
    return v;
  };
  TrustRegionOptions opt;
  opt.max_evals = 600;
  TrustRegionResult r = maximize_trust_region(f, {0.0, 0.0, 0.0, 0.0}, opt);
  EXPECT_GT(r.value, -1e-6);
  for (std::size_t i = 0; i < target.size(); ++i)
    EXPECT_NEAR(r.x[i], target[i], 1e-3);
}

TEST(TrustRegion, MaximizesTrigLandscape) {
  auto f = [](const std::vector<double>& x) {
    return std::cos(x[0]) + std::cos(x[1]);
  };
  TrustRegionOptions opt;
  opt.max_evals = 400;
  TrustRegionResult r = maximize_trust_region(f, {0.8, -0.9}, opt);
  EXPECT_NEAR(r.value, 2.0, 1e-6);
}

TEST(TrustRegion, HonorsEvaluationBudget) {
  int calls = 0;
  auto f = [&](const std::vector<double>& x) {
    ++calls;
    return -x[0] * x[0] - x[1] * x[1];
  };
  TrustRegionOptions opt;
  opt.max_evals = 37;
  TrustRegionResult r = maximize_trust_region(f, {3.0, -2.0}, opt);
  EXPECT_LE(calls, 37);
  EXPECT_EQ(r.evals, calls);
}

TEST(TrustRegion, NeverReturnsBelowStartValue) {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = [&](const std::vector<double>& x) {
      return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + 0.1 * x[0];
    };
    std::vector<double> x0{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double start_value = f(x0);
    TrustRegionOptions opt;
    opt.max_evals = 120;
    TrustRegionResult r = maximize_trust_region(f, x0, opt);
    EXPECT_GE(r.value, start_value);
  }
}

namespace {

DiagonalCost cost_for(const Matrix& m) { return build_cost_qubo(Qubo(m)); }

}  // namespace

TEST(Optimize, ConstantCostReturnsConstant) {
  DiagonalCost c;
  c.qubits = 2;
  c.energies.assign(4, 3.25);
  c.cache_extrema();
  OptProtocol proto;
  proto.starts = 3;
  OptimizeOutcome out = optimize(uniform_state(2), c, 1, proto, 9);
  EXPECT_NEAR(out.value, 3.25, 1e-12);
}

TEST(Optimize, BeatsEverySampledStart) {
  Matrix m(3, 3);
  m << 1, -0.5, 0.2, -0.5, 0.3, 0.7, 0.2, 0.7, -1.1;
  DiagonalCost c = cost_for(m);
  ProductState init = uniform_state(3);
  OptProtocol proto;
  proto.starts = 4;
  const std::uint64_t seed = 2025;
  OptimizeOutcome out = optimize(init, c, 2, proto, seed);
  for (int s = 1; s < proto.starts; ++s) {
    Rng rng(derive_seed(seed, "qaoa-start", s));
    QaoaParams start;
    for (int i = 0; i < 2; ++i) start.beta.push_back(rng.uniform(0.0, M_PI));
    for (int i = 0; i < 2; ++i)
      start.gamma.push_back(rng.uniform(0.0, 2.0 * M_PI));
    EXPECT_GE(out.value, expectation(evolve(init, c, start), c) - 1e-12);
  }
}

TEST(Optimize, InheritedStartGuaranteesDepthMonotonicity) {
  Matrix m(3, 3);
  m << 0.4, -0.8, 0.1, -0.8, 0.9, 0.3, 0.1, 0.3, -0.2;
  DiagonalCost c = cost_for(m);
  ProductState init = uniform_state(3);
  OptProtocol proto;
  proto.starts = 4;
  std::optional<QaoaParams> prev;
  double prev_value = -1e300;
  for (int p = 1; p <= 4; ++p) {
    OptimizeOutcome out = optimize(init, c, p, proto, 31, prev);
    EXPECT_GE(out.value, prev_value - 1e-6);
    prev = out.params;
    prev_value = out.value;
  }
}

TEST(Optimize, ZeroPaddedInheritReproducesShallowerCircuit) {
  Matrix m(2, 2);
  m << 0.5, -1.0, -1.0, 0.2;
  DiagonalCost c = cost_for(m);
  ProductState init = uniform_state(2);
  QaoaParams shallow{{0.7}, {1.9}};
  QaoaParams padded{{0.7, 0.0}, {1.9, 0.0}};
  EXPECT_NEAR(expectation(evolve(init, c, shallow), c),
              expectation(evolve(init, c, padded), c), 1e-12);
}

TEST(Optimize, DeterministicGivenSeed) {
  Matrix m(3, 3);
  m << 0.4, -0.8, 0.1, -0.8, 0.9, 0.3, 0.1, 0.3, -0.2;
  DiagonalCost c = cost_for(m);
  OptProtocol proto;
  proto.starts = 3;
  OptimizeOutcome a = optimize(uniform_state(3), c, 2, proto, 7);
  OptimizeOutcome b = optimize(uniform_state(3), c, 2, proto, 7);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.params.beta, b.params.beta);
  EXPECT_EQ(a.params.gamma, b.params.gamma);
}

TEST(Optimize, RejectsBadArguments) {
  DiagonalCost c;
  c.qubits = 1;
  c.energies = {0.0, 1.0};
  c.cache_extrema();
  OptProtocol proto;
  EXPECT_THROW(optimize(uniform_state(1), c, 0, proto, 1),
               std::invalid_argument);
  proto.starts = 0;
  EXPECT_THROW(optimize(uniform_state(1), c, 1, proto, 1),
               std::invalid_argument);
}
