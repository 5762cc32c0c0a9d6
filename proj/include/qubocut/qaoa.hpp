#ifndef QUBOCUT_QAOA_HPP
#define QUBOCUT_QAOA_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qubocut/optimizer.hpp"
#include "qubocut/rng.hpp"
#include "qubocut/statevector.hpp"

namespace qubocut {

struct OptProtocol {
  int starts = 10;
  bool inherit_best = true;
  int max_evals = 0;  // 0 means the default budget of 200 * depth per start

  void validate() const {
    if (starts < 1) throw std::invalid_argument("OptProtocol: starts must be >= 1");
  }
};

struct OptimizeOutcome {
  QaoaParams params;
  double value = 0.0;
};

namespace detail {

inline QaoaParams unpack_params(const std::vector<double>& x, int p) {
  QaoaParams params;
  params.beta.assign(x.begin(), x.begin() + p);
  params.gamma.assign(x.begin() + p, x.begin() + 2 * p);
  return params;
}

inline std::vector<double> pack_params(const QaoaParams& params) {
  std::vector<double> x;
  x.reserve(2 * params.depth());
  x.insert(x.end(), params.beta.begin(), params.beta.end());
  x.insert(x.end(), params.gamma.begin(), params.gamma.end());
  return x;
}

}  // namespace detail

// Multi-start maximization of <psi(beta,gamma)|H_C|psi(beta,gamma)>. When
// inherit_best is on and prev_best holds the depth p-1 winner, one start is
// that point padded with a zero layer (which reproduces the p-1 circuit
// exactly); the rest draw beta in [0,pi) and gamma in [0,2pi) uniformly.
inline OptimizeOutcome optimize(const ProductState& init,
                                const DiagonalCost& cost, int p,
                                const OptProtocol& proto,
                                std::uint64_t rng_seed,
                                const std::optional<QaoaParams>& prev_best =
                                    std::nullopt) {
  if (p < 1) throw std::invalid_argument("optimize: depth must be >= 1");
  proto.validate();
  const int budget = proto.max_evals > 0 ? proto.max_evals : 200 * p;

  auto objective = [&](const std::vector<double>& x) {
    return expectation(evolve(init, cost, detail::unpack_params(x, p)), cost);
  };

  TrustRegionOptions tr_opt;
  tr_opt.max_evals = budget;

  OptimizeOutcome best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < proto.starts; ++s) {
    std::vector<double> x0;
    if (s == 0 && proto.inherit_best && prev_best) {
      QaoaParams padded = *prev_best;
      padded.validate();
      while (padded.depth() < p) {
        padded.beta.push_back(0.0);
        padded.gamma.push_back(0.0);
      }
      x0 = detail::pack_params(padded);
    } else {
      Rng rng(derive_seed(rng_seed, "qaoa-start", s));
      x0.resize(2 * p);
      for (int i = 0; i < p; ++i) x0[i] = rng.uniform(0.0, M_PI);
      for (int i = 0; i < p; ++i) x0[p + i] = rng.uniform(0.0, 2.0 * M_PI);
    }
    const TrustRegionResult r = maximize_trust_region(objective, x0, tr_opt);
    if (r.value > best.value) {
      best.value = r.value;
      best.params = detail::unpack_params(r.x, p);
    }
  }
  return best;
}

}  // namespace qubocut

#endif  // QUBOCUT_QAOA_HPP
