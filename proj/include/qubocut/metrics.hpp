#ifndef QUBOCUT_METRICS_HPP
#define QUBOCUT_METRICS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qubocut/problems.hpp"
#include "qubocut/statevector.hpp"

namespace qubocut {

// Instance-specific approximation ratio alpha and optimal sampling
// probability P, both in [0,1] by construction.
struct MetricPair {
  double alpha = 0.0;
  double p_opt = 0.0;
};

// (E - E_min) / (E_max - E_min); a degenerate spectrum counts as 1 since
// every state is optimal then.
inline double approx_ratio(const StateVector& s, const DiagonalCost& cost) {
  if (cost.e_max == cost.e_min) return 1.0;
  const double ratio =
      (expectation(s, cost) - cost.e_min) / (cost.e_max - cost.e_min);
  return std::clamp(ratio, 0.0, 1.0);
}

// total probability mass on basis states within kOptimumTol of E_max
inline double opt_prob(const StateVector& s, const DiagonalCost& cost) {
  if (s.qubits != cost.qubits)
    throw std::invalid_argument("opt_prob: dimension mismatch");
  double mass = 0.0;
  for (std::uint64_t b = 0; b < s.amp.size(); ++b)
    if (cost.energies[b] >= cost.e_max - kOptimumTol) mass += std::norm(s.amp[b]);
  return std::min(mass, 1.0);
}

inline MetricPair evaluate_metrics(const StateVector& s,
                                   const DiagonalCost& cost) {
  return {approx_ratio(s, cost), opt_prob(s, cost)};
}

namespace detail {

// measurement distribution of a Max-Cut-space state pushed through
// spins_to_binary into QUBO space
inline std::vector<double> marginalize_to_qubo(const StateVector& s, int n) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::vector<double> probs(std::uint64_t{1} << n, 0.0);
  for (std::uint64_t b = 0; b < s.amp.size(); ++b) {
    const bool aux_flipped = (b >> n) & 1u;  // y_n = -1
    const std::uint64_t x = aux_flipped ? (~b & mask) : (b & mask);
    probs[x] += std::norm(s.amp[b]);
  }
  return probs;
}

inline MetricPair metrics_from_distribution(const std::vector<double>& probs,
                                            const DiagonalCost& cost) {
  double energy = 0.0;
  double mass = 0.0;
  for (std::uint64_t b = 0; b < probs.size(); ++b) {
    energy += probs[b] * cost.energies[b];
    if (cost.energies[b] >= cost.e_max - kOptimumTol) mass += probs[b];
  }
  MetricPair pair;
  pair.alpha = cost.e_max == cost.e_min
                   ? 1.0
                   : std::clamp((energy - cost.e_min) / (cost.e_max - cost.e_min),
                                0.0, 1.0);
  pair.p_opt = std::min(mass, 1.0);
  return pair;
}

}  // namespace detail

// Computes (alpha, P) for a state on the reduced Max-Cut instance of Q, both
// directly in Max-Cut space and after projecting the measurement
// distribution down to QUBO space. The two must agree: the reduction offset
// cancels in alpha and optima correspond two-to-one. Disagreement beyond
// 1e-9 throws.
inline std::pair<MetricPair, MetricPair> cross_space_check(
    const Qubo& q, const StateVector& maxcut_state) {
  const int n = q.size();
  if (maxcut_state.qubits != n + 1)
    throw std::invalid_argument(
        "cross_space_check: state must live on the reduced instance");
  const MaxCutInstance m = qubo_to_maxcut(q);
  const DiagonalCost cost_m = build_cost_maxcut(m);
  const MetricPair in_maxcut = evaluate_metrics(maxcut_state, cost_m);

  const DiagonalCost cost_q = build_cost_qubo(q);
  const std::vector<double> probs = detail::marginalize_to_qubo(maxcut_state, n);
  const MetricPair in_qubo = detail::metrics_from_distribution(probs, cost_q);

  if (std::abs(in_maxcut.alpha - in_qubo.alpha) > 1e-9 ||
      std::abs(in_maxcut.p_opt - in_qubo.p_opt) > 1e-9)
    throw std::runtime_error("cross_space_check: metric spaces disagree");
  return {in_maxcut, in_qubo};
}

// Piecewise-constant density of alpha over 101 uniform bins of [0,1]; the
// last bin is right-closed. peak_density is the normalizer P_max reported
// alongside the distribution plots.
struct AlphaHistogram {
  static constexpr int kBins = 101;
  std::array<double, kBins> density{};
  double peak_density = 0.0;
  std::uint64_t sample_count = 0;
};

inline AlphaHistogram make_alpha_histogram(const std::vector<double>& samples) {
  AlphaHistogram h;
  h.sample_count = samples.size();
  if (samples.empty()) return h;
  std::array<std::uint64_t, AlphaHistogram::kBins> counts{};
  for (double a : samples) {
    const int bin = std::min(static_cast<int>(a * AlphaHistogram::kBins),
                             AlphaHistogram::kBins - 1);
    ++counts[std::max(bin, 0)];
  }
  const double width = 1.0 / AlphaHistogram::kBins;
  for (int b = 0; b < AlphaHistogram::kBins; ++b) {
    h.density[b] = counts[b] / (width * samples.size());
    h.peak_density = std::max(h.peak_density, h.density[b]);
  }
  return h;
}

// alpha of every computational basis state of the reduced Max-Cut instance,
// pooled over `instances` generated problems
inline std::vector<double> pooled_alpha_samples(ProblemKind kind, int instances,
                                                std::uint64_t rng_seed,
                                                int variables = 16) {
  if (instances < 1)
    throw std::invalid_argument("pooled_alpha_samples: instances must be >= 1");
  std::vector<double> samples;
  for (int i = 0; i < instances; ++i) {
    const GeneratedInstance g =
        generate_scaled(kind, derive_seed(rng_seed, "alpha-pool", i), variables);
    const MaxCutInstance m = qubo_to_maxcut(g.qubo);
    const std::vector<double> energies =
        detail::enumerate_ising_energies(-0.25 * m.adjacency);
    double e_min = energies[0], e_max = energies[0];
    for (double e : energies) {
      e_min = std::min(e_min, e);
      e_max = std::max(e_max, e);
    }
    samples.reserve(samples.size() + energies.size());
    if (e_max == e_min) {
      samples.insert(samples.end(), energies.size(), 1.0);
      continue;
    }
    for (double e : energies)
      samples.push_back(std::clamp((e - e_min) / (e_max - e_min), 0.0, 1.0));
  }
  return samples;
}

inline AlphaHistogram alpha_histogram(ProblemKind kind, int instances,
                                      std::uint64_t rng_seed,
                                      int variables = 16) {
  return make_alpha_histogram(
      pooled_alpha_samples(kind, instances, rng_seed, variables));
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = (m + v[mid - 1]) / 2.0;
  }
  return m;
}

}  // namespace qubocut

#endif  // QUBOCUT_METRICS_HPP
