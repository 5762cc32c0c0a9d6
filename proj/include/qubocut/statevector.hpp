#ifndef QUBOCUT_STATEVECTOR_HPP
#define QUBOCUT_STATEVECTOR_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qubocut/qubo.hpp"
#include "qubocut/warmstart.hpp"

namespace qubocut {

using Complex = std::complex<double>;

// Dense statevector cap: 2^24 complex doubles is 256 MB.
constexpr int kMaxQubits = 24;

struct StateVector {
  int qubits = 0;
  std::vector<Complex> amp;

  static StateVector zero(int n) {
    if (n < 1 || n > kMaxQubits)
      throw std::invalid_argument("StateVector: qubit count out of range");
    StateVector s;
    s.qubits = n;
    s.amp.assign(std::uint64_t{1} << n, Complex{0.0, 0.0});
    return s;
  }
};

inline StateVector basis_state(int n, std::uint64_t index) {
  StateVector s = StateVector::zero(n);
  s.amp[index] = Complex{1.0, 0.0};
  return s;
}

// single-qubit amplitudes (a0, a1) of a Bloch vector
inline std::pair<Complex, Complex> bloch_amplitudes(const BlochVector& b) {
  const double theta = std::acos(std::clamp(b.z, -1.0, 1.0));
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double r = std::hypot(b.x, b.y);
  if (r < 1e-300) return {Complex{c, 0.0}, Complex{s, 0.0}};
  return {Complex{c, 0.0}, Complex{s * b.x / r, s * b.y / r}};
}

// Tensor product of the per-qubit states; qubit j lives on bit j of the
// basis index.
inline StateVector statevector_from_product(const ProductState& p) {
  const int n = p.size();
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("statevector_from_product: qubit count out of range");
  StateVector s;
  s.qubits = n;
  s.amp.assign(std::uint64_t{1} << n, Complex{0.0, 0.0});
  s.amp[0] = Complex{1.0, 0.0};
  std::uint64_t filled = 1;
  for (int j = 0; j < n; ++j) {
    const auto [a0, a1] = bloch_amplitudes(p.qubits[j]);
    for (std::uint64_t b = 0; b < filled; ++b) {
      const Complex base = s.amp[b];
      s.amp[b] = base * a0;
      s.amp[b | filled] = base * a1;
    }
    filled <<= 1;
  }
  return s;
}

// Diagonal cost Hamiltonian: one energy per computational basis state.
struct DiagonalCost {
  int qubits = 0;
  std::vector<double> energies;
  double e_min = 0.0;
  double e_max = 0.0;
  // constant excluded from the Hamiltonian (sum(Q)/4 for reduced instances),
  // kept alongside so values can be mapped back to QUBO space
  double offset = 0.0;

  void cache_extrema() {
    e_min = energies[0];
    e_max = energies[0];
    for (double e : energies) {
      e_min = std::min(e_min, e);
      e_max = std::max(e_max, e);
    }
  }
};

// energies[b] = x^T Q x with bit i of b giving x_i
inline DiagonalCost build_cost_qubo(const Qubo& q, int cap = kMaxQubits) {
  if (q.size() > cap)
    throw std::invalid_argument("build_cost_qubo: instance exceeds qubit cap");
  DiagonalCost c;
  c.qubits = q.size();
  c.energies = detail::enumerate_qubo_energies(q.q);
  c.offset = 0.0;
  c.cache_extrema();
  return c;
}

// energies[b] = y^T (-A/4) y with bit 0 meaning spin +1; the instance
// offset is stored but not part of the spectrum
inline DiagonalCost build_cost_maxcut(const MaxCutInstance& m,
                                      int cap = kMaxQubits) {
  if (m.size() > cap)
    throw std::invalid_argument("build_cost_maxcut: instance exceeds qubit cap");
  DiagonalCost c;
  c.qubits = m.size();
  c.energies = detail::enumerate_ising_energies(-0.25 * m.adjacency);
  c.offset = m.offset;
  c.cache_extrema();
  return c;
}

// e^{-i gamma H_C} on a diagonal H_C: amp[b] *= exp(-i gamma E_b)
inline void apply_phase(StateVector& s, const DiagonalCost& cost, double gamma) {
  if (s.qubits != cost.qubits)
    throw std::invalid_argument("apply_phase: dimension mismatch");
  if (gamma == 0.0) return;
  for (std::uint64_t b = 0; b < s.amp.size(); ++b)
    s.amp[b] *= std::polar(1.0, -gamma * cost.energies[b]);
}

// e^{-i beta H_B} with H_B = sum_j (x_j X + y_j Y + z_j Z); each qubit gets
// the 2x2 unitary cos(beta) I - i sin(beta) (x X + y Y + z Z)
inline void apply_mixer(StateVector& s, const ProductState& mixer, double beta) {
  if (s.qubits != mixer.size())
    throw std::invalid_argument("apply_mixer: dimension mismatch");
  const double c = std::cos(beta);
  const double sn = std::sin(beta);
  for (int j = 0; j < s.qubits; ++j) {
    const BlochVector& b = mixer.qubits[j];
    const Complex u00{c, -sn * b.z};
    const Complex u01 = Complex{0.0, -sn} * Complex{b.x, -b.y};
    const Complex u10 = Complex{0.0, -sn} * Complex{b.x, b.y};
    const Complex u11{c, sn * b.z};
    const std::uint64_t stride = std::uint64_t{1} << j;
    for (std::uint64_t base = 0; base < s.amp.size(); base += 2 * stride) {
      for (std::uint64_t low = 0; low < stride; ++low) {
        const std::uint64_t i0 = base + low;
        const std::uint64_t i1 = i0 + stride;
        const Complex a0 = s.amp[i0];
        const Complex a1 = s.amp[i1];
        s.amp[i0] = u00 * a0 + u01 * a1;
        s.amp[i1] = u10 * a0 + u11 * a1;
      }
    }
  }
}

inline double expectation(const StateVector& s, const DiagonalCost& cost) {
  if (s.qubits != cost.qubits)
    throw std::invalid_argument("expectation: dimension mismatch");
  double e = 0.0;
  for (std::uint64_t b = 0; b < s.amp.size(); ++b)
    e += std::norm(s.amp[b]) * cost.energies[b];
  return e;
}

// <psi| H_B |psi>; equals the qubit count exactly when psi is the product
// state the mixer was built from
inline double mixer_expectation(const StateVector& s, const ProductState& mixer) {
  if (s.qubits != mixer.size())
    throw std::invalid_argument("mixer_expectation: dimension mismatch");
  double total = 0.0;
  for (int j = 0; j < s.qubits; ++j) {
    const BlochVector& b = mixer.qubits[j];
    const Complex xy{b.x, -b.y};
    const std::uint64_t stride = std::uint64_t{1} << j;
    double term = 0.0;
    for (std::uint64_t base = 0; base < s.amp.size(); base += 2 * stride) {
      for (std::uint64_t low = 0; low < stride; ++low) {
        const Complex a0 = s.amp[base + low];
        const Complex a1 = s.amp[base + low + stride];
        term += b.z * (std::norm(a0) - std::norm(a1)) +
                2.0 * std::real(xy * std::conj(a0) * a1);
      }
    }
    total += term;
  }
  return total;
}

inline double state_norm(const StateVector& s) {
  double n = 0.0;
  for (const Complex& a : s.amp) n += std::norm(a);
  return std::sqrt(n);
}

// |<a|b>|^2
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubits != b.qubits)
    throw std::invalid_argument("fidelity: dimension mismatch");
  Complex overlap{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.amp.size(); ++i)
    overlap += std::conj(a.amp[i]) * b.amp[i];
  return std::norm(overlap);
}

struct QaoaParams {
  std::vector<double> beta;
  std::vector<double> gamma;

  int depth() const { return static_cast<int>(beta.size()); }

  void validate() const {
    if (beta.size() != gamma.size())
      throw std::invalid_argument("QaoaParams: beta and gamma lengths differ");
  }
};

// prod_m e^{-i beta_m H_B} e^{-i gamma_m H_C} |psi_init>; the cost layer
// acts first within each layer. p = 0 returns the encoded product state.
inline StateVector evolve(const ProductState& init, const DiagonalCost& cost,
                          const QaoaParams& params) {
  params.validate();
  if (init.size() != cost.qubits)
    throw std::invalid_argument("evolve: dimension mismatch");
  StateVector s = statevector_from_product(init);
  for (int m = 0; m < params.depth(); ++m) {
    apply_phase(s, cost, params.gamma[m]);
    apply_mixer(s, init, params.beta[m]);
  }
  return s;
}

}  // namespace qubocut

#endif  // QUBOCUT_STATEVECTOR_HPP
