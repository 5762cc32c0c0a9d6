#ifndef QUBOCUT_WARMSTART_HPP
#define QUBOCUT_WARMSTART_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubocut/relax.hpp"
#include "qubocut/rng.hpp"

namespace qubocut {

struct BlochVector {
  double x = 0.0, y = 0.0, z = 1.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Separable n-qubit state as one Bloch vector per qubit; doubles as the
// mixer definition, since H_B is built from exactly these coordinates.
struct ProductState {
  std::vector<BlochVector> qubits;

  int size() const { return static_cast<int>(qubits.size()); }

  // Qubits sitting at a Bloch pole are flagged for diagnostics: the
  // infinite-depth convergence argument assumes none are there.
  std::vector<int> pole_qubits(double tol = 1e-9) const {
    std::vector<int> at_pole;
    for (int j = 0; j < size(); ++j)
      if (std::abs(qubits[j].z) >= 1.0 - tol) at_pole.push_back(j);
    return at_pole;
  }

  bool has_pole_qubit(double tol = 1e-9) const {
    return !pole_qubits(tol).empty();
  }
};

struct RotationChoice {
  enum class Kind { First, Last, None, Qubit };

  Kind kind = Kind::None;
  int index = -1;

  static RotationChoice first() { return {Kind::First, -1}; }
  static RotationChoice last() { return {Kind::Last, -1}; }
  static RotationChoice none() { return {Kind::None, -1}; }
  static RotationChoice qubit(int i) { return {Kind::Qubit, i}; }

  // nullopt means no rotation
  std::optional<int> resolve(int qubit_count) const {
    switch (kind) {
      case Kind::First:
        return 0;
      case Kind::Last:
        return qubit_count - 1;
      case Kind::None:
        return std::nullopt;
      case Kind::Qubit:
        if (index < 0 || index >= qubit_count)
          throw std::invalid_argument("RotationChoice: index out of range");
        return index;
    }
    return std::nullopt;
  }

  std::string name() const {
    switch (kind) {
      case Kind::First:
        return "first";
      case Kind::Last:
        return "last";
      case Kind::None:
        return "none";
      case Kind::Qubit:
        return "q" + std::to_string(index);
    }
    return "none";
  }

  static RotationChoice parse(const std::string& s) {
    if (s == "first") return first();
    if (s == "last") return last();
    if (s == "none") return none();
    const std::string digits = (!s.empty() && s[0] == 'q') ? s.substr(1) : s;
    try {
      return qubit(std::stoi(digits));
    } catch (const std::exception&) {
      throw std::invalid_argument("RotationChoice: cannot parse '" + s + "'");
    }
  }
};

// Bloch-sphere encoding of a relaxed embedding.
//   k=2: |psi_j> = cos(theta_j/2)|0> + e^{-i pi/2} sin(theta_j/2)|1>,
//        Bloch vector (0, -sin theta_j, cos theta_j)
//   k=3: Bloch vector (sin t cos p, sin t sin p, cos t)
inline ProductState encode_embedding(const RelaxedEmbedding& e) {
  ProductState s;
  s.qubits.resize(e.size());
  for (int j = 0; j < e.size(); ++j) {
    if (e.k == 2) {
      s.qubits[j] = {0.0, -std::sin(e.theta[j]), std::cos(e.theta[j])};
    } else {
      s.qubits[j] = {std::sin(e.theta[j]) * std::cos(e.phi[j]),
                     std::sin(e.theta[j]) * std::sin(e.phi[j]),
                     std::cos(e.theta[j])};
    }
  }
  return s;
}

// QUBO-relaxed encoding: qubit j is R_Y(theta_j)|0> with
// theta_j = 2 arcsin(clamp(y_c_j, eps, 1-eps)). The clamp keeps every qubit
// strictly off the poles.
inline ProductState encode_box(const BoxPoint& p, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("encode_box: eps must lie in (0, 1/2)");
  ProductState s;
  s.qubits.resize(p.size());
  for (int j = 0; j < p.size(); ++j) {
    const double clamped = std::clamp(p.y_c[j], eps, 1.0 - eps);
    const double theta = 2.0 * std::asin(clamped);
    s.qubits[j] = {std::sin(theta), 0.0, std::cos(theta)};
  }
  return s;
}

// Vertex-at-top rotation: a global rotation of the embedding placing qubit
// j's vector at the north pole, so its encoded state is exactly |0>.
//   k=2: theta -> theta - theta_j
//   k=3: R_z(-phi_j), then R_y(-theta_j), then a random z-rotation
inline RelaxedEmbedding vertex_at_top(const RelaxedEmbedding& e,
                                      const RotationChoice& choice,
                                      std::uint64_t rng_seed) {
  const std::optional<int> target = choice.resolve(e.size());
  if (!target) return e;
  const int j = *target;

  RelaxedEmbedding out = e;
  if (e.k == 2) {
    const double shift = e.theta[j];
    for (int i = 0; i < e.size(); ++i)
      out.theta[i] = detail::wrap_angle_2pi(e.theta[i] - shift);
    out.theta[j] = 0.0;
    return out;
  }

  Rng rng(derive_seed(rng_seed, "vtop", j));
  const double psi = rng.uniform(0.0, 2.0 * M_PI);
  Eigen::Matrix3d rz1, ry, rz2;
  const double cp = std::cos(-e.phi[j]), sp = std::sin(-e.phi[j]);
  const double ct = std::cos(-e.theta[j]), st = std::sin(-e.theta[j]);
  const double cr = std::cos(psi), sr = std::sin(psi);
  rz1 << cp, -sp, 0, sp, cp, 0, 0, 0, 1;
  ry << ct, 0, st, 0, 1, 0, -st, 0, ct;
  rz2 << cr, -sr, 0, sr, cr, 0, 0, 0, 1;
  const Eigen::Matrix3d rot = rz2 * ry * rz1;

  const Matrix cols = rot * e.columns();
  out = detail::embedding_from_columns(cols);
  out.k = 3;
  out.theta[j] = 0.0;  // exact by construction
  out.phi[j] = 0.0;
  return out;
}

// |+>^{otimes n}
inline ProductState uniform_state(int n) {
  if (n < 1) throw std::invalid_argument("uniform_state: n must be >= 1");
  ProductState s;
  s.qubits.assign(n, BlochVector{1.0, 0.0, 0.0});
  return s;
}

}  // namespace qubocut

#endif  // QUBOCUT_WARMSTART_HPP
