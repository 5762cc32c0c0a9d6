#ifndef QUBOCUT_QUBO_HPP
#define QUBOCUT_QUBO_HPP

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qubocut {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr int kBruteForceCap = 20;
constexpr double kOptimumTol = 1e-9;

// Binary assignment x in {0,1}^n. Bit i of a basis index corresponds to
// bits[i], matching the statevector qubit ordering.
struct BinaryAssignment {
  std::vector<int> bits;

  int size() const { return static_cast<int>(bits.size()); }
};

// Spin assignment y in {-1,+1}^m. Basis index bit 0 means spin +1.
struct SpinAssignment {
  std::vector<int> spins;

  int size() const { return static_cast<int>(spins.size()); }
};

inline BinaryAssignment binary_from_index(std::uint64_t index, int n) {
  BinaryAssignment a;
  a.bits.resize(n);
  for (int i = 0; i < n; ++i) a.bits[i] = static_cast<int>((index >> i) & 1u);
  return a;
}

inline std::uint64_t index_from_binary(const BinaryAssignment& a) {
  std::uint64_t index = 0;
  for (int i = 0; i < a.size(); ++i)
    if (a.bits[i]) index |= std::uint64_t{1} << i;
  return index;
}

inline SpinAssignment spins_from_index(std::uint64_t index, int m) {
  SpinAssignment s;
  s.spins.resize(m);
  for (int i = 0; i < m; ++i) s.spins[i] = ((index >> i) & 1u) ? -1 : +1;
  return s;
}

inline std::uint64_t index_from_spins(const SpinAssignment& s) {
  std::uint64_t index = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s.spins[i] < 0) index |= std::uint64_t{1} << i;
  return index;
}

// Maximization problem max_{x in {0,1}^n} x^T Q x. Linear terms are folded
// into the diagonal (x_i^2 = x_i), so Q alone carries the whole objective.
struct Qubo {
  Matrix q;

  explicit Qubo(Matrix m) : q(std::move(m)) {
    if (q.rows() < 1 || q.rows() != q.cols())
      throw std::invalid_argument("Qubo: matrix must be square with n >= 1");
    for (Eigen::Index i = 0; i < q.rows(); ++i)
      for (Eigen::Index j = 0; j < q.cols(); ++j) {
        if (!std::isfinite(q(i, j)))
          throw std::invalid_argument("Qubo: entries must be finite");
        if (q(i, j) != q(j, i))
          throw std::invalid_argument("Qubo: matrix must be symmetric");
      }
  }

  int size() const { return static_cast<int>(q.rows()); }
};

// Weighted graph for the Ising form of Max-Cut: max y^T (-A/4) y, plus a
// constant offset when the instance came from a QUBO reduction.
struct MaxCutInstance {
  Matrix adjacency;
  double offset = 0.0;

  MaxCutInstance(Matrix a, double off) : adjacency(std::move(a)), offset(off) {
    if (adjacency.rows() < 1 || adjacency.rows() != adjacency.cols())
      throw std::invalid_argument("MaxCutInstance: adjacency must be square");
    if (!std::isfinite(offset))
      throw std::invalid_argument("MaxCutInstance: offset must be finite");
    for (Eigen::Index i = 0; i < adjacency.rows(); ++i)
      for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
        if (!std::isfinite(adjacency(i, j)))
          throw std::invalid_argument("MaxCutInstance: entries must be finite");
        if (adjacency(i, j) != adjacency(j, i))
          throw std::invalid_argument("MaxCutInstance: adjacency must be symmetric");
      }
  }

  int size() const { return static_cast<int>(adjacency.rows()); }
};

// Folds a linear term mu into the quadratic form: x^T q x + mu^T x
// equals x^T (q + diag(mu)) x on binary x.
inline Qubo fold_linear(const Matrix& q, const Vector& mu) {
  if (q.rows() != mu.size())
    throw std::invalid_argument("fold_linear: dimension mismatch");
  Matrix folded = q;
  folded.diagonal() += mu;
  return Qubo(std::move(folded));
}

inline double qubo_value(const Qubo& q, const BinaryAssignment& x) {
  if (x.size() != q.size())
    throw std::invalid_argument("qubo_value: dimension mismatch");
  double value = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (!x.bits[i]) continue;
    for (int j = 0; j < q.size(); ++j)
      if (x.bits[j]) value += q.q(i, j);
  }
  return value;
}

// Ising value y^T (-A/4) y; with include_offset set this is the full cut
// objective C(y) for reduced instances.
inline double cut_value(const MaxCutInstance& m, const SpinAssignment& y,
                        bool include_offset) {
  if (y.size() != m.size())
    throw std::invalid_argument("cut_value: dimension mismatch");
  double quad = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      quad += m.adjacency(i, j) * y.spins[i] * y.spins[j];
  double value = -0.25 * quad;
  if (include_offset) value += m.offset;
  return value;
}

// The auxiliary-variable reduction: an n-variable QUBO becomes an
// (n+1)-vertex Max-Cut instance whose Ising value plus sum(Q)/4 equals
// x^T Q x under x_i = (1 - y_i * y_n) / 2. No n-variable Ising image can
// exist in general (the binary-to-spin substitution leaves linear terms
// that a pure coupling matrix cannot absorb), so the extra spin y_n is
// what makes the mapping exact; its global-flip degeneracy is why y and -y
// decode to the same x. Diagonal Q entries become self-loops so the
// identity holds without a leftover constant; the row/column for the
// auxiliary vertex is symmetrized explicitly.
inline MaxCutInstance qubo_to_maxcut(const Qubo& q) {
  const int n = q.size();
  Matrix a = Matrix::Zero(n + 1, n + 1);
  a.topLeftCorner(n, n) = -q.q;
  for (int i = 0; i < n; ++i) {
    const double row_sum = q.q.row(i).sum();
    a(n, i) = row_sum;
    a(i, n) = row_sum;
  }
  a(n, n) = 0.0;
  return MaxCutInstance(std::move(a), q.q.sum() / 4.0);
}

// x_i = (1 - y_i * y_n) / 2; y and -y map to the same x.
inline BinaryAssignment spins_to_binary(const SpinAssignment& y) {
  if (y.size() < 1) throw std::invalid_argument("spins_to_binary: empty input");
  const int n = y.size() - 1;
  BinaryAssignment x;
  x.bits.resize(n);
  for (int i = 0; i < n; ++i) x.bits[i] = (1 - y.spins[i] * y.spins[n]) / 2;
  return x;
}

struct BruteForceResult {
  double e_min = 0.0;
  double e_max = 0.0;
  // basis indices of assignments within kOptimumTol of e_max
  std::vector<std::uint64_t> optima;
};

namespace detail {

// Exhaustive scan of a quadratic form q(s) = s^T C s over s in {-1,+1}^n or
// x in {0,1}^n, enumerated in Gray-code order with O(n) updates per flip.
// `visit(index, value)` is called once for every basis index.
template <typename Visit>
void scan_quadratic_binary(const Matrix& c, Visit&& visit) {
  const int n = static_cast<int>(c.rows());
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<int> x(n, 0);
  // partial[i] = sum_j c(i,j) * x_j
  std::vector<double> partial(n, 0.0);
  double value = 0.0;
  std::uint64_t gray = 0;
  visit(std::uint64_t{0}, 0.0);
  for (std::uint64_t t = 1; t < total; ++t) {
    const int bit = std::countr_zero(t);
    const std::uint64_t next_gray = t ^ (t >> 1);
    const int old = x[bit];
    const int now = 1 - old;
    const int delta = now - old;  // +1 or -1
    // only terms touching `bit` change; partial[] includes the diagonal,
    // and delta^2 = 1 collapses the self term to c(bit,bit)
    value += 2.0 * delta * partial[bit] + c(bit, bit);
    x[bit] = now;
    for (int i = 0; i < n; ++i) partial[i] += delta * c(i, bit);
    gray = next_gray;
    visit(gray, value);
  }
}

// x^T Q x for every basis index (bit i of the index gives x_i)
inline std::vector<double> enumerate_qubo_energies(const Matrix& q) {
  std::vector<double> energies(std::uint64_t{1} << q.rows());
  scan_quadratic_binary(
      q, [&](std::uint64_t idx, double v) { energies[idx] = v; });
  return energies;
}

// s^T C s over spins s with bit 0 of the index meaning +1; evaluated by
// substituting s = 1 - 2x and folding the linear part into the diagonal
inline std::vector<double> enumerate_ising_energies(const Matrix& c) {
  const double const_term = c.sum();
  Matrix shifted = 4.0 * c;
  shifted.diagonal() -= 4.0 * c.rowwise().sum();
  std::vector<double> energies(std::uint64_t{1} << c.rows());
  scan_quadratic_binary(shifted, [&](std::uint64_t idx, double v) {
    energies[idx] = const_term + v;
  });
  return energies;
}

}  // namespace detail

namespace detail {

inline BruteForceResult extrema_of(const std::vector<double>& energies) {
  BruteForceResult r;
  r.e_min = energies[0];
  r.e_max = energies[0];
  for (double e : energies) {
    r.e_min = std::min(r.e_min, e);
    r.e_max = std::max(r.e_max, e);
  }
  for (std::uint64_t i = 0; i < energies.size(); ++i)
    if (energies[i] >= r.e_max - kOptimumTol) r.optima.push_back(i);
  return r;
}

}  // namespace detail

// Exact extrema and the full optimum set by exhaustive enumeration. Optima
// are basis indices (bit i of the index gives x_i).
inline BruteForceResult brute_force(const Qubo& q, int cap = kBruteForceCap) {
  if (q.size() > cap)
    throw std::invalid_argument("brute_force: instance exceeds enumeration cap");
  return detail::extrema_of(detail::enumerate_qubo_energies(q.q));
}

// Same for the Ising form of a Max-Cut instance; the offset is excluded, so
// e_max + offset equals the reduced QUBO's e_max. Optimum indices encode
// spins with bit 0 meaning +1.
inline BruteForceResult brute_force(const MaxCutInstance& m,
                                    int cap = kBruteForceCap) {
  if (m.size() > cap)
    throw std::invalid_argument("brute_force: instance exceeds enumeration cap");
  return detail::extrema_of(
      detail::enumerate_ising_energies(-0.25 * m.adjacency));
}

}  // namespace qubocut

#endif  // QUBOCUT_QUBO_HPP
