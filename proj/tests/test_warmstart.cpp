#include "qubocut/warmstart.hpp"

#include <gtest/gtest.h>

#include "qubocut/rng.hpp"
#include "qubocut/statevector.hpp"

using namespace qubocut;

namespace {

RelaxedEmbedding random_embedding(int k, int n, Rng& rng) {
  RelaxedEmbedding e;
  e.k = k;
  e.theta.resize(n);
  e.phi.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (k == 2) {
      e.theta[i] = rng.uniform(0.0, 2.0 * M_PI);
    } else {
      e.theta[i] = rng.uniform(0.0, M_PI);
      e.phi[i] = rng.uniform(0.0, 2.0 * M_PI);
    }
  }
  return e;
}

Matrix gram(const RelaxedEmbedding& e) {
  const Matrix cols = e.columns();
  return cols.transpose() * cols;
}

}  // namespace

TEST(EncodeEmbedding, NorthPole) {
  RelaxedEmbedding e{2, {0.0}, {}};
  ProductState s = encode_embedding(e);
  EXPECT_NEAR(s.qubits[0].x, 0.0, 1e-12);
  EXPECT_NEAR(s.qubits[0].y, 0.0, 1e-12);
  EXPECT_NEAR(s.qubits[0].z, 1.0, 1e-12);
  StateVector sv = statevector_from_product(s);
  EXPECT_NEAR(std::norm(sv.amp[0]), 1.0, 1e-12);
}

TEST(EncodeEmbedding, EquatorK3GivesPlusState) {
  RelaxedEmbedding e{3, {M_PI / 2.0}, {0.0}};
  ProductState s = encode_embedding(e);
  EXPECT_NEAR(s.qubits[0].x, 1.0, 1e-12);
  EXPECT_NEAR(s.qubits[0].y, 0.0, 1e-12);
  EXPECT_NEAR(s.qubits[0].z, 0.0, 1e-12);
}

TEST(EncodeEmbedding, SouthPoleK2) {
  RelaxedEmbedding e{2, {M_PI}, {}};
  ProductState s = encode_embedding(e);
  EXPECT_NEAR(s.qubits[0].z, -1.0, 1e-12);
  StateVector sv = statevector_from_product(s);
  EXPECT_NEAR(fidelity(sv, basis_state(1, 1)), 1.0, 1e-12);
}

TEST(EncodeEmbedding, K2BlochVectorConvention) {
  // k=2 fixes the phase e^{-i pi/2}: Bloch vector (0, -sin t, cos t)
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = rng.uniform(0.0, 2.0 * M_PI);
    ProductState s = encode_embedding({2, {t}, {}});
    EXPECT_NEAR(s.qubits[0].x, 0.0, 1e-12);
    EXPECT_NEAR(s.qubits[0].y, -std::sin(t), 1e-12);
    EXPECT_NEAR(s.qubits[0].z, std::cos(t), 1e-12);
    EXPECT_NEAR(s.qubits[0].norm(), 1.0, 1e-12);
  }
}

TEST(EncodeBox, ArcsinAngles) {
  BoxPoint p{{0.5, 0.0, 1.0}};
  ProductState s = encode_box(p, 0.1);
  const double t0 = 2.0 * std::asin(0.5);  // pi/3
  EXPECT_NEAR(t0, M_PI / 3.0, 1e-12);
  EXPECT_NEAR(s.qubits[0].x, std::sin(t0), 1e-12);
  EXPECT_NEAR(s.qubits[0].z, std::cos(t0), 1e-12);
  const double t1 = 2.0 * std::asin(0.1);  // clamped from below
  EXPECT_NEAR(s.qubits[1].x, std::sin(t1), 1e-12);
  EXPECT_NEAR(s.qubits[1].z, std::cos(t1), 1e-12);
  const double t2 = 2.0 * std::asin(0.9);  // clamped from above
  EXPECT_NEAR(s.qubits[2].x, std::sin(t2), 1e-12);
  EXPECT_NEAR(s.qubits[2].z, std::cos(t2), 1e-12);
}

TEST(EncodeBox, EpsOutOfRangeThrows) {
  BoxPoint p{{0.5}};
  EXPECT_THROW(encode_box(p, 0.0), std::invalid_argument);
  EXPECT_THROW(encode_box(p, 0.5), std::invalid_argument);
}

TEST(EncodeBox, NeverAtPoleForPositiveEps) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    BoxPoint p{{rng.uniform(), 0.0, 1.0, rng.uniform()}};
    ProductState s = encode_box(p, 0.1);
    EXPECT_FALSE(s.has_pole_qubit(1e-6));
  }
}

TEST(VertexAtTop, NoneLeavesEmbeddingUnchanged) {
  Rng rng(7);
  RelaxedEmbedding e = random_embedding(3, 5, rng);
  RelaxedEmbedding r = vertex_at_top(e, RotationChoice::none(), 123);
  EXPECT_EQ(r.theta, e.theta);
  EXPECT_EQ(r.phi, e.phi);
}

TEST(VertexAtTop, EqualAnglesCollapseToZero) {
  RelaxedEmbedding e{2, {M_PI / 3.0, M_PI / 3.0}, {}};
  RelaxedEmbedding r = vertex_at_top(e, RotationChoice::qubit(0), 0);
  EXPECT_DOUBLE_EQ(r.theta[0], 0.0);
  EXPECT_DOUBLE_EQ(r.theta[1], 0.0);
  ProductState s = encode_embedding(r);
  EXPECT_NEAR(s.qubits[0].z, 1.0, 1e-12);
  EXPECT_NEAR(s.qubits[1].z, 1.0, 1e-12);
}

TEST(VertexAtTop, TargetReachesPoleAndGramPreserved) {
  Rng rng(8);
  for (int k : {2, 3}) {
    RelaxedEmbedding e = random_embedding(k, 6, rng);
    const Matrix before = gram(e);
    for (int j : {0, 3, 5}) {
      RelaxedEmbedding r = vertex_at_top(e, RotationChoice::qubit(j), 17);
      ProductState s = encode_embedding(r);
      EXPECT_NEAR(s.qubits[j].x, 0.0, 1e-9);
      EXPECT_NEAR(s.qubits[j].y, 0.0, 1e-9);
      EXPECT_NEAR(s.qubits[j].z, 1.0, 1e-9);
      EXPECT_TRUE(s.has_pole_qubit());
      EXPECT_TRUE(gram(r).isApprox(before, 1e-9));
    }
  }
}

TEST(VertexAtTop, FirstAndLastResolve) {
  Rng rng(9);
  RelaxedEmbedding e = random_embedding(2, 4, rng);
  RelaxedEmbedding first = vertex_at_top(e, RotationChoice::first(), 5);
  RelaxedEmbedding last = vertex_at_top(e, RotationChoice::last(), 5);
  EXPECT_DOUBLE_EQ(first.theta[0], 0.0);
  EXPECT_DOUBLE_EQ(last.theta[3], 0.0);
  EXPECT_THROW(vertex_at_top(e, RotationChoice::qubit(4), 5),
               std::invalid_argument);
}

TEST(VertexAtTop, K3DeterministicGivenSeed) {
  Rng rng(10);
  RelaxedEmbedding e = random_embedding(3, 5, rng);
  RelaxedEmbedding a = vertex_at_top(e, RotationChoice::qubit(2), 77);
  RelaxedEmbedding b = vertex_at_top(e, RotationChoice::qubit(2), 77);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.phi, b.phi);
}

TEST(UniformState, AllPlusStates) {
  ProductState one = uniform_state(1);
  ASSERT_EQ(one.size(), 1);
  EXPECT_DOUBLE_EQ(one.qubits[0].x, 1.0);
  ProductState three = uniform_state(3);
  ASSERT_EQ(three.size(), 3);
  for (const BlochVector& b : three.qubits) {
    EXPECT_DOUBLE_EQ(b.x, 1.0);
    EXPECT_DOUBLE_EQ(b.y, 0.0);
    EXPECT_DOUBLE_EQ(b.z, 0.0);
  }
  StateVector sv = statevector_from_product(three);
  for (const Complex& a : sv.amp)
    EXPECT_NEAR(std::abs(a), std::pow(2.0, -1.5), 1e-12);
}

TEST(RotationChoice, ParseAndName) {
  EXPECT_EQ(RotationChoice::parse("first").name(), "first");
  EXPECT_EQ(RotationChoice::parse("last").name(), "last");
  EXPECT_EQ(RotationChoice::parse("none").name(), "none");
  EXPECT_EQ(RotationChoice::parse("q7").name(), "q7");
  EXPECT_EQ(RotationChoice::parse("7").index, 7);
  EXPECT_THROW(RotationChoice::parse("bogus"), std::invalid_argument);
}
