#include <gtest/gtest.h>

#include "entangle/schmidt.hpp"
#include "entangle/separability.hpp"
#include "entangle/states.hpp"
#include "oracles.hpp"

using namespace entangle;

namespace {

std::vector<double> random_simplex(int d, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double s = 0.0;
  for (double& x : p) s += (x = e(rng));
  for (double& x : p) x /= s;
  std::sort(p.rbegin(), p.rend());
  return p;
}

PureState from_lambda(const std::vector<double>& lam) {
  const int d = static_cast<int>(lam.size());
  VectorX<cplx> v = VectorX<cplx>::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = std::sqrt(lam[i]);
  return PureState::normalized(v, {d, d});
}

}  // namespace

TEST(Schmidt, BellAndProduct) {
  const auto ab = Partition::bipartition({0}, 2);
  const auto s = schmidt(bell_state(2), ab);
  EXPECT_NEAR(s.lambda(0), 0.5, 1e-14);
  EXPECT_NEAR(s.lambda(1), 0.5, 1e-14);
  EXPECT_EQ(schmidt_rank(bell_state(2), ab), 2);
  std::mt19937_64 rng(1);
  const auto prod = kron(random_pure_state({2}, rng), random_pure_state({3}, rng));
  EXPECT_EQ(schmidt_rank(prod, ab), 1);
  EXPECT_NEAR(schmidt(prod, ab).lambda(0), 1.0, 1e-12);
}

TEST(Schmidt, GhzAndWCuts) {
  const auto a_bc = Partition::bipartition({0}, 3);
  const auto g = schmidt(ghz_state(), a_bc);
  EXPECT_NEAR(g.lambda(0), 0.5, 1e-14);
  const auto w = schmidt(w_state(), a_bc);
  EXPECT_NEAR(w.lambda(0), 2.0 / 3, 1e-14);
  EXPECT_NEAR(w.lambda(1), 1.0 / 3, 1e-14);
  EXPECT_EQ(w.lambda.size(), 2);
}

TEST(Schmidt, ReconstructionAndUnitarity) {
  std::mt19937_64 rng(2);
  for (const Dims& dims : {Dims{2, 3}, Dims{3, 2}, Dims{2, 2, 2}, Dims{2, 3, 2}}) {
    const int n = static_cast<int>(dims.size());
    for (const auto& bip : enumerate_bipartitions(n)) {
      const auto psi = random_pure_state(dims, rng);
      const auto s = schmidt(psi, bip);
      EXPECT_NEAR(s.lambda.sum(), 1.0, 1e-12);
      for (Index i = 1; i < s.lambda.size(); ++i) EXPECT_LE(s.lambda(i), s.lambda(i - 1) + 1e-15);
      EXPECT_LT((s.left_unitary.adjoint() * s.left_unitary -
                 MatrixX<cplx>::Identity(s.left_unitary.cols(), s.left_unitary.cols()))
                    .norm(),
                1e-12);
      EXPECT_LT((s.right_unitary * s.right_unitary.adjoint() -
                 MatrixX<cplx>::Identity(s.right_unitary.rows(), s.right_unitary.rows()))
                    .norm(),
                1e-12);
      // reconstruct lives in (left block, right block) order
      std::vector<int> perm = bip.blocks()[0];
      perm.insert(perm.end(), bip.blocks()[1].begin(), bip.blocks()[1].end());
      const auto moved = permute_subsystems(psi, perm);
      EXPECT_LT((schmidt_reconstruct(s) - moved.amplitudes()).norm(), 1e-12);
    }
  }
}

TEST(Schmidt, LambdaMatchesReducedSpectrum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto psi = random_pure_state({2, 2, 3}, rng);
    const auto s = schmidt(psi, Partition::bipartition({2}, 3));
    const auto rho = oracle::partial_trace(DensityMatrix(psi).matrix(), {2, 2, 3}, {2});
    const auto ev = hermitian_eigenvalues(rho);
    for (Index i = 0; i < s.lambda.size(); ++i) EXPECT_NEAR(s.lambda(i), ev(i), 1e-12);
  }
}

TEST(Schmidt, EntropyAndTangle) {
  const auto ab = Partition::bipartition({0}, 2);
  EXPECT_NEAR(entanglement_entropy(bell_state(2), ab, LogBase::Binary), 1.0, 1e-13);
  EXPECT_NEAR(tangle_pure(bell_state(2), ab), 1.0, 1e-13);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_pure_state({2, 2}, rng);
    EXPECT_NEAR(tangle_pure(psi, ab), tangle_two_qubit_det(psi), 1e-12);
    const double t = tangle_pure(psi, ab);
    EXPECT_GE(t, -1e-14);
    EXPECT_LE(t, 1.0 + 1e-12);
  }
  EXPECT_THROW(tangle_two_qubit_det(ghz_state()), std::invalid_argument);
}

TEST(Schmidt, LocalUnitaryInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_pure_state({2, 3, 2}, rng);
    const auto phi = random_local_unitary(psi, rng);
    for (const auto& bip : enumerate_bipartitions(3)) {
      EXPECT_LT((schmidt(psi, bip).lambda - schmidt(phi, bip).lambda).norm(), 1e-11);
    }
  }
}

TEST(Majorization, Examples) {
  const std::vector<double> flat = {0.5, 0.5}, peaked = {1.0, 0.0}, mid = {0.7, 0.3};
  EXPECT_TRUE(majorizes(peaked, mid));
  EXPECT_TRUE(majorizes(mid, flat));
  EXPECT_FALSE(majorizes(flat, mid));
  EXPECT_TRUE(majorizes(mid, mid));
  const std::vector<double> three = {0.4, 0.3, 0.3};
  EXPECT_TRUE(majorizes(mid, three));
  EXPECT_FALSE(majorizes(three, mid));
}

TEST(Majorization, AgreesWithOracle) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_simplex(2 + trial % 4, rng), q = random_simplex(2 + (trial / 4) % 4, rng);
    EXPECT_EQ(majorizes(p, q), oracle::majorizes(p, q));
  }
}

TEST(Majorization, PartialOrderProperties) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_simplex(4, rng), q = random_simplex(4, rng), r = random_simplex(4, rng);
    EXPECT_TRUE(majorizes(p, p));
    if (majorizes(p, q) && majorizes(q, r)) {
      EXPECT_TRUE(majorizes(p, r));
    }
    if (majorizes(p, q) && majorizes(q, p)) {
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], q[k], 1e-10);
    }
  }
}

TEST(Nielsen, Direction) {
  const std::vector<double> bell = {0.5, 0.5}, prod = {1.0, 0.0};
  EXPECT_TRUE(nielsen_convertible(bell, prod));
  EXPECT_FALSE(nielsen_convertible(prod, bell));
  const auto ab = Partition::bipartition({0}, 2);
  const VectorX<cplx> e0 = VectorX<cplx>::Unit(4, 0);
  EXPECT_TRUE(nielsen_convertible(bell_state(2), PureState(e0, {2, 2}), ab));
  EXPECT_FALSE(nielsen_convertible(PureState(e0, {2, 2}), bell_state(2), ab));
}

TEST(Nielsen, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto src = random_simplex(4, rng), tgt = random_simplex(4, rng);
    EXPECT_EQ(nielsen_convertible(src, tgt), oracle::majorizes(tgt, src));
    const auto psi = random_local_unitary(from_lambda(src), rng);
    const auto phi = random_local_unitary(from_lambda(tgt), rng);
    EXPECT_EQ(nielsen_convertible(psi, phi, Partition::bipartition({0}, 2)), oracle::majorizes(tgt, src));
  }
}

TEST(Catalysis, ClassicPair) {
  const std::vector<double> src = {0.4, 0.4, 0.1, 0.1}, tgt = {0.5, 0.25, 0.25, 0.0};
  EXPECT_FALSE(nielsen_convertible(src, tgt));
  const std::vector<double> eta = {0.6, 0.4};
  EXPECT_TRUE(catalysis_convertible(src, tgt, eta));
  EXPECT_TRUE(oracle::majorizes(oracle::outer(tgt, eta), oracle::outer(src, eta)));
  const auto found = find_catalyst(src, tgt, 2, 100);
  ASSERT_TRUE(found.has_value());
  EXPECT_NEAR((*found)[0] + (*found)[1], 1.0, 1e-12);
  EXPECT_GE((*found)[0], 0.6 - 1e-12);
  EXPECT_LE((*found)[0], 0.62 + 1e-12);
  EXPECT_TRUE(oracle::majorizes(oracle::outer(tgt, *found), oracle::outer(src, *found)));
}

TEST(Catalysis, FoundCatalystsVerifyAgainstOracle) {
  std::mt19937_64 rng(9);
  int found_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto src = random_simplex(4, rng), tgt = random_simplex(4, rng);
    const auto eta = find_catalyst(src, tgt, 2, 40);
    if (eta) {
      ++found_count;
      EXPECT_TRUE(oracle::majorizes(oracle::outer(tgt, *eta), oracle::outer(src, *eta)));
    }
    // a catalyst never blocks a conversion that works without it
    if (oracle::majorizes(tgt, src)) {
      const std::vector<double> any = {0.7, 0.3};
      EXPECT_TRUE(catalysis_convertible(src, tgt, any));
    }
  }
  EXPECT_GT(found_count, 0);
}

TEST(Catalysis, StateOverloads) {
  const auto ab = Partition::bipartition({0}, 2);
  const auto psi = from_lambda({0.4, 0.4, 0.1, 0.1});
  const auto phi = from_lambda({0.5, 0.25, 0.25, 0.0});
  const auto eta = from_lambda({0.6, 0.4});
  EXPECT_TRUE(catalysis_convertible(psi, phi, eta, ab));
  EXPECT_TRUE(find_catalyst(psi, phi, ab, 2, 100).has_value());
}
