#include <gtest/gtest.h>

#include <numbers>

#include "entangle/invariants3q.hpp"
#include "entangle/protocols.hpp"
#include "entangle/schmidt.hpp"
#include "entangle/states.hpp"
#include "oracles.hpp"

using namespace entangle;

namespace {

// clock-and-shift built from the matrix definition
MatrixX<cplx> weyl_oracle(int m, int n, int d) {
  MatrixX<cplx> u = MatrixX<cplx>::Zero(d, d);
  for (int k = 0; k < d; ++k) u(k, (k + m) % d) = std::polar(1.0, 2 * std::numbers::pi * k * n / d);
  return u;
}

// Bob's unnormalized state after outcome (m, n), by projecting the full
// A'AB state and tracing out A'A
MatrixX<cplx> bob_uncorrected(const MatrixX<cplx>& input, int m, int n, int d) {
  VectorX<cplx> plus = VectorX<cplx>::Zero(d * d);
  for (int k = 0; k < d; ++k) plus(k * d + k) = 1 / std::sqrt(double(d));
  const VectorX<cplx> psi_mn = kron(weyl_oracle(m, n, d), MatrixX<cplx>::Identity(d, d)) * plus;
  const MatrixX<cplx> full = kron(input, MatrixX<cplx>(plus * plus.adjoint()));
  const MatrixX<cplx> proj = kron(MatrixX<cplx>(psi_mn * psi_mn.adjoint()), MatrixX<cplx>::Identity(d, d));
  return oracle::partial_trace(proj * full * proj, {d, d, d}, {2});
}

double total_probability(const std::vector<BranchOutcome>& out) {
  double s = 0.0;
  for (const auto& b : out) s += b.probability;
  return s;
}

}  // namespace

TEST(Weyl, MatchesDefinition) {
  for (int d = 2; d <= 4; ++d)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) EXPECT_LT((weyl_operator(m, n, d) - weyl_oracle(m, n, d)).norm(), 1e-14);
}

TEST(BellBasis, Orthonormal) {
  for (int d = 2; d <= 5; ++d) {
    const auto basis = generalized_bell_basis(d);
    ASSERT_EQ(static_cast<int>(basis.size()), d * d);
    for (int i = 0; i < d * d; ++i) {
      for (int j = 0; j < d * d; ++j) {
        const double overlap = std::abs(basis[i].amplitudes().dot(basis[j].amplitudes()));
        EXPECT_NEAR(overlap, i == j ? 1.0 : 0.0, 1e-13);
      }
    }
  }
}

TEST(BellBasis, FlatSchmidtVectors) {
  for (int d = 2; d <= 4; ++d) {
    for (const auto& psi : generalized_bell_basis(d)) {
      const auto lam = schmidt(psi, Partition::bipartition({0}, 2)).lambda;
      for (Index k = 0; k < lam.size(); ++k) EXPECT_NEAR(lam(k), 1.0 / d, 1e-13);
    }
  }
}

TEST(BellBasis, QubitCaseIsTheBellStates) {
  const double h = 1 / std::sqrt(2.0);
  std::vector<VectorX<cplx>> expected(4, VectorX<cplx>::Zero(4));
  expected[0] << h, 0, 0, h;
  expected[1] << h, 0, 0, -h;
  expected[2] << 0, h, h, 0;
  expected[3] << 0, h, -h, 0;
  for (const auto& psi : generalized_bell_basis(2)) {
    int matches = 0;
    for (const auto& e : expected) matches += std::abs(std::abs(e.dot(psi.amplitudes())) - 1.0) < 1e-13;
    EXPECT_EQ(matches, 1);
  }
}

TEST(Teleport, PureQubitOnEveryBranch) {
  VectorX<cplx> phi(2);
  phi << 0.6, cplx(0.0, 0.8);
  const DensityMatrix input(PureState(phi, {2}));
  const auto out = teleport(input, 2);
  ASSERT_EQ(out.size(), 4u);
  for (const auto& b : out) {
    EXPECT_NEAR(b.probability, 0.25, 1e-10);
    ASSERT_TRUE(b.post_state);
    EXPECT_LT((b.post_state->matrix() - input.matrix()).norm(), 1e-9);
  }
}

TEST(Teleport, MatchesChannelCompositionOracle) {
  std::mt19937_64 rng(1);
  for (int d = 2; d <= 4; ++d) {
    const MatrixX<cplx> rho = oracle::random_density(d, rng);
    const auto out = teleport(DensityMatrix(rho, {d}), d);
    ASSERT_EQ(static_cast<int>(out.size()), d * d);
    EXPECT_NEAR(total_probability(out), 1.0, 1e-9);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        const MatrixX<cplx> bob = bob_uncorrected(rho, m, n, d);
        const double p = bob.trace().real();
        EXPECT_NEAR(p, 1.0 / (d * d), 1e-12);
        const MatrixX<cplx> u = weyl_oracle(m, n, d);
        const MatrixX<cplx> corrected = u * bob * u.adjoint() / p;
        EXPECT_LT((corrected - rho).norm(), 1e-9);
        const std::string label = "m=" + std::to_string(m) + ",n=" + std::to_string(n);
        const auto it = std::find_if(out.begin(), out.end(), [&](const auto& b) { return b.label == label; });
        ASSERT_NE(it, out.end());
        EXPECT_NEAR(it->probability, p, 1e-10);
        EXPECT_LT((it->post_state->matrix() - rho).norm(), 1e-9);
      }
    }
  }
}

TEST(Teleport, MaximallyMixedStaysMixed) {
  for (const auto& b : teleport(maximally_mixed({3}), 3)) {
    EXPECT_LT((b.post_state->matrix() - MatrixX<cplx>::Identity(3, 3) / 3.0).norm(), 1e-10);
  }
}

TEST(Teleport, ChoiDistance) {
  for (int d = 2; d <= 4; ++d) {
    EXPECT_LE(teleport_choi_distance(d), 1e-8);
    const MatrixX<cplx> choi = teleportation_instrument(d).choi();
    MatrixX<cplx> ideal = MatrixX<cplx>::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ideal(i * d + i, j * d + j) = 1.0;
    EXPECT_LE(oracle::trace_norm(choi - ideal), 1e-8);
  }
  EXPECT_THROW(teleport(maximally_mixed({2}), 3), std::invalid_argument);
}

TEST(Instrument, TracePreservation) {
  for (int d = 2; d <= 4; ++d) {
    const auto inst = teleportation_instrument(d);
    MatrixX<cplx> sum = MatrixX<cplx>::Zero(d, d);
    for (std::size_t b = 0; b < inst.branches().size(); ++b) sum += inst.effect(b);
    EXPECT_LT((sum - MatrixX<cplx>::Identity(d, d)).norm(), 1e-9);
    for (std::size_t b = 1; b < inst.branches().size(); ++b)
      EXPECT_LT(inst.branches()[b - 1].label, inst.branches()[b].label);
  }
  InstrumentBranch half;
  half.label = "half";
  half.kraus = {MatrixX<cplx>::Identity(2, 2) / std::sqrt(2.0)};
  half.output_dims = {2};
  EXPECT_THROW(Instrument({2}, {half}), std::invalid_argument);
}

TEST(Swap, BellInputYieldsBell) {
  const auto out = entanglement_swap(DensityMatrix(bell_state(2)), 2);
  EXPECT_LT((out.matrix() - DensityMatrix(bell_state(2)).matrix()).norm(), 1e-9);
}

TEST(Swap, EqualsRelabeling) {
  std::mt19937_64 rng(2);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho(oracle::random_density(2 * d, rng), {2, d});
      const auto out = entanglement_swap(rho, d);
      EXPECT_LT((out.matrix() - rho.matrix()).norm(), 1e-9);
      EXPECT_LT((hermitian_eigenvalues(out.matrix()) - hermitian_eigenvalues(rho.matrix())).norm(), 1e-9);
    }
  }
  const MatrixX<cplx> prod = kron(oracle::random_density(2, rng), oracle::random_density(2, rng));
  EXPECT_LT((entanglement_swap(DensityMatrix(prod, {2, 2}), 2).matrix() - prod).norm(), 1e-9);
  EXPECT_THROW(entanglement_swap(DensityMatrix(prod, {2, 2}), 3), std::invalid_argument);
}

TEST(Filter, IdentityFilters) {
  const std::vector<MatrixX<cplx>> ids(3, MatrixX<cplx>::Identity(2, 2));
  const auto out = local_filter(ghz_state(), ids);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].label, "filtered");
  EXPECT_NEAR(out[0].probability, 1.0, 1e-12);
  EXPECT_LT((out[0].post_state->matrix() - DensityMatrix(ghz_state()).matrix()).norm(), 1e-12);
  EXPECT_NEAR(out[1].probability, 0.0, 1e-12);
}

TEST(Filter, SingularFilterGivesProduct) {
  MatrixX<cplx> p0 = MatrixX<cplx>::Zero(2, 2);
  p0(0, 0) = 1.0;
  const std::vector<MatrixX<cplx>> f = {p0, MatrixX<cplx>::Identity(2, 2), MatrixX<cplx>::Identity(2, 2)};
  const auto out = local_filter(ghz_state(), f);
  EXPECT_NEAR(out[0].probability, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(out[0].post_state->matrix()(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(out[0].probability + out[1].probability, 1.0, 1e-12);
  EXPECT_NEAR(purity(*out[1].post_state), 1.0 / 8, 1e-12);
}

TEST(Filter, GhzClassSurvivesInvertibleFilters) {
  for (double eps : {1.0, 0.5, 0.2, 0.1}) {
    MatrixX<cplx> l = MatrixX<cplx>::Identity(2, 2);
    l(1, 1) = eps;
    const std::vector<MatrixX<cplx>> f(3, l);
    const auto out = local_filter(ghz_state(), f);
    const auto& rho = out[0].post_state->matrix();
    const auto eig = hermitian_eig(rho);
    const PureState psi = PureState::normalized(eig.eigenvectors.col(0), {2, 2, 2});
    EXPECT_GT(lu_invariants(psi).tau3, 1e-8);
    EXPECT_EQ(slocc_class_3qubit(psi), SloccClass::GHZ);
  }
}

TEST(Filter, OrbitPreservationOnRandomStates) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const auto psi = trial % 4 == 0 ? random_local_unitary(w_state(), rng) : random_pure_state({2, 2, 2}, rng);
    std::vector<MatrixX<cplx>> f;
    for (int k = 0; k < 3; ++k) {
      MatrixX<cplx> l(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) l(i, j) = cplx(g(rng), g(rng));
      f.push_back(l);
    }
    const auto out = local_filter(psi, f, true);
    EXPECT_NEAR(out[0].probability + out[1].probability, 1.0, 1e-9);
    const PureState filtered =
        PureState::normalized(hermitian_eig(out[0].post_state->matrix()).eigenvectors.col(0), {2, 2, 2});
    EXPECT_EQ(slocc_class_3qubit(filtered), slocc_class_3qubit(psi));
  }
}

TEST(Filter, RejectsNonContractions) {
  const std::vector<MatrixX<cplx>> f(3, 2.0 * MatrixX<cplx>::Identity(2, 2));
  EXPECT_THROW(local_filter(ghz_state(), f), std::invalid_argument);
  const auto out = local_filter(ghz_state(), f, true);
  EXPECT_NEAR(out[0].probability, 1.0, 1e-12);
}

TEST(Unlock, EveryPairEveryBranch) {
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const auto out = unlock_smolin({a, b});
      ASSERT_EQ(out.size(), 4u);
      EXPECT_NEAR(total_probability(out), 1.0, 1e-9);
      for (const auto& br : out) {
        EXPECT_NEAR(br.probability, 0.25, 1e-10);
        ASSERT_TRUE(br.post_state);
        EXPECT_NEAR(purity(*br.post_state), 1.0, 1e-9);
        const double c = wootters_concurrence(*br.post_state);
        EXPECT_NEAR(c * c, 1.0, 1e-9);
      }
    }
  }
  EXPECT_THROW(unlock_smolin({1, 1}), std::invalid_argument);
  EXPECT_THROW(unlock_smolin({0, 4}), std::invalid_argument);
}

TEST(Unlock, OutcomeMatchesBellLabel) {
  const auto basis = generalized_bell_basis(2);
  const auto out = unlock_smolin({2, 3});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int idx = std::stoi(out[i].label.substr(5));
    const auto& v = basis[idx].amplitudes();
    EXPECT_NEAR((v.adjoint() * out[i].post_state->matrix() * v).value().real(), 1.0, 1e-9);
  }
}

TEST(Merging, Examples) {
  const int a[] = {0}, b[] = {1};
  const auto ghz = merging_rate(ghz_state(), a, b);
  EXPECT_NEAR(ghz.rate, 0.0, 1e-12);
  EXPECT_FALSE(ghz.entanglement_gain);

  VectorX<cplx> v = VectorX<cplx>::Zero(8);
  v(0b000) = v(0b110) = 1 / std::sqrt(2.0);
  const auto bell_ab = merging_rate(PureState(v, {2, 2, 2}), a, b);
  EXPECT_NEAR(bell_ab.rate, -std::log(2.0), 1e-12);
  EXPECT_TRUE(bell_ab.entanglement_gain);

  const auto prod = merging_rate(basis_state({2, 2, 2}, std::vector<int>{1, 0, 1}), a, b);
  EXPECT_NEAR(prod.rate, 0.0, 1e-12);
  EXPECT_THROW(merging_rate(ghz_state(), a, a), std::invalid_argument);
}

TEST(Combing, Examples) {
  VectorX<cplx> v = VectorX<cplx>::Zero(8);
  v(0b000) = v(0b110) = 1 / std::sqrt(2.0);
  const auto combed = combing_entropy_profile(PureState(v, {2, 2, 2}), 0, {{1}, {2}});
  EXPECT_NEAR(combed.source_entropy, std::log(2.0), 1e-12);
  ASSERT_EQ(combed.block_entropies.size(), 2u);
  EXPECT_NEAR(combed.block_entropies[0], std::log(2.0), 1e-12);
  EXPECT_NEAR(combed.block_entropies[1], 0.0, 1e-12);

  EXPECT_NEAR(combing_entropy_profile(ghz_state(), 0, {{1, 2}}).source_entropy, std::log(2.0), 1e-12);
  const auto prod = combing_entropy_profile(basis_state({2, 2, 2}, std::vector<int>{0, 0, 0}), 0, {{1}, {2}});
  EXPECT_NEAR(prod.source_entropy, 0.0, 1e-12);
  for (double s : prod.block_entropies) EXPECT_NEAR(s, 0.0, 1e-12);
  EXPECT_THROW(combing_entropy_profile(ghz_state(), 0, {{1}}), std::invalid_argument);
  EXPECT_THROW(combing_entropy_profile(ghz_state(), 0, {{0, 1}, {2}}), std::invalid_argument);
}
