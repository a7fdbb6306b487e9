#pragma once

#include <optional>

#include "entangle/partition.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// Schmidt form psi = (U (x) V^dagger) sum_i sqrt(lambda_i) |i>|i>.
struct SchmidtData {
  /// Non-increasing, length min(d_left, d_right).
  VectorX<double> lambda;
  MatrixX<cplx> left_unitary;
  MatrixX<cplx> right_unitary;
};

/// Squared Schmidt coefficients above this count toward the Schmidt rank.
inline constexpr double kRankTol = 1e-10;
/// Slack on majorization partial sums so equal vectors compare as equal.
inline constexpr double kMajorizationSlack = 1e-12;

SchmidtData schmidt(const PureState& psi, const Partition& bipartition);
/// Rebuilds the state vector from its Schmidt form (left block first).
VectorX<cplx> schmidt_reconstruct(const SchmidtData& s);

double entanglement_entropy(const PureState& psi, const Partition& bipartition, LogBase base = LogBase::Natural);
/// 2 (1 - sum lambda_i^2); concurrence is its square root.
double tangle_pure(const PureState& psi, const Partition& bipartition);
/// 4 |det G|^2 for a two-qubit coefficient matrix.
double tangle_two_qubit_det(const PureState& psi);
int schmidt_rank(const PureState& psi, const Partition& bipartition);

/// True iff p majorizes q: sorted partial sums of p dominate those of q.
/// Vectors of unequal length are zero-padded.
bool majorizes(std::span<const double> p, std::span<const double> q);

/// Deterministic LOCC conversion psi -> phi (target Schmidt vector majorizes the source).
bool nielsen_convertible(std::span<const double> source_lambda, std::span<const double> target_lambda);
bool nielsen_convertible(const PureState& psi, const PureState& phi, const Partition& bipartition);

/// psi (x) eta -> phi (x) eta with a shared catalyst eta.
bool catalysis_convertible(std::span<const double> source_lambda, std::span<const double> target_lambda,
                           std::span<const double> catalyst_lambda);
bool catalysis_convertible(const PureState& psi, const PureState& phi, const PureState& eta,
                           const Partition& bipartition);

/// Sweeps the ordered simplex lambda_1 >= ... >= lambda_d on the grid with
/// spacing 1/grid_resolution, starting from (1, 0, ..., 0) in descending
/// lexicographic order; returns the first catalyst that works.
std::optional<std::vector<double>> find_catalyst(std::span<const double> source_lambda,
                                                 std::span<const double> target_lambda, int catalyst_dim,
                                                 int grid_resolution);
std::optional<std::vector<double>> find_catalyst(const PureState& psi, const PureState& phi,
                                                 const Partition& bipartition, int catalyst_dim, int grid_resolution);

}  // namespace entangle
