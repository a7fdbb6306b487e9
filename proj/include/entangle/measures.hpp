#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "entangle/states.hpp"

namespace entangle {

struct OptimizerOptions {
  int restarts = 32;
  /// Stop a local run once the objective improves by less than this per sweep.
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_iterations = 5000;
};

struct EnsembleMember {
  double probability;
  PureState state;
};

struct OptimizationResult {
  double value = 0.0;
  /// Maximizing product state (geometric measure).
  std::optional<PureState> product;
  /// Optimal decomposition found (convex roof).
  std::vector<EnsembleMember> ensemble;
  int restarts_used = 0;
  bool converged = false;
};

/// Best product-state overlap max |<a_1 ... a_N|psi>|^2 by alternating
/// maximization: each step replaces one factor by the normalized contraction
/// of psi with the conjugates of the others.
struct ProductOverlap {
  double overlap_sq = 0.0;
  std::vector<VectorX<cplx>> factors;
  int restarts_used = 0;
  bool converged = false;
};

ProductOverlap max_product_overlap(const PureState& psi, const OptimizerOptions& options = {});

/// Polishes a given starting product until sweeps stop improving by `tol`.
ProductOverlap refine_product_overlap(const PureState& psi, std::vector<VectorX<cplx>> factors, double tol,
                                      int max_iterations);

/// 1 - max over product states of |<phi|psi>|^2.
OptimizationResult geometric_measure(const PureState& psi, const OptimizerOptions& options = {});

/// One +-1 entry per party: +1 selects the symmetric projector on the doubled
/// local space, -1 the antisymmetric one.
struct SignPatternWeight {
  std::vector<int> signs;
  double weight;
};

/// C_A = 2 sqrt(<psi|<psi| A |psi>|psi>) with A = sum_s p_s P^{s_1} (x) ... (x) P^{s_N}.
double multipartite_concurrence(const PureState& psi, std::span<const SignPatternWeight> pattern);

/// Average single-qubit linear entropy (1/n) sum_k 2 (1 - Tr rho_k^2).
double meyer_wallach(const PureState& psi);

using PureFunctional = std::function<double(const PureState&)>;

/// Upper bound on inf sum_i p_i f(psi_i) over pure decompositions of rho,
/// searched over m x r isometries acting on the eigen-ensemble.
OptimizationResult convex_roof(const DensityMatrix& rho, const PureFunctional& f, int ensemble_size,
                               const OptimizerOptions& options = {});

/// Smallest r <= max_rank for which an alternating least-squares fit by r
/// product terms reaches residual < 1e-6 with bounded term norms; returns
/// max_rank + 1 when none does. An upper bound on the tensor rank.
int tensor_rank_upper_bound(const PureState& psi, int max_rank, const OptimizerOptions& options = {});

}  // namespace entangle
