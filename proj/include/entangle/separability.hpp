#pragma once

#include <map>

#include "entangle/measures.hpp"
#include "entangle/partition.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// Marginal purity at or above 1 - this counts as a product factor.
inline constexpr double kProductPurityTol = 1e-9;
/// Partial-transpose eigenvalues at or above minus this count as PPT.
inline constexpr double kPptTol = 1e-10;

/// All set partitions of {0..n-1} in canonical order (restricted growth
/// strings, lexicographic). n <= 8.
std::vector<Partition> enumerate_partitions(int n);
/// All two-block partitions of {0..n-1}.
std::vector<Partition> enumerate_bipartitions(int n);

/// True iff every block of `beta` lies inside a block of `alpha`.
bool refines(const Partition& beta, const Partition& alpha);

bool is_product_across(const PureState& psi, const Partition& partition, double tol = kProductPurityTol);

struct ClassificationReport {
  Partition finest_product_partition;
  /// Largest block of the finest product partition.
  int producibility_m = 0;
  bool genuinely_multipartite = false;
  bool fully_separable = false;
  /// Product flag for every bipartition, keyed by partition.
  std::map<Partition, bool> bipartition_product;
};

ClassificationReport classify_pure(const PureState& psi, double tol = kProductPurityTol);

/// Transposes the subsystems in `subset` (a proper non-empty subset).
MatrixX<cplx> partial_transpose(const DensityMatrix& rho, std::span<const int> subset);

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

PptResult ppt_check(const DensityMatrix& rho, const Partition& bipartition);

/// PPT result per bipartition; N <= 6.
std::map<Partition, PptResult> ppt_all_bipartitions(const DensityMatrix& rho);

/// Necessary-condition verdict for one cut: NPT proves entanglement across
/// the cut; PPT leaves separability undecided.
enum class CutVerdict { EntangledNpt, Inconclusive };
CutVerdict cut_verdict(const PptResult& r);

/// Whether no product vector is orthogonal to every member of `basis`
/// (members must be product states). Minimizes sum_v |<v|a b c>|^2 over
/// product vectors by alternating local eigenvector steps with `restarts`
/// random starts; unextendible iff the minimum stays >= 1e-6.
struct UpbCheck {
  bool unextendible = false;
  double min_residual = 0.0;
  std::vector<VectorX<cplx>> best_factors;
};

UpbCheck upb_search(std::span<const PureState> basis, int restarts = 100, std::uint64_t seed = 0);
bool upb_unextendibility_check(std::span<const PureState> basis, int restarts = 100, std::uint64_t seed = 0);

}  // namespace entangle
