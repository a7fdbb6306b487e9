#pragma once

#include <optional>
#include <string>

#include "entangle/states.hpp"

namespace entangle {

/// Completeness tolerance for instruments.
inline constexpr double kTraceTol = 1e-9;

/// One outcome of an instrument. Either a Kraus family, or a
/// measure-and-prepare map rho -> Tr(effect rho) prepared.
struct InstrumentBranch {
  std::string label;
  std::vector<MatrixX<cplx>> kraus;
  std::optional<MatrixX<cplx>> effect;
  std::optional<DensityMatrix> prepared;
  Dims output_dims;
};

struct BranchOutcome {
  std::string label;
  double probability = 0.0;
  /// Empty for zero-probability branches.
  std::optional<DensityMatrix> post_state;
};

class Instrument {
 public:
  /// Sorts branches by label and checks that the effects sum to the identity
  /// within kTraceTol; throws invalid_argument otherwise.
  Instrument(Dims input_dims, std::vector<InstrumentBranch> branches);

  const Dims& input_dims() const { return input_dims_; }
  const std::vector<InstrumentBranch>& branches() const { return branches_; }

  /// sum_k K^dagger K of one branch.
  MatrixX<cplx> effect(std::size_t branch) const;
  /// Unnormalized image of rho under one branch.
  MatrixX<cplx> apply_branch(std::size_t branch, const MatrixX<cplx>& rho) const;
  std::vector<BranchOutcome> apply(const DensityMatrix& rho) const;
  /// Choi matrix sum_ij |i><j| (x) E(|i><j|) of the branch-summed channel.
  /// Requires every branch to have the same output dims.
  MatrixX<cplx> choi() const;

 private:
  Dims input_dims_;
  std::vector<InstrumentBranch> branches_;
};

/// U_mn = sum_k e^{2 pi i k n / d} |k><(k+m) mod d|.
MatrixX<cplx> weyl_operator(int m, int n, int d);
/// |Psi_mn> = (U_mn (x) I)|psi+,d>, index m*d + n.
std::vector<PureState> generalized_bell_basis(int d);

/// Bell measurement on A'A of (input on A') (x) psi+_AB followed by Bob's
/// correction U_mn. Maps A' -> B.
Instrument teleportation_instrument(int d);
std::vector<BranchOutcome> teleport(const DensityMatrix& input, int d);
/// Trace-norm distance between the Choi matrix of the branch-summed
/// teleportation channel and that of the identity channel.
double teleport_choi_distance(int d);

/// Teleports the last subsystem of rho_XA' (dimension d) to B and averages
/// the corrected branches. Output dims equal input dims.
DensityMatrix entanglement_swap(const DensityMatrix& rho_xa, int d);

/// Two-branch filtering instrument: "filtered" with Kraus (x)_i L_i, and
/// "remainder" mapping rho to Tr((I - (x) L^dagger L) rho) I/D.
/// With auto_rescale each L is divided by its largest singular value.
/// Throws invalid_argument when some L^dagger L exceeds I by more than kTraceTol.
Instrument filtering_instrument(const Dims& dims, std::span<const MatrixX<cplx>> filters, bool auto_rescale = false);
std::vector<BranchOutcome> local_filter(const DensityMatrix& rho, std::span<const MatrixX<cplx>> filters,
                                        bool auto_rescale = false);
std::vector<BranchOutcome> local_filter(const PureState& psi, std::span<const MatrixX<cplx>> filters,
                                        bool auto_rescale = false);

/// Bell measurement on parties `pair` of the four-qubit Smolin state; the
/// remaining two parties are the output, in increasing order.
std::vector<BranchOutcome> unlock_smolin(std::array<int, 2> pair);

struct MergingRate {
  /// S(a|b) of the marginal on a and b.
  double rate = 0.0;
  /// rate < 0: merging yields entanglement at rate -S(a|b).
  bool entanglement_gain = false;
};

MergingRate merging_rate(const PureState& psi, std::span<const int> a, std::span<const int> b,
                         LogBase base = LogBase::Natural);

struct CombingProfile {
  /// S(rho_{B_k}) per block.
  std::vector<double> block_entropies;
  /// S(rho_A).
  double source_entropy = 0.0;
};

/// `a` is one party; `b_blocks` must partition the remaining parties.
CombingProfile combing_entropy_profile(const PureState& psi, int a, const std::vector<std::vector<int>>& b_blocks,
                                       LogBase base = LogBase::Natural);

}  // namespace entangle
