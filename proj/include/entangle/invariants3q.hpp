#pragma once

#include <array>
#include <string>

#include "entangle/states.hpp"

namespace entangle {

enum class SloccClass { Product, Bisep_A_BC, Bisep_B_AC, Bisep_C_AB, W, GHZ };

std::string to_string(SloccClass c);

/// Local-unitary invariants, tangles, local ranks and polytope point of a
/// three-qubit pure state.
struct InvariantRecord {
  /// I1 norm, I2..I4 single-party purities, I5 Kempe invariant, I6 = 4|Det3|^2.
  std::array<double, 6> i{};
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  std::array<int, 3> ranks{};
  /// Smaller eigenvalue of each single-party reduction.
  std::array<double, 3> polytope{};
  SloccClass class_label = SloccClass::Product;
};

/// tau3 at or below this is W class for full-rank states.
inline constexpr double kClassTol = 1e-8;

InvariantRecord lu_invariants(const PureState& psi);

/// Cayley hyperdeterminant of a 2x2x2 tensor.
cplx hyperdet3(const ComplexTensor& t);

/// I5 evaluated with the pairings (A,B), (A,C), (B,C).
std::array<double, 3> kempe_symmetric_check(const PureState& psi);

/// Wootters concurrence max(0, mu_1 - mu_2 - mu_3 - mu_4) of a two-qubit state.
double wootters_concurrence(const DensityMatrix& rho);

struct Tangles {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
};

Tangles tangles(const PureState& psi);

/// tau_{X|YZ} = 4 det rho_X for party X.
double one_party_tangle(const PureState& psi, int party);
/// Squared concurrence of the two-party reduction on (x, y).
double pair_tangle(const PureState& psi, int x, int y);

/// tau_{A|BC} - tau_{A|B} - tau_{A|C}.
double monogamy_gap(const PureState& psi);

struct AcinForm {
  /// r_0 ... r_4 for |000>, |100>, |010>, |001>, |111>.
  std::array<double, 5> r{};
  /// Relative phase on the |000> component.
  double theta = 0.0;
  /// U_A, U_B, U_C with (U_A (x) U_B (x) U_C) psi = canonical state up to global phase.
  std::array<MatrixX<cplx>, 3> local_unitaries;
  /// The canonical state itself.
  VectorX<cplx> canonical;
};

/// Brings a three-qubit state to r0 e^{i theta}|000> + r1|100> + r2|010> +
/// r3|001> + r4|111> with r_j >= 0. Throws convergence_error when the
/// three remaining components cannot be pushed below 1e-8.
AcinForm acin_canonical_form(const PureState& psi);

std::array<double, 3> polytope_coords(const PureState& psi);

SloccClass slocc_class_3qubit(const PureState& psi);

}  // namespace entangle
