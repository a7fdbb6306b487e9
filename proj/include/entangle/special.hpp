#pragma once

#include <string>

#include "entangle/states.hpp"

namespace entangle {

/// Trace-distance tolerance for maximal mixedness.
inline constexpr double kMixednessTol = 1e-8;

/// 1/2 || rho - I/D ||_1
double distance_to_maximally_mixed(const DensityMatrix& rho);

/// Every single-party reduction within tol of I/d_i.
bool is_lme(const PureState& psi, double tol = kMixednessTol);

/// Every reduction on k <= floor(N/2) parties within tol of maximal mixedness.
/// Throws size_limit_error above 4096 total dimension.
bool is_ame(const PureState& psi, double tol = kMixednessTol);

/// True iff g psi = e^{i alpha} psi within tol for g = (x)_i ops[i].
bool fixes_up_to_phase(const PureState& psi, std::span<const MatrixX<cplx>> ops, double tol = 1e-10);

/// Checks sigma_x^{(x)3} and e^{i phi1 Z} (x) e^{i phi2 Z} (x) e^{-i(phi1+phi2) Z}
/// on the three-qubit GHZ state. `flip_third_sign` uses e^{+i(phi1+phi2) Z} instead.
bool ghz_stabilizer_check(double phi1, double phi2, bool flip_third_sign = false);

enum class AmeFeasibility { Exists, NotExists, Unknown };
std::string to_string(AmeFeasibility f);

struct AmeVerdict {
  int n = 0;
  int d = 0;
  AmeFeasibility feasible = AmeFeasibility::Unknown;
  /// Identifier of the rule that decided the verdict.
  std::string reason;
};

/// Rule cascade, first match wins:
///   necessary-even / necessary-odd   N <= 2(d^2-1) or N <= 2(d(d+1)-1) violated -> NotExists
///   qubit-nonexistence               d = 2 and (N = 4 or N >= 7) -> NotExists
///   qubit-graph-state                d = 2 and N in {2, 3, 5, 6} -> Exists
///   bell-pair                        N = 2 -> Exists
///   ghz-three-party                  N = 3 -> Exists
///   prime-power-n-le-d               N <= d, d a prime power -> Exists
///   four-party-d6                    (N, d) = (4, 6) -> Exists
///   four-party-d-ge-7                N = 4, d >= 7 -> Exists
///   open                             otherwise -> Unknown
AmeVerdict ame_feasibility(int n, int d);

bool is_prime_power(int d);

}  // namespace entangle
