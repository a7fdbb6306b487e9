#include "entangle/special.hpp"

#include <bit>

#include "entangle/separability.hpp"

namespace entangle {

namespace {

MatrixX<cplx> z_rotation(double phi) {
  MatrixX<cplx> m = MatrixX<cplx>::Zero(2, 2);
  m(0, 0) = std::polar(1.0, phi);
  m(1, 1) = std::polar(1.0, -phi);
  return m;
}

bool maximally_mixed_on(const PureState& psi, std::span<const int> keep, double tol) {
  return distance_to_maximally_mixed(reduce(psi, keep)) <= tol;
}

}  // namespace

double distance_to_maximally_mixed(const DensityMatrix& rho) {
  const Index d = rho.dim();
  const MatrixX<cplx> diff = rho.matrix() - MatrixX<cplx>::Identity(d, d) / static_cast<double>(d);
  return 0.5 * trace_norm_hermitian(diff);
}

bool is_lme(const PureState& psi, double tol) {
  for (int k = 0; k < psi.parties(); ++k) {
    const int keep[] = {k};
    if (!maximally_mixed_on(psi, keep, tol)) return false;
  }
  return true;
}

bool is_ame(const PureState& psi, double tol) {
  if (psi.dim() > kMaxTotalDim) throw size_limit_error("is_ame is limited to total dimension 4096");
  const int n = psi.parties();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size > n / 2) continue;
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1u) keep.push_back(k);
    if (!maximally_mixed_on(psi, keep, tol)) return false;
  }
  return true;
}

bool fixes_up_to_phase(const PureState& psi, std::span<const MatrixX<cplx>> ops, double tol) {
  const VectorX<cplx> g = apply_local(psi, ops);
  const cplx overlap = psi.amplitudes().dot(g);
  if (std::abs(overlap) < 0.5) return false;
  const cplx phase = overlap / std::abs(overlap);
  return (g - phase * psi.amplitudes()).norm() <= tol;
}

bool ghz_stabilizer_check(double phi1, double phi2, bool flip_third_sign) {
  const PureState ghz = ghz_state();
  MatrixX<cplx> x = MatrixX<cplx>::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const MatrixX<cplx> flips[] = {x, x, x};
  const double third = flip_third_sign ? phi1 + phi2 : -(phi1 + phi2);
  const MatrixX<cplx> phases[] = {z_rotation(phi1), z_rotation(phi2), z_rotation(third)};
  return fixes_up_to_phase(ghz, flips) && fixes_up_to_phase(ghz, phases);
}

std::string to_string(AmeFeasibility f) {
  switch (f) {
    case AmeFeasibility::Exists: return "Exists";
    case AmeFeasibility::NotExists: return "NotExists";
    case AmeFeasibility::Unknown: return "Unknown";
  }
  return "Unknown";
}

bool is_prime_power(int d) {
  if (d < 2) return false;
  int p = 2;
  while (d % p != 0) ++p;
  while (d % p == 0) d /= p;
  return d == 1;
}

AmeVerdict ame_feasibility(int n, int d) {
  if (n < 2 || d < 2) throw std::invalid_argument("ame_feasibility requires n >= 2 and d >= 2");
  AmeVerdict v{n, d, AmeFeasibility::Unknown, "open"};
  auto set = [&](AmeFeasibility f, const char* rule) {
    v.feasible = f;
    v.reason = rule;
    return v;
  };
  const long nn = n, dd = d;
  if (n % 2 == 0 && nn > 2 * (dd * dd - 1)) return set(AmeFeasibility::NotExists, "necessary-even");
  if (n % 2 == 1 && nn > 2 * (dd * (dd + 1) - 1)) return set(AmeFeasibility::NotExists, "necessary-odd");
  if (d == 2 && (n == 4 || n >= 7)) return set(AmeFeasibility::NotExists, "qubit-nonexistence");
  if (d == 2) return set(AmeFeasibility::Exists, "qubit-graph-state");
  if (n == 2) return set(AmeFeasibility::Exists, "bell-pair");
  if (n == 3) return set(AmeFeasibility::Exists, "ghz-three-party");
  if (n <= d && is_prime_power(d)) return set(AmeFeasibility::Exists, "prime-power-n-le-d");
  if (n == 4 && d == 6) return set(AmeFeasibility::Exists, "four-party-d6");
  if (n == 4 && d >= 7) return set(AmeFeasibility::Exists, "four-party-d-ge-7");
  return v;
}

}  // namespace entangle
