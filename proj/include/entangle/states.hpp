#pragma once

#include <array>
#include <optional>

#include "entangle/core.hpp"

namespace entangle {

/// Unit vector over a list of local dimensions, phase-canonicalized so the
/// first nonzero amplitude is real and positive.
class PureState {
 public:
  /// Requires <psi|psi> = 1 within 1e-10; the amplitudes are not rescaled.
  PureState(VectorX<cplx> amplitudes, Dims dims);

  /// Rescales to unit norm first. Throws invalid_argument for the zero vector.
  static PureState normalized(VectorX<cplx> amplitudes, Dims dims);

  const VectorX<cplx>& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  Index dim() const { return amplitudes_.size(); }
  cplx operator[](Index i) const { return amplitudes_(i); }
  ComplexTensor tensor() const { return ComplexTensor(amplitudes_, dims_); }

 private:
  VectorX<cplx> amplitudes_;
  Dims dims_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  DensityMatrix(MatrixX<cplx> matrix, Dims dims);
  explicit DensityMatrix(const PureState& psi);

  const MatrixX<cplx>& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  Index dim() const { return matrix_.rows(); }

 private:
  MatrixX<cplx> matrix_;
  Dims dims_;
};

enum class LogBase { Natural, Binary };

/// Product of local kets; each factor is normalized.
PureState product_state(std::span<const VectorX<cplx>> factors);
/// Computational basis ket |digits>.
PureState basis_state(const Dims& dims, std::span<const int> digits);
PureState kron(const PureState& a, const PureState& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// Reduced state of a pure state, computed from the coefficient matrix.
DensityMatrix reduce(const PureState& psi, std::span<const int> keep);
PureState permute_subsystems(const PureState& psi, std::span<const int> perm);
DensityMatrix maximally_mixed(const Dims& dims);
/// Eigenvalues of the reduction onto `party`, non-increasing.
VectorX<double> local_spectrum(const PureState& psi, int party);

PureState bell_state(int d);
/// sum_i sqrt(lambda_i) |i>^{(x) n}
PureState ghz_state(int n, int d, std::span<const double> lambda);
/// Uniform-weight GHZ state on n parties of dimension d.
PureState ghz_state(int n = 3, int d = 2);
PureState w_state();
/// |+>^{(x) m} followed by one controlled-Z per edge of the graph.
PureState graph_state(const Eigen::MatrixXi& adjacency);
DensityMatrix smolin_state();
/// The four product vectors {|000>, |+1->, |1-+>, |-+1>}.
std::vector<PureState> upb_vectors();
DensityMatrix upb_state();
PureState psi25_state();
PureState phi_a_state(cplx a);
PureState acin_state(const std::array<double, 5>& r, double theta);

double purity(const DensityMatrix& rho);
double shannon_entropy(std::span<const double> p, LogBase base = LogBase::Natural);
double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::Natural);
/// S(A|B) = S(rho_AB) - S(rho_B) on the marginal over a and b.
double conditional_entropy(const DensityMatrix& rho, std::span<const int> a, std::span<const int> b,
                           LogBase base = LogBase::Natural);

template <typename Rng>
PureState random_pure_state(const Dims& dims, Rng& rng) {
  return PureState::normalized(random_complex_gaussian(total_dim(dims), rng), dims);
}

/// Applies one operator per party: (L_0 (x) ... (x) L_{N-1}) psi, unnormalized.
VectorX<cplx> apply_local(const PureState& psi, std::span<const MatrixX<cplx>> ops);

template <typename Rng>
PureState random_local_unitary(const PureState& psi, Rng& rng) {
  std::vector<MatrixX<cplx>> us;
  for (int d : psi.dims()) us.push_back(random_unitary(d, rng));
  return PureState::normalized(apply_local(psi, us), psi.dims());
}

/// |<a|b>|^2
double fidelity(const PureState& a, const PureState& b);

}  // namespace entangle
