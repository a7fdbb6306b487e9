#pragma once

// Dense complex linear and multilinear algebra shared by every module.
//
// Composite bases use the row-major multi-index convention: for local
// dimensions (d_0, ..., d_{N-1}) the basis ket |i_0 ... i_{N-1}> sits at flat
// position ((i_0 * d_1 + i_1) * d_2 + ...) + i_{N-1}, i.e. subsystem 0 is the
// most significant digit. Every module inherits this convention.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace entangle {

using cplx = std::complex<double>;
using Dims = std::vector<int>;
using Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowMatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Largest total Hilbert-space dimension any operation accepts.
inline constexpr long kMaxTotalDim = 4096;
/// Absolute tolerance for Hermiticity and for clipping negative eigenvalues.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues below this are a genuine PSD violation, not round-off.
inline constexpr double kNotPsdTol = 1e-8;

class not_psd_error : public std::domain_error {
  using std::domain_error::domain_error;
};

class size_limit_error : public std::length_error {
  using std::length_error::length_error;
};

class convergence_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Product of the local dimensions. Throws for empty lists, non-positive
/// entries, or products above kMaxTotalDim.
inline long total_dim(std::span<const int> dims) {
  if (dims.empty()) throw std::invalid_argument("dimension list is empty");
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("local dimensions must be >= 1");
    total *= d;
    if (total > kMaxTotalDim) {
      throw size_limit_error("total Hilbert dimension exceeds " + std::to_string(kMaxTotalDim));
    }
  }
  return total;
}

/// Row-major strides: stride[k] = prod_{j>k} dims[j].
inline std::vector<long> strides(std::span<const int> dims) {
  std::vector<long> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

/// Local digit of subsystem `k` in the flat index `flat`.
inline int digit(long flat, std::span<const long> strides_, std::span<const int> dims, int k) {
  return static_cast<int>((flat / strides_[k]) % dims[k]);
}

/// Sorted, duplicate-free, in-range copy of `subset`. Throws otherwise.
inline std::vector<int> checked_subset(std::span<const int> subset, int n, bool allow_empty = false) {
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (!allow_empty && s.empty()) throw std::invalid_argument("subsystem set is empty");
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument("subsystem set has duplicates");
  }
  if (!s.empty() && (s.front() < 0 || s.back() >= n)) {
    throw std::invalid_argument("subsystem index out of range");
  }
  return s;
}

inline std::vector<int> complement(std::span<const int> subset, int n) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) out.push_back(k);
  }
  return out;
}

/// Amplitude array over a list of local dimensions.
template <typename Scalar>
struct Tensor {
  VectorX<Scalar> data;
  Dims dims;

  Tensor(VectorX<Scalar> data_, Dims dims_) : data(std::move(data_)), dims(std::move(dims_)) {
    if (total_dim(dims) != data.size()) {
      throw std::invalid_argument("tensor data length does not match the product of dims");
    }
  }

  Scalar operator()(std::span<const int> index) const {
    long flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + index[k];
    return data(flat);
  }
};

using ComplexTensor = Tensor<cplx>;

template <typename Scalar>
Tensor<Scalar> kron(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  Dims dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  VectorX<Scalar> out = Eigen::kroneckerProduct(a.data, b.data).eval();
  return Tensor<Scalar>(std::move(out), std::move(dims));
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  return MatrixX<Scalar>(Eigen::kroneckerProduct(a.derived(), b.derived()));
}

/// Kronecker product of a list of operators, left to right.
template <typename Scalar>
MatrixX<Scalar> kron_all(std::span<const MatrixX<Scalar>> factors) {
  MatrixX<Scalar> out = MatrixX<Scalar>::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline void check_permutation(std::span<const int> perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation length mismatch");
  std::vector<int> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < n; ++k) {
    if (sorted[k] != static_cast<int>(k)) throw std::invalid_argument("not a permutation");
  }
}

/// Flat-index map for reordering subsystems: output subsystem k is input
/// subsystem perm[k]. Returns src such that out[i] = in[src[i]].
inline std::vector<long> permutation_index_map(std::span<const int> dims, std::span<const int> perm) {
  check_permutation(perm, dims.size());
  const int n = static_cast<int>(dims.size());
  Dims out_dims(n);
  for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  const long total = total_dim(dims);
  const auto in_strides = strides(dims);
  const auto out_strides = strides(out_dims);
  std::vector<long> src(total);
  for (long i = 0; i < total; ++i) {
    long j = 0;
    for (int k = 0; k < n; ++k) j += digit(i, out_strides, out_dims, k) * in_strides[perm[k]];
    src[i] = j;
  }
  return src;
}

template <typename Scalar>
Tensor<Scalar> permute_subsystems(const Tensor<Scalar>& t, std::span<const int> perm) {
  const auto src = permutation_index_map(t.dims, perm);
  Dims out_dims(t.dims.size());
  for (std::size_t k = 0; k < t.dims.size(); ++k) out_dims[k] = t.dims[perm[k]];
  VectorX<Scalar> out(t.data.size());
  for (Index i = 0; i < out.size(); ++i) out(i) = t.data(src[i]);
  return Tensor<Scalar>(std::move(out), std::move(out_dims));
}

/// P A P^T for the subsystem permutation P; acts on both operator indices.
template <typename Derived>
MatrixX<typename Derived::Scalar> permute_operator(const Eigen::MatrixBase<Derived>& a, std::span<const int> dims,
                                                   std::span<const int> perm) {
  const auto src = permutation_index_map(dims, perm);
  const Index n = a.rows();
  MatrixX<typename Derived::Scalar> out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(i, j) = a(src[i], src[j]);
  return out;
}

/// Reduced operator on the subsystems in `keep` (kept in ascending order).
template <typename Derived>
MatrixX<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& rho, std::span<const int> dims,
                                                std::span<const int> keep) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(dims.size());
  const auto kept = checked_subset(keep, n);
  const long total = total_dim(dims);
  if (rho.rows() != total || rho.cols() != total) {
    throw std::invalid_argument("operator size does not match dims");
  }
  const auto traced = complement(kept, n);
  const auto st = strides(dims);

  long keep_dim = 1;
  for (int k : kept) keep_dim *= dims[k];
  const long rest_dim = total / keep_dim;

  // groups[r][kk] = flat index with rest-digits r and kept-digits kk
  std::vector<long> groups(total);
  for (long i = 0; i < total; ++i) {
    long kk = 0, r = 0;
    for (int k : kept) kk = kk * dims[k] + digit(i, st, dims, k);
    for (int k : traced) r = r * dims[k] + digit(i, st, dims, k);
    groups[r * keep_dim + kk] = i;
  }
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(keep_dim, keep_dim);
  for (long r = 0; r < rest_dim; ++r) {
    const long* g = groups.data() + r * keep_dim;
    for (long b = 0; b < keep_dim; ++b)
      for (long a = 0; a < keep_dim; ++a) out(a, b) += rho(g[a], g[b]);
  }
  return out;
}

/// Reduced density operator of a pure vector on `keep`, via the
/// (kept x traced) coefficient matrix G: rho_keep = G G^dagger.
template <typename Scalar>
MatrixX<Scalar> reduced_from_vector(const VectorX<Scalar>& psi, std::span<const int> dims, std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  const auto kept = checked_subset(keep, n);
  std::vector<int> perm = kept;
  for (int k : complement(kept, n)) perm.push_back(k);
  Tensor<Scalar> t(psi, Dims(dims.begin(), dims.end()));
  const auto moved = permute_subsystems(t, perm);
  long keep_dim = 1;
  for (int k : kept) keep_dim *= dims[k];
  const long rest = psi.size() / keep_dim;
  Eigen::Map<const RowMatrixX<Scalar>> g(moved.data.data(), keep_dim, rest);
  return g * g.adjoint();
}

/// Coefficient matrix G with rows indexed by `left` subsystems and columns by
/// the rest, both in ascending subsystem order.
template <typename Scalar>
MatrixX<Scalar> coefficient_matrix(const VectorX<Scalar>& psi, std::span<const int> dims, std::span<const int> left) {
  const int n = static_cast<int>(dims.size());
  const auto kept = checked_subset(left, n);
  std::vector<int> perm = kept;
  for (int k : complement(kept, n)) perm.push_back(k);
  Tensor<Scalar> t(psi, Dims(dims.begin(), dims.end()));
  const auto moved = permute_subsystems(t, perm);
  long rows = 1;
  for (int k : kept) rows *= dims[k];
  Eigen::Map<const RowMatrixX<Scalar>> g(moved.data.data(), rows, psi.size() / rows);
  return g;
}

template <typename Scalar>
struct HermitianEig {
  /// Non-increasing.
  VectorX<typename Eigen::NumTraits<Scalar>::Real> eigenvalues;
  /// Columns are the matching eigenvectors.
  MatrixX<Scalar> eigenvectors;
};

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kHermitianTol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
HermitianEig<typename Derived::Scalar> hermitian_eig(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!is_hermitian(a)) throw std::invalid_argument("matrix is not Hermitian");
  const MatrixX<Scalar> sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(sym);
  if (solver.info() != Eigen::Success) throw convergence_error("Hermitian eigensolver failed");
  HermitianEig<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

template <typename Derived>
VectorX<double> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!is_hermitian(a)) throw std::invalid_argument("matrix is not Hermitian");
  const MatrixX<Scalar> sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

template <typename Derived>
MatrixX<typename Derived::Scalar> psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  auto eig = hermitian_eig(a);
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues.minCoeff() < -kNotPsdTol) {
    throw not_psd_error("matrix has a negative eigenvalue");
  }
  const auto roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt().eval();
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

/// Sum of singular values of a Hermitian matrix, i.e. sum |eigenvalues|.
template <typename Derived>
double trace_norm_hermitian(const Eigen::MatrixBase<Derived>& a) {
  return hermitian_eigenvalues(a).cwiseAbs().sum();
}

template <typename Rng>
VectorX<cplx> random_complex_gaussian(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorX<cplx> v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the R-phase fix).
template <typename Rng>
MatrixX<cplx> random_unitary(Index d, Rng& rng) {
  MatrixX<cplx> g(d, d);
  for (Index j = 0; j < d; ++j) g.col(j) = random_complex_gaussian(d, rng);
  Eigen::HouseholderQR<MatrixX<cplx>> qr(g);
  MatrixX<cplx> q = qr.householderQ();
  const MatrixX<cplx> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace entangle
