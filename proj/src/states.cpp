#include "entangle/states.hpp"

#include <bit>
#include <numbers>

namespace entangle {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kPhaseThreshold = 1e-12;

void canonicalize_phase(VectorX<cplx>& v) {
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > kPhaseThreshold) {
      const cplx phase = v(i) / mag;
      if (phase != cplx(1.0, 0.0)) v *= std::conj(phase);
      v(i) = cplx(v(i).real(), 0.0);
      return;
    }
  }
}

VectorX<cplx> ket(int d, int i) {
  VectorX<cplx> v = VectorX<cplx>::Zero(d);
  v(i) = 1.0;
  return v;
}

VectorX<cplx> plus() { return (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0); }
VectorX<cplx> minus() { return (ket(2, 0) - ket(2, 1)) / std::sqrt(2.0); }

// Applies `op` to subsystem k of a flat row-major vector.
VectorX<cplx> apply_on_subsystem(const VectorX<cplx>& psi, const Dims& dims, int k, const MatrixX<cplx>& op) {
  const auto st = strides(dims);
  const long inner = st[k];
  const long d = dims[k];
  const long outer = psi.size() / (inner * d);
  VectorX<cplx> out(psi.size());
  VectorX<cplx> block(d);
  for (long o = 0; o < outer; ++o) {
    for (long i = 0; i < inner; ++i) {
      const long base = o * d * inner + i;
      for (long j = 0; j < d; ++j) block(j) = psi(base + j * inner);
      const VectorX<cplx> mapped = op * block;
      for (long j = 0; j < d; ++j) out(base + j * inner) = mapped(j);
    }
  }
  return out;
}

}  // namespace

PureState::PureState(VectorX<cplx> amplitudes, Dims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (total_dim(dims_) != amplitudes_.size()) {
    throw std::invalid_argument("amplitude count does not match the product of dims");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTol) {
    throw std::invalid_argument("pure state is not normalized");
  }
  canonicalize_phase(amplitudes_);
}

PureState PureState::normalized(VectorX<cplx> amplitudes, Dims dims) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("cannot normalize the zero vector");
  amplitudes /= norm;
  return PureState(std::move(amplitudes), std::move(dims));
}

DensityMatrix::DensityMatrix(MatrixX<cplx> matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  const long n = total_dim(dims_);
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("density matrix size does not match the product of dims");
  }
  if (!is_hermitian(matrix_)) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - cplx(1.0)) > kNormTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (hermitian_eigenvalues(matrix_).minCoeff() < -kHermitianTol) {
    throw not_psd_error("density matrix has a negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims()) {}

PureState product_state(std::span<const VectorX<cplx>> factors) {
  if (factors.empty()) throw std::invalid_argument("product state needs at least one factor");
  VectorX<cplx> v = VectorX<cplx>::Ones(1);
  Dims dims;
  for (const auto& f : factors) {
    const double norm = f.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("product factor is zero");
    v = Eigen::kroneckerProduct(v, (f / norm).eval()).eval();
    dims.push_back(static_cast<int>(f.size()));
  }
  return PureState::normalized(std::move(v), std::move(dims));
}

PureState basis_state(const Dims& dims, std::span<const int> digits) {
  if (digits.size() != dims.size()) throw std::invalid_argument("digit count does not match dims");
  std::vector<VectorX<cplx>> factors;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= dims[k]) throw std::invalid_argument("basis digit out of range");
    factors.push_back(ket(dims[k], digits[k]));
  }
  return product_state(factors);
}

PureState kron(const PureState& a, const PureState& b) {
  const auto t = kron(a.tensor(), b.tensor());
  return PureState::normalized(t.data, t.dims);
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const auto kept = checked_subset(keep, rho.parties());
  Dims dims;
  for (int k : kept) dims.push_back(rho.dims()[k]);
  return DensityMatrix(partial_trace(rho.matrix(), rho.dims(), kept), std::move(dims));
}

DensityMatrix reduce(const PureState& psi, std::span<const int> keep) {
  const auto kept = checked_subset(keep, psi.parties());
  Dims dims;
  for (int k : kept) dims.push_back(psi.dims()[k]);
  return DensityMatrix(reduced_from_vector(psi.amplitudes(), psi.dims(), kept), std::move(dims));
}

PureState permute_subsystems(const PureState& psi, std::span<const int> perm) {
  const auto t = permute_subsystems(psi.tensor(), perm);
  return PureState(t.data, t.dims);
}

DensityMatrix maximally_mixed(const Dims& dims) {
  const long n = total_dim(dims);
  return DensityMatrix(MatrixX<cplx>::Identity(n, n) / static_cast<double>(n), dims);
}

VectorX<double> local_spectrum(const PureState& psi, int party) {
  const int keep[] = {party};
  return hermitian_eigenvalues(reduced_from_vector(psi.amplitudes(), psi.dims(), keep));
}

PureState bell_state(int d) {
  if (d < 2) throw std::invalid_argument("bell_state requires d >= 2");
  VectorX<cplx> v = VectorX<cplx>::Zero(static_cast<Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(std::move(v), {d, d});
}

PureState ghz_state(int n, int d, std::span<const double> lambda) {
  if (n < 2) throw std::invalid_argument("ghz_state requires n >= 2");
  if (d < 2) throw std::invalid_argument("ghz_state requires d >= 2");
  if (static_cast<int>(lambda.size()) != d) throw std::invalid_argument("lambda must have d entries");
  double sum = 0.0;
  for (double l : lambda) {
    if (l < 0.0) throw std::invalid_argument("lambda entries must be non-negative");
    sum += l;
  }
  if (std::abs(sum - 1.0) > kNormTol) throw std::invalid_argument("lambda is not normalized");
  const Dims dims(n, d);
  VectorX<cplx> v = VectorX<cplx>::Zero(total_dim(dims));
  long diag_step = 0;
  for (const long s : strides(dims)) diag_step += s;
  for (int i = 0; i < d; ++i) v(i * diag_step) = std::sqrt(lambda[i]);
  return PureState(std::move(v), dims);
}

PureState ghz_state(int n, int d) {
  const std::vector<double> flat(d, 1.0 / d);
  return ghz_state(n, d, flat);
}

PureState w_state() {
  VectorX<cplx> v = VectorX<cplx>::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return PureState(std::move(v), {2, 2, 2});
}

PureState graph_state(const Eigen::MatrixXi& adjacency) {
  const Index m = adjacency.rows();
  if (m != adjacency.cols() || m < 1) throw std::invalid_argument("adjacency must be square and non-empty");
  if (m > 12) throw size_limit_error("graph states are limited to 12 vertices");
  for (Index i = 0; i < m; ++i) {
    if (adjacency(i, i) != 0) throw std::invalid_argument("adjacency has a self-loop");
    for (Index j = 0; j < m; ++j) {
      if (adjacency(i, j) != adjacency(j, i)) throw std::invalid_argument("adjacency is not symmetric");
      if (adjacency(i, j) != 0 && adjacency(i, j) != 1) throw std::invalid_argument("adjacency entries must be 0/1");
    }
  }
  const long n = 1L << m;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  VectorX<cplx> v(n);
  for (long x = 0; x < n; ++x) {
    // vertex i is bit (m-1-i) under the row-major convention
    int parity = 0;
    for (Index i = 0; i < m; ++i)
      for (Index j = i + 1; j < m; ++j)
        if (adjacency(i, j) && ((x >> (m - 1 - i)) & 1) && ((x >> (m - 1 - j)) & 1)) parity ^= 1;
    v(x) = parity ? -amp : amp;
  }
  return PureState(std::move(v), Dims(m, 2));
}

DensityMatrix smolin_state() {
  const double s = 1.0 / std::sqrt(2.0);
  std::array<VectorX<cplx>, 4> bell;
  for (auto& b : bell) b = VectorX<cplx>::Zero(4);
  bell[0](0) = s, bell[0](3) = s;
  bell[1](0) = s, bell[1](3) = -s;
  bell[2](1) = s, bell[2](2) = s;
  bell[3](1) = s, bell[3](2) = -s;
  MatrixX<cplx> rho = MatrixX<cplx>::Zero(16, 16);
  for (const auto& b : bell) {
    const MatrixX<cplx> proj = b * b.adjoint();
    rho += kron(proj, proj) / 4.0;
  }
  return DensityMatrix(std::move(rho), {2, 2, 2, 2});
}

std::vector<PureState> upb_vectors() {
  const VectorX<cplx> zero = ket(2, 0), one = ket(2, 1);
  const std::vector<std::array<VectorX<cplx>, 3>> members = {
      {zero, zero, zero}, {plus(), one, minus()}, {one, minus(), plus()}, {minus(), plus(), one}};
  std::vector<PureState> out;
  for (const auto& m : members) out.push_back(product_state(m));
  return out;
}

DensityMatrix upb_state() {
  MatrixX<cplx> rho = MatrixX<cplx>::Identity(8, 8);
  for (const auto& v : upb_vectors()) rho -= v.amplitudes() * v.amplitudes().adjoint();
  rho /= 4.0;
  return DensityMatrix(std::move(rho), {2, 2, 2});
}

PureState psi25_state() {
  VectorX<cplx> v = VectorX<cplx>::Zero(32);
  v(0) = std::sqrt(7.0);
  v(31) = std::sqrt(5.0);
  for (int x = 0; x < 32; ++x) {
    if (std::popcount(static_cast<unsigned>(x)) == 3) v(x) = 1.0;
  }
  return PureState::normalized(std::move(v), Dims(5, 2));
}

PureState phi_a_state(cplx a) {
  VectorX<cplx> v = VectorX<cplx>::Zero(16);
  v(0b0000) = a;
  v(0b1111) = a;
  v(0b0011) = 1.0;
  v(0b0101) = 1.0;
  v(0b0110) = 1.0;
  return PureState::normalized(std::move(v), Dims(4, 2));
}

PureState acin_state(const std::array<double, 5>& r, double theta) {
  double sum = 0.0;
  for (double x : r) {
    if (x < 0.0) throw std::invalid_argument("acin_state coefficients must be non-negative");
    sum += x * x;
  }
  if (std::abs(sum - 1.0) > kNormTol) throw std::invalid_argument("acin_state coefficients are not normalized");
  VectorX<cplx> v = VectorX<cplx>::Zero(8);
  v(0b000) = std::polar(r[0], theta);
  v(0b100) = r[1];
  v(0b010) = r[2];
  v(0b001) = r[3];
  v(0b111) = r[4];
  return PureState(std::move(v), {2, 2, 2});
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

double shannon_entropy(std::span<const double> p, LogBase base) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return base == LogBase::Binary ? h / std::numbers::ln2 : h;
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  const VectorX<double> ev = hermitian_eigenvalues(rho.matrix()).cwiseMax(0.0);
  return shannon_entropy(std::span<const double>(ev.data(), ev.size()), base);
}

double conditional_entropy(const DensityMatrix& rho, std::span<const int> a, std::span<const int> b, LogBase base) {
  const auto sa = checked_subset(a, rho.parties());
  const auto sb = checked_subset(b, rho.parties());
  for (int k : sa) {
    if (std::find(sb.begin(), sb.end(), k) != sb.end()) {
      throw std::invalid_argument("conditional_entropy: subsystem sets overlap");
    }
  }
  std::vector<int> joint = sa;
  joint.insert(joint.end(), sb.begin(), sb.end());
  return von_neumann_entropy(partial_trace(rho, joint), base) - von_neumann_entropy(partial_trace(rho, sb), base);
}

VectorX<cplx> apply_local(const PureState& psi, std::span<const MatrixX<cplx>> ops) {
  if (static_cast<int>(ops.size()) != psi.parties()) throw std::invalid_argument("need one operator per party");
  VectorX<cplx> v = psi.amplitudes();
  for (int k = 0; k < psi.parties(); ++k) {
    if (ops[k].rows() != psi.dims()[k] || ops[k].cols() != psi.dims()[k]) {
      throw std::invalid_argument("local operator size does not match the party dimension");
    }
    v = apply_on_subsystem(v, psi.dims(), k, ops[k]);
  }
  return v;
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("fidelity: dims mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace entangle
