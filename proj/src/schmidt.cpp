#include "entangle/schmidt.hpp"

#include <functional>

namespace entangle {

namespace {

void check_bipartition(const PureState& psi, const Partition& bipartition) {
  if (bipartition.block_count() != 2 || bipartition.parties() != psi.parties()) {
    throw std::invalid_argument("expected a bipartition of the state's subsystems");
  }
}

std::vector<double> sorted_desc(std::span<const double> p) {
  std::vector<double> v(p.begin(), p.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

void check_probability(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -kMajorizationSlack) throw std::invalid_argument("probability vector has a negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw std::invalid_argument("probability vector is not normalized");
}

std::vector<double> tensor_product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a)
    for (double y : b) out.push_back(x * y);
  return out;
}

std::vector<double> to_std(const VectorX<double>& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

SchmidtData schmidt(const PureState& psi, const Partition& bipartition) {
  check_bipartition(psi, bipartition);
  const MatrixX<cplx> g = coefficient_matrix(psi.amplitudes(), psi.dims(), bipartition.blocks()[0]);
  Eigen::JacobiSVD<MatrixX<cplx>> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtData out;
  out.lambda = svd.singularValues().cwiseAbs2();
  out.left_unitary = svd.matrixU();
  // G = U D V^dagger, so the right factor acting on |i> must be conj(V).
  out.right_unitary = svd.matrixV().transpose();
  return out;
}

VectorX<cplx> schmidt_reconstruct(const SchmidtData& s) {
  const Index dl = s.left_unitary.rows();
  const Index dr = s.right_unitary.rows();
  const MatrixX<cplx> right = s.right_unitary.adjoint();
  VectorX<cplx> out = VectorX<cplx>::Zero(dl * dr);
  for (Index k = 0; k < s.lambda.size(); ++k) {
    out += std::sqrt(s.lambda(k)) * Eigen::kroneckerProduct(s.left_unitary.col(k), right.col(k)).eval();
  }
  return out;
}

double entanglement_entropy(const PureState& psi, const Partition& bipartition, LogBase base) {
  const auto lambda = to_std(schmidt(psi, bipartition).lambda);
  return shannon_entropy(lambda, base);
}

double tangle_pure(const PureState& psi, const Partition& bipartition) {
  const VectorX<double> lambda = schmidt(psi, bipartition).lambda;
  return 2.0 * (1.0 - lambda.squaredNorm());
}

double tangle_two_qubit_det(const PureState& psi) {
  if (psi.dims() != Dims{2, 2}) throw std::invalid_argument("determinant tangle needs two qubits");
  const auto& a = psi.amplitudes();
  const cplx det = a(0) * a(3) - a(1) * a(2);
  return 4.0 * std::norm(det);
}

int schmidt_rank(const PureState& psi, const Partition& bipartition) {
  const VectorX<double> lambda = schmidt(psi, bipartition).lambda;
  return static_cast<int>((lambda.array() > kRankTol).count());
}

bool majorizes(std::span<const double> p, std::span<const double> q) {
  check_probability(p);
  check_probability(q);
  auto ps = sorted_desc(p);
  auto qs = sorted_desc(q);
  const std::size_t n = std::max(ps.size(), qs.size());
  ps.resize(n, 0.0);
  qs.resize(n, 0.0);
  double sp = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sp += ps[k];
    sq += qs[k];
    if (sp < sq - kMajorizationSlack) return false;
  }
  return true;
}

bool nielsen_convertible(std::span<const double> source_lambda, std::span<const double> target_lambda) {
  return majorizes(target_lambda, source_lambda);
}

bool nielsen_convertible(const PureState& psi, const PureState& phi, const Partition& bipartition) {
  if (psi.dims() != phi.dims()) throw std::invalid_argument("nielsen_convertible: dims mismatch");
  return nielsen_convertible(to_std(schmidt(psi, bipartition).lambda), to_std(schmidt(phi, bipartition).lambda));
}

bool catalysis_convertible(std::span<const double> source_lambda, std::span<const double> target_lambda,
                           std::span<const double> catalyst_lambda) {
  return nielsen_convertible(tensor_product(source_lambda, catalyst_lambda),
                             tensor_product(target_lambda, catalyst_lambda));
}

bool catalysis_convertible(const PureState& psi, const PureState& phi, const PureState& eta,
                           const Partition& bipartition) {
  if (psi.dims() != phi.dims()) throw std::invalid_argument("catalysis_convertible: dims mismatch");
  if (eta.parties() != 2) throw std::invalid_argument("catalyst must be a bipartite state");
  return catalysis_convertible(to_std(schmidt(psi, bipartition).lambda), to_std(schmidt(phi, bipartition).lambda),
                               to_std(schmidt(eta, Partition::bipartition({0}, 2)).lambda));
}

std::optional<std::vector<double>> find_catalyst(std::span<const double> source_lambda,
                                                 std::span<const double> target_lambda, int catalyst_dim,
                                                 int grid_resolution) {
  if (catalyst_dim < 1 || catalyst_dim > 4) throw std::invalid_argument("catalyst_dim must be in 1..4");
  if (grid_resolution < 1 || grid_resolution > 200) throw std::invalid_argument("grid_resolution must be in 1..200");
  check_probability(source_lambda);
  check_probability(target_lambda);

  std::optional<std::vector<double>> found;
  std::vector<int> counts(catalyst_dim, 0);
  // Non-increasing integer compositions of grid_resolution, largest first.
  std::function<bool(int, int, int)> sweep = [&](int pos, int remaining, int cap) -> bool {
    if (pos == catalyst_dim - 1) {
      if (remaining > cap) return false;
      counts[pos] = remaining;
      std::vector<double> eta(catalyst_dim);
      for (int i = 0; i < catalyst_dim; ++i) eta[i] = static_cast<double>(counts[i]) / grid_resolution;
      if (catalysis_convertible(source_lambda, target_lambda, eta)) {
        found = std::move(eta);
        return true;
      }
      return false;
    }
    const int slots = catalyst_dim - pos;
    for (int c = std::min(cap, remaining); c * slots >= remaining && c >= 0; --c) {
      counts[pos] = c;
      if (sweep(pos + 1, remaining - c, c)) return true;
    }
    return false;
  };
  sweep(0, grid_resolution, grid_resolution);
  return found;
}

std::optional<std::vector<double>> find_catalyst(const PureState& psi, const PureState& phi,
                                                 const Partition& bipartition, int catalyst_dim, int grid_resolution) {
  if (psi.dims() != phi.dims()) throw std::invalid_argument("find_catalyst: dims mismatch");
  return find_catalyst(to_std(schmidt(psi, bipartition).lambda), to_std(schmidt(phi, bipartition).lambda),
                       catalyst_dim, grid_resolution);
}

}  // namespace entangle
