#include "entangle/measures.hpp"

#include "minimize.hpp"

namespace entangle {

namespace {

// Local digits of every flat index, row-major.
struct DigitTable {
  Dims dims;
  std::vector<int> digits;  // total x parties

  explicit DigitTable(const Dims& d) : dims(d) {
    const long total = total_dim(dims);
    const int n = static_cast<int>(dims.size());
    const auto st = strides(dims);
    digits.resize(total * n);
    for (long i = 0; i < total; ++i)
      for (int k = 0; k < n; ++k) digits[i * n + k] = entangle::digit(i, st, dims, k);
  }
  int at(long flat, int k) const { return digits[flat * dims.size() + k]; }
};

// Contraction of psi with conj(factor_j) over every j != skip.
VectorX<cplx> contract_except(const VectorX<cplx>& psi, const DigitTable& table,
                              const std::vector<VectorX<cplx>>& factors, int skip) {
  VectorX<cplx> out = VectorX<cplx>::Zero(table.dims[skip]);
  const int n = static_cast<int>(factors.size());
  for (Index i = 0; i < psi.size(); ++i) {
    cplx c = psi(i);
    for (int j = 0; j < n && c != cplx(0.0); ++j) {
      if (j != skip) c *= std::conj(factors[j](table.at(i, j)));
    }
    out(table.at(i, skip)) += c;
  }
  return out;
}

ProductOverlap alternate(const PureState& psi, const DigitTable& table, std::vector<VectorX<cplx>> factors,
                         double tol, int max_iterations) {
  const int n = psi.parties();
  for (auto& f : factors) f.normalize();
  double overlap = 0.0;
  ProductOverlap out;
  for (int it = 0; it < max_iterations; ++it) {
    double sweep_overlap = 0.0;
    for (int k = 0; k < n; ++k) {
      VectorX<cplx> v = contract_except(psi.amplitudes(), table, factors, k);
      const double norm = v.norm();
      if (norm > 0.0) {
        factors[k] = v / norm;
      } else {
        // orthogonal start: any nonzero move helps, pick the largest component direction
        factors[k] = VectorX<cplx>::Zero(v.size());
        factors[k](it % v.size()) = 1.0;
      }
      sweep_overlap = norm;
    }
    const double improvement = sweep_overlap - overlap;
    overlap = sweep_overlap;
    if (it > 0 && improvement <= tol) {
      out.converged = true;
      break;
    }
  }
  out.overlap_sq = overlap * overlap;
  out.factors = std::move(factors);
  return out;
}

std::vector<VectorX<cplx>> dominant_local_vectors(const PureState& psi) {
  std::vector<VectorX<cplx>> factors;
  for (int k = 0; k < psi.parties(); ++k) {
    const int keep[] = {k};
    const auto eig = hermitian_eig(reduced_from_vector(psi.amplitudes(), psi.dims(), keep));
    factors.push_back(eig.eigenvectors.col(0));
  }
  return factors;
}

PureState product_from(const std::vector<VectorX<cplx>>& factors) { return product_state(factors); }

}  // namespace

ProductOverlap refine_product_overlap(const PureState& psi, std::vector<VectorX<cplx>> factors, double tol,
                                      int max_iterations) {
  if (static_cast<int>(factors.size()) != psi.parties()) throw std::invalid_argument("need one factor per party");
  const DigitTable table(psi.dims());
  auto out = alternate(psi, table, std::move(factors), tol, max_iterations);
  out.restarts_used = 1;
  return out;
}

ProductOverlap max_product_overlap(const PureState& psi, const OptimizerOptions& options) {
  if (psi.dim() > 1024) throw size_limit_error("product-overlap search is limited to total dimension 1024");
  if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const DigitTable table(psi.dims());
  std::mt19937_64 rng(options.seed);
  ProductOverlap best;
  best.overlap_sq = -1.0;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<VectorX<cplx>> start;
    if (r == 0) {
      start = dominant_local_vectors(psi);
    } else {
      for (int d : psi.dims()) start.push_back(random_complex_gaussian(d, rng));
    }
    auto run = alternate(psi, table, std::move(start), options.tol, options.max_iterations);
    if (run.overlap_sq > best.overlap_sq) best = std::move(run);
  }
  best.restarts_used = options.restarts;
  return best;
}

OptimizationResult geometric_measure(const PureState& psi, const OptimizerOptions& options) {
  const auto best = max_product_overlap(psi, options);
  OptimizationResult out;
  out.value = std::clamp(1.0 - best.overlap_sq, 0.0, 1.0);
  out.product = product_from(best.factors);
  out.restarts_used = best.restarts_used;
  out.converged = best.converged;
  return out;
}

double multipartite_concurrence(const PureState& psi, std::span<const SignPatternWeight> pattern) {
  const int n = psi.parties();
  if (n > 16) throw size_limit_error("too many parties for subset expansion");
  for (const auto& p : pattern) {
    if (p.weight < 0.0) throw std::invalid_argument("pattern weights must be non-negative");
    if (static_cast<int>(p.signs.size()) != n) throw std::invalid_argument("sign pattern length must equal parties");
    for (int s : p.signs)
      if (s != 1 && s != -1) throw std::invalid_argument("sign pattern entries must be +1 or -1");
  }
  // <psi psi| (x)_k (1 + s_k SWAP_k)/2 |psi psi> = 2^-N sum_S prod_{k in S} s_k Tr rho_S^2
  const unsigned subsets = 1u << n;
  std::vector<double> purities(subsets, 1.0);
  for (unsigned mask = 1; mask + 1 < subsets; ++mask) {
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) keep.push_back(k);
    purities[mask] = reduced_from_vector(psi.amplitudes(), psi.dims(), keep).squaredNorm();
  }
  double expectation = 0.0;
  for (const auto& p : pattern) {
    double term = 0.0;
    for (unsigned mask = 0; mask < subsets; ++mask) {
      int sign = 1;
      for (int k = 0; k < n; ++k)
        if (mask & (1u << k)) sign *= p.signs[k];
      term += sign * purities[mask];
    }
    expectation += p.weight * term / static_cast<double>(subsets);
  }
  return 2.0 * std::sqrt(std::max(0.0, expectation));
}

double meyer_wallach(const PureState& psi) {
  for (int d : psi.dims())
    if (d != 2) throw std::invalid_argument("meyer_wallach requires qubits");
  double sum = 0.0;
  for (int k = 0; k < psi.parties(); ++k) {
    const int keep[] = {k};
    sum += 2.0 * (1.0 - reduced_from_vector(psi.amplitudes(), psi.dims(), keep).squaredNorm());
  }
  return sum / psi.parties();
}

OptimizationResult convex_roof(const DensityMatrix& rho, const PureFunctional& f, int ensemble_size,
                               const OptimizerOptions& options) {
  if (rho.dim() > 16) throw size_limit_error("convex_roof is limited to dimension 16");
  if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const auto eig = hermitian_eig(rho.matrix());
  const Index rank = (eig.eigenvalues.array() > 1e-12).count();
  if (ensemble_size < rank) throw std::invalid_argument("ensemble_size is smaller than rank(rho)");
  const Index m = ensemble_size;
  const Index r = rank;

  // columns sqrt(lambda_i) e_i
  MatrixX<cplx> w(rho.dim(), r);
  for (Index i = 0; i < r; ++i) w.col(i) = std::sqrt(eig.eigenvalues(i)) * eig.eigenvectors.col(i);

  auto isometry = [&](const Eigen::VectorXd& x) {
    MatrixX<cplx> z(m, r);
    for (Index j = 0; j < r; ++j)
      for (Index i = 0; i < m; ++i) z(i, j) = cplx(x(2 * (j * m + i)), x(2 * (j * m + i) + 1));
    const MatrixX<cplx> gram = z.adjoint() * z;
    const auto ge = hermitian_eig(gram);
    const VectorX<double> inv_sqrt = ge.eigenvalues.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return MatrixX<cplx>(z * (ge.eigenvectors * inv_sqrt.asDiagonal() * ge.eigenvectors.adjoint()));
  };
  auto ensemble_of = [&](const MatrixX<cplx>& u) {
    std::vector<EnsembleMember> members;
    for (Index j = 0; j < m; ++j) {
      const VectorX<cplx> v = w * u.row(j).transpose();
      const double p = v.squaredNorm();
      if (p < 1e-15) continue;
      members.push_back({p, PureState::normalized(v, rho.dims())});
    }
    return members;
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    double total = 0.0;
    for (const auto& e : ensemble_of(isometry(x))) total += e.probability * f(e.state);
    return total;
  };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  OptimizationResult best;
  best.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (int run = 0; run < options.restarts; ++run) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2 * m * r);
    if (run == 0) {
      for (Index i = 0; i < r; ++i) x0(2 * (i * m + i)) = 1.0;
    } else {
      for (Index i = 0; i < x0.size(); ++i) x0(i) = normal(rng);
    }
    // the starting ensemble is itself a valid decomposition
    const double start_value = objective(x0);
    if (start_value < best.value) {
      best.value = start_value;
      best_x = x0;
      best.converged = false;
    }
    const auto res = detail::bfgs(objective, x0, options.max_iterations > 0 ? std::min(options.max_iterations, 400) : 400);
    if (res.value < best.value) {
      best.value = res.value;
      best_x = res.x;
      best.converged = res.converged;
    }
  }
  best.ensemble = ensemble_of(isometry(best_x));
  best.restarts_used = options.restarts;
  return best;
}

int tensor_rank_upper_bound(const PureState& psi, int max_rank, const OptimizerOptions& options) {
  if (psi.dim() > 256) throw size_limit_error("tensor_rank_upper_bound is limited to total dimension 256");
  if (max_rank < 1) throw std::invalid_argument("max_rank must be >= 1");
  constexpr double kResidualTol = 1e-6;
  // Border-rank approximations reach small residuals only with diverging terms.
  constexpr double kMaxTermNorm = 1e3;
  const int n = psi.parties();
  const auto& dims = psi.dims();
  std::vector<MatrixX<cplx>> unfoldings;
  for (int k = 0; k < n; ++k) {
    const int left[] = {k};
    unfoldings.push_back(coefficient_matrix(psi.amplitudes(), dims, left));
  }
  const DigitTable table(dims);
  std::mt19937_64 rng(options.seed);

  for (int rank = 1; rank <= max_rank; ++rank) {
    for (int run = 0; run < options.restarts; ++run) {
      std::vector<MatrixX<cplx>> a(n);
      for (int k = 0; k < n; ++k) {
        a[k].resize(dims[k], rank);
        for (int c = 0; c < rank; ++c) a[k].col(c) = random_complex_gaussian(dims[k], rng);
      }
      double residual = 1.0;
      for (int sweep = 0; sweep < 1000; ++sweep) {
        for (int k = 0; k < n; ++k) {
          // Khatri-Rao product of the other factors, rows in ascending party order
          const long rows = psi.dim() / dims[k];
          MatrixX<cplx> kr = MatrixX<cplx>::Ones(rows, rank);
          long stride = rows;
          for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            stride /= dims[j];
            for (long row = 0; row < rows; ++row) {
              const int idx = static_cast<int>((row / stride) % dims[j]);
              kr.row(row) = kr.row(row).cwiseProduct(a[j].row(idx));
            }
          }
          a[k] = kr.completeOrthogonalDecomposition().solve(unfoldings[k].transpose()).transpose();
        }
        VectorX<cplx> model = VectorX<cplx>::Zero(psi.dim());
        for (Index i = 0; i < psi.dim(); ++i) {
          for (int c = 0; c < rank; ++c) {
            cplx term = 1.0;
            for (int k = 0; k < n; ++k) term *= a[k](table.at(i, k), c);
            model(i) += term;
          }
        }
        const double next = (psi.amplitudes() - model).norm();
        const bool stalled = std::abs(residual - next) < 1e-14;
        residual = next;
        if (residual < 1e-10 || stalled) break;
      }
      double term_norms = 0.0;
      for (int c = 0; c < rank; ++c) {
        double t = 1.0;
        for (int k = 0; k < n; ++k) t *= a[k].col(c).norm();
        term_norms += t;
      }
      if (residual < kResidualTol && term_norms <= kMaxTermNorm) return rank;
    }
  }
  return max_rank + 1;
}

}  // namespace entangle
