#include "entangle/separability.hpp"

#include <functional>

namespace entangle {

namespace {

std::vector<std::vector<int>> blocks_from_rgs(const std::vector<int>& rgs) {
  const int count = *std::max_element(rgs.begin(), rgs.end()) + 1;
  std::vector<std::vector<int>> blocks(count);
  for (std::size_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]].push_back(static_cast<int>(i));
  return blocks;
}

double block_purity(const PureState& psi, std::span<const int> block) {
  if (static_cast<int>(block.size()) == psi.parties()) return 1.0;
  return reduced_from_vector(psi.amplitudes(), psi.dims(), block).squaredNorm();
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_partitions requires n >= 1");
  if (n > 8) throw size_limit_error("enumerate_partitions is limited to n <= 8");
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> extend = [&](int pos, int max_label) {
    if (pos == n) {
      out.emplace_back(blocks_from_rgs(rgs));
      return;
    }
    for (int label = 0; label <= max_label + 1; ++label) {
      rgs[pos] = label;
      extend(pos + 1, std::max(max_label, label));
    }
  };
  rgs[0] = 0;
  extend(1, 0);
  return out;
}

std::vector<Partition> enumerate_bipartitions(int n) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(n)) {
    if (p.block_count() == 2) out.push_back(std::move(p));
  }
  return out;
}

bool refines(const Partition& beta, const Partition& alpha) {
  if (beta.parties() != alpha.parties()) throw std::invalid_argument("refines: ground sets differ");
  std::vector<int> owner(alpha.parties());
  for (std::size_t b = 0; b < alpha.blocks().size(); ++b)
    for (int k : alpha.blocks()[b]) owner[k] = static_cast<int>(b);
  for (const auto& block : beta.blocks()) {
    for (int k : block)
      if (owner[k] != owner[block.front()]) return false;
  }
  return true;
}

bool is_product_across(const PureState& psi, const Partition& partition, double tol) {
  if (partition.parties() != psi.parties()) throw std::invalid_argument("partition does not match the state");
  if (partition.block_count() == 1) return true;
  for (const auto& block : partition.blocks()) {
    if (block_purity(psi, block) < 1.0 - tol) return false;
  }
  return true;
}

ClassificationReport classify_pure(const PureState& psi, double tol) {
  const int n = psi.parties();
  if (n > 8) throw size_limit_error("classify_pure is limited to 8 parties");

  // Split each block at the first sub-block whose marginal is pure. Pure
  // marginals of a pure block factor it, and factorization is inherited by
  // the pieces, so repeated splitting reaches the finest product partition.
  std::vector<std::vector<int>> pending = {Partition::whole(n).blocks()[0]};
  std::vector<std::vector<int>> done;
  while (!pending.empty()) {
    auto block = std::move(pending.back());
    pending.pop_back();
    const int size = static_cast<int>(block.size());
    bool split = false;
    // subsets containing block[0], proper, smallest first
    for (int sub = 1; sub < size && !split; ++sub) {
      // combinations of (sub - 1) further members among block[1..]
      std::vector<int> sel(size - 1, 0);
      std::fill(sel.end() - (sub - 1), sel.end(), 1);
      do {
        std::vector<int> left = {block[0]}, right;
        for (int i = 1; i < size; ++i) (sel[i - 1] ? left : right).push_back(block[i]);
        if (block_purity(psi, left) >= 1.0 - tol) {
          pending.push_back(std::move(left));
          pending.push_back(std::move(right));
          split = true;
          break;
        }
      } while (std::next_permutation(sel.begin(), sel.end()));
    }
    if (!split) done.push_back(std::move(block));
  }

  ClassificationReport report{Partition(done), 0, false, false, {}};
  report.producibility_m = report.finest_product_partition.largest_block();
  report.genuinely_multipartite = n >= 2 && report.finest_product_partition.block_count() == 1;
  report.fully_separable = report.producibility_m == 1;
  if (n >= 2) {
    for (const auto& bip : enumerate_bipartitions(n)) {
      report.bipartition_product[bip] = is_product_across(psi, bip, tol);
    }
  }
  return report;
}

MatrixX<cplx> partial_transpose(const DensityMatrix& rho, std::span<const int> subset) {
  const int n = rho.parties();
  const auto sub = checked_subset(subset, n);
  if (static_cast<int>(sub.size()) == n) throw std::invalid_argument("partial_transpose subset must be proper");
  const auto& dims = rho.dims();
  const auto st = strides(dims);
  const Index total = rho.dim();
  // flat = (subset part) + (rest part), since the flat index is additive in digits
  std::vector<long> sub_part(total, 0);
  for (Index i = 0; i < total; ++i)
    for (int k : sub) sub_part[i] += digit(i, st, dims, k) * st[k];
  MatrixX<cplx> out(total, total);
  const auto& m = rho.matrix();
  for (Index j = 0; j < total; ++j) {
    for (Index i = 0; i < total; ++i) {
      const long ri = i - sub_part[i];
      const long rj = j - sub_part[j];
      out(i, j) = m(ri + sub_part[j], rj + sub_part[i]);
    }
  }
  return out;
}

PptResult ppt_check(const DensityMatrix& rho, const Partition& bipartition) {
  if (bipartition.block_count() != 2 || bipartition.parties() != rho.parties()) {
    throw std::invalid_argument("ppt_check requires a bipartition of the state's subsystems");
  }
  const MatrixX<cplx> pt = partial_transpose(rho, bipartition.blocks()[1]);
  PptResult r;
  r.min_eigenvalue = hermitian_eigenvalues(pt).minCoeff();
  r.ppt = r.min_eigenvalue >= -kPptTol;
  return r;
}

std::map<Partition, PptResult> ppt_all_bipartitions(const DensityMatrix& rho) {
  if (rho.parties() > 6) throw size_limit_error("ppt_all_bipartitions is limited to 6 parties");
  std::map<Partition, PptResult> out;
  if (rho.parties() < 2) return out;
  for (const auto& bip : enumerate_bipartitions(rho.parties())) out.emplace(bip, ppt_check(rho, bip));
  return out;
}

CutVerdict cut_verdict(const PptResult& r) { return r.ppt ? CutVerdict::Inconclusive : CutVerdict::EntangledNpt; }

UpbCheck upb_search(std::span<const PureState> basis, int restarts, std::uint64_t seed) {
  if (basis.empty()) throw std::invalid_argument("upb_search: empty basis");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const Dims dims = basis.front().dims();
  const int n = static_cast<int>(dims.size());
  // factors[v][k]
  std::vector<std::vector<VectorX<cplx>>> factors;
  for (const auto& v : basis) {
    if (v.dims() != dims) throw std::invalid_argument("upb_search: members have different dims");
    std::vector<VectorX<cplx>> fv;
    for (int k = 0; k < n; ++k) {
      const int keep[] = {k};
      const auto eig = hermitian_eig(reduced_from_vector(v.amplitudes(), dims, keep));
      if (eig.eigenvalues(0) < 1.0 - kProductPurityTol) {
        throw std::invalid_argument("upb_search: basis member is not a product state");
      }
      fv.push_back(eig.eigenvectors.col(0));
    }
    factors.push_back(std::move(fv));
  }

  auto residual = [&](const std::vector<VectorX<cplx>>& a) {
    double total = 0.0;
    for (const auto& fv : factors) {
      double p = 1.0;
      for (int k = 0; k < n; ++k) p *= std::norm(fv[k].dot(a[k]));
      total += p;
    }
    return total;
  };

  std::mt19937_64 rng(seed);
  UpbCheck best;
  best.min_residual = std::numeric_limits<double>::infinity();
  for (int run = 0; run < restarts; ++run) {
    std::vector<VectorX<cplx>> a;
    for (int d : dims) a.push_back(random_complex_gaussian(d, rng).normalized());
    double value = residual(a);
    for (int sweep = 0; sweep < 500; ++sweep) {
      for (int k = 0; k < n; ++k) {
        MatrixX<cplx> m = MatrixX<cplx>::Zero(dims[k], dims[k]);
        for (const auto& fv : factors) {
          double w = 1.0;
          for (int j = 0; j < n; ++j)
            if (j != k) w *= std::norm(fv[j].dot(a[j]));
          m += w * fv[k] * fv[k].adjoint();
        }
        Eigen::SelfAdjointEigenSolver<MatrixX<cplx>> solver(m);
        a[k] = solver.eigenvectors().col(0);
      }
      const double next = residual(a);
      const bool stalled = value - next < 1e-15;
      value = next;
      if (stalled || value < 1e-14) break;
    }
    if (value < best.min_residual) {
      best.min_residual = value;
      best.best_factors = a;
    }
  }
  best.unextendible = best.min_residual >= 1e-6;
  return best;
}

bool upb_unextendibility_check(std::span<const PureState> basis, int restarts, std::uint64_t seed) {
  return upb_search(basis, restarts, seed).unextendible;
}

}  // namespace entangle
