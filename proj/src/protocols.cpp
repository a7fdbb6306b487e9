#include "entangle/protocols.hpp"

#include <algorithm>
#include <numbers>

namespace entangle {

namespace {

MatrixX<cplx> hermitian_part(const MatrixX<cplx>& m) { return (m + m.adjoint()) / 2.0; }

// <v|_{pair} (x) I_rest for a state on `dims`; the rest keeps its order.
MatrixX<cplx> project_onto(const VectorX<cplx>& v, const Dims& dims, std::span<const int> measured) {
  const int n = static_cast<int>(dims.size());
  const auto meas = checked_subset(measured, n);
  const auto rest = complement(meas, n);
  Dims meas_dims, rest_dims;
  for (int k : meas) meas_dims.push_back(dims[k]);
  for (int k : rest) rest_dims.push_back(dims[k]);
  const auto st = strides(dims);
  const auto mst = strides(meas_dims);
  const auto rst = strides(rest_dims);
  const Index total = total_dim(dims);
  MatrixX<cplx> k = MatrixX<cplx>::Zero(total_dim(rest_dims), total);
  for (Index idx = 0; idx < total; ++idx) {
    long mi = 0, ri = 0;
    for (std::size_t j = 0; j < meas.size(); ++j) mi += digit(idx, st, dims, meas[j]) * mst[j];
    for (std::size_t j = 0; j < rest.size(); ++j) ri += digit(idx, st, dims, rest[j]) * rst[j];
    k(ri, idx) = std::conj(v(mi));
  }
  return k;
}

}  // namespace

Instrument::Instrument(Dims input_dims, std::vector<InstrumentBranch> branches)
    : input_dims_(std::move(input_dims)), branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("instrument needs at least one branch");
  const Index d = total_dim(input_dims_);
  std::stable_sort(branches_.begin(), branches_.end(),
                   [](const InstrumentBranch& a, const InstrumentBranch& b) { return a.label < b.label; });
  MatrixX<cplx> sum = MatrixX<cplx>::Zero(d, d);
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const auto& br = branches_[b];
    const bool prepare = br.effect.has_value();
    if (prepare == !br.kraus.empty() || prepare != br.prepared.has_value()) {
      throw std::invalid_argument("branch must hold either Kraus operators or an effect with a prepared state");
    }
    const Index out = total_dim(br.output_dims);
    for (const auto& k : br.kraus) {
      if (k.cols() != d || k.rows() != out) throw std::invalid_argument("Kraus operator has the wrong shape");
    }
    if (prepare && (br.effect->rows() != d || br.effect->cols() != d || br.prepared->dims() != br.output_dims)) {
      throw std::invalid_argument("measure-and-prepare branch has the wrong shape");
    }
    sum += effect(b);
  }
  const double err = (sum - MatrixX<cplx>::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > kTraceTol) throw std::invalid_argument("instrument is not trace preserving");
}

MatrixX<cplx> Instrument::effect(std::size_t branch) const {
  const auto& br = branches_.at(branch);
  if (br.effect) return *br.effect;
  const Index d = total_dim(input_dims_);
  MatrixX<cplx> e = MatrixX<cplx>::Zero(d, d);
  for (const auto& k : br.kraus) e += k.adjoint() * k;
  return e;
}

MatrixX<cplx> Instrument::apply_branch(std::size_t branch, const MatrixX<cplx>& rho) const {
  const auto& br = branches_.at(branch);
  if (br.effect) return (*br.effect * rho).trace() * br.prepared->matrix();
  const Index out = total_dim(br.output_dims);
  MatrixX<cplx> r = MatrixX<cplx>::Zero(out, out);
  for (const auto& k : br.kraus) r += k * rho * k.adjoint();
  return r;
}

std::vector<BranchOutcome> Instrument::apply(const DensityMatrix& rho) const {
  if (rho.dims() != input_dims_) throw std::invalid_argument("state dims do not match the instrument");
  std::vector<BranchOutcome> out;
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const MatrixX<cplx> r = hermitian_part(apply_branch(b, rho.matrix()));
    BranchOutcome o;
    o.label = branches_[b].label;
    o.probability = std::clamp(r.trace().real(), 0.0, 1.0);
    if (o.probability > 1e-14) o.post_state.emplace(r / r.trace().real(), branches_[b].output_dims);
    out.push_back(std::move(o));
  }
  return out;
}

MatrixX<cplx> Instrument::choi() const {
  const Index d = total_dim(input_dims_);
  const Index out = total_dim(branches_.front().output_dims);
  for (const auto& br : branches_) {
    if (br.output_dims != branches_.front().output_dims) throw std::invalid_argument("branches differ in output dims");
  }
  MatrixX<cplx> j = MatrixX<cplx>::Zero(d * out, d * out);
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) {
      MatrixX<cplx> unit = MatrixX<cplx>::Zero(d, d);
      unit(r, c) = 1.0;
      MatrixX<cplx> image = MatrixX<cplx>::Zero(out, out);
      for (std::size_t b = 0; b < branches_.size(); ++b) image += apply_branch(b, unit);
      j.block(r * out, c * out, out, out) = image;
    }
  }
  return j;
}

MatrixX<cplx> weyl_operator(int m, int n, int d) {
  if (d < 2) throw std::invalid_argument("weyl_operator requires d >= 2");
  MatrixX<cplx> u = MatrixX<cplx>::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    u(k, ((k + m) % d + d) % d) = std::polar(1.0, 2.0 * std::numbers::pi * k * n / d);
  }
  return u;
}

std::vector<PureState> generalized_bell_basis(int d) {
  const PureState plus = bell_state(d);
  std::vector<PureState> out;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const MatrixX<cplx> ops[] = {weyl_operator(m, n, d), MatrixX<cplx>::Identity(d, d)};
      out.emplace_back(apply_local(plus, ops), Dims{d, d});
    }
  }
  return out;
}

Instrument teleportation_instrument(int d) {
  const auto basis = generalized_bell_basis(d);
  const VectorX<cplx> plus = bell_state(d).amplitudes();
  std::vector<InstrumentBranch> branches;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const VectorX<cplx>& psi = basis[m * d + n].amplitudes();
      // (<Psi_mn|_{A'A} (x) I_B)(I_A' (x) |psi+>_AB), A' -> B
      MatrixX<cplx> meas = MatrixX<cplx>::Zero(d, d);
      for (int b = 0; b < d; ++b)
        for (int ap = 0; ap < d; ++ap)
          for (int a = 0; a < d; ++a) meas(b, ap) += std::conj(psi(ap * d + a)) * plus(a * d + b);
      InstrumentBranch br;
      br.label = "m=" + std::to_string(m) + ",n=" + std::to_string(n);
      br.kraus = {weyl_operator(m, n, d) * meas};
      br.output_dims = {d};
      branches.push_back(std::move(br));
    }
  }
  return Instrument({d}, std::move(branches));
}

std::vector<BranchOutcome> teleport(const DensityMatrix& input, int d) {
  if (input.dims() != Dims{d}) throw std::invalid_argument("teleport expects a single d-level input");
  return teleportation_instrument(d).apply(input);
}

double teleport_choi_distance(int d) {
  const MatrixX<cplx> j = teleportation_instrument(d).choi();
  MatrixX<cplx> ideal = MatrixX<cplx>::Zero(d * d, d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) ideal(r * d + r, c * d + c) = 1.0;
  return trace_norm_hermitian(hermitian_part(j - ideal));
}

DensityMatrix entanglement_swap(const DensityMatrix& rho_xa, int d) {
  if (rho_xa.parties() < 2 || rho_xa.dims().back() != d) {
    throw std::invalid_argument("entanglement_swap expects rho_XA' with a last subsystem of dimension d");
  }
  const Instrument tele = teleportation_instrument(d);
  const Index dx = rho_xa.dim() / d;
  const MatrixX<cplx> id_x = MatrixX<cplx>::Identity(dx, dx);
  MatrixX<cplx> out = MatrixX<cplx>::Zero(rho_xa.dim(), rho_xa.dim());
  for (const auto& br : tele.branches()) {
    for (const auto& k : br.kraus) {
      const MatrixX<cplx> full = kron(id_x, k);
      out += full * rho_xa.matrix() * full.adjoint();
    }
  }
  return DensityMatrix(hermitian_part(out), rho_xa.dims());
}

Instrument filtering_instrument(const Dims& dims, std::span<const MatrixX<cplx>> filters, bool auto_rescale) {
  if (filters.size() != dims.size()) throw std::invalid_argument("need one filter per party");
  std::vector<MatrixX<cplx>> ls;
  for (std::size_t i = 0; i < filters.size(); ++i) {
    MatrixX<cplx> l = filters[i];
    if (l.rows() != dims[i] || l.cols() != dims[i]) throw std::invalid_argument("filter has the wrong size");
    const double smax = Eigen::JacobiSVD<MatrixX<cplx>>(l).singularValues()(0);
    if (auto_rescale) {
      if (smax <= 0.0) throw std::invalid_argument("cannot rescale a zero filter");
      l /= smax;
    } else if (smax * smax > 1.0 + kTraceTol) {
      throw std::invalid_argument("filter violates L^dagger L <= I");
    }
    ls.push_back(std::move(l));
  }
  const MatrixX<cplx> k = kron_all<cplx>(ls);
  const Index d = k.rows();
  InstrumentBranch filtered{"filtered", {k}, std::nullopt, std::nullopt, dims};
  InstrumentBranch remainder{"remainder", {}, MatrixX<cplx>(MatrixX<cplx>::Identity(d, d) - k.adjoint() * k),
                             maximally_mixed(dims), dims};
  return Instrument(dims, {std::move(filtered), std::move(remainder)});
}

std::vector<BranchOutcome> local_filter(const DensityMatrix& rho, std::span<const MatrixX<cplx>> filters,
                                        bool auto_rescale) {
  return filtering_instrument(rho.dims(), filters, auto_rescale).apply(rho);
}

std::vector<BranchOutcome> local_filter(const PureState& psi, std::span<const MatrixX<cplx>> filters,
                                        bool auto_rescale) {
  return local_filter(DensityMatrix(psi), filters, auto_rescale);
}

std::vector<BranchOutcome> unlock_smolin(std::array<int, 2> pair) {
  if (pair[0] == pair[1] || std::min(pair[0], pair[1]) < 0 || std::max(pair[0], pair[1]) > 3) {
    throw std::invalid_argument("unlock_smolin needs two distinct parties in 0..3");
  }
  const Dims dims{2, 2, 2, 2};
  const auto basis = generalized_bell_basis(2);
  std::vector<InstrumentBranch> branches;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    InstrumentBranch br;
    br.label = "bell=" + std::to_string(i);
    br.kraus = {project_onto(basis[i].amplitudes(), dims, pair)};
    br.output_dims = {2, 2};
    branches.push_back(std::move(br));
  }
  return Instrument(dims, std::move(branches)).apply(smolin_state());
}

MergingRate merging_rate(const PureState& psi, std::span<const int> a, std::span<const int> b, LogBase base) {
  MergingRate r;
  r.rate = conditional_entropy(DensityMatrix(psi), a, b, base);
  // exact zeros come out as tiny negatives
  r.entanglement_gain = r.rate < -1e-12;
  return r;
}

CombingProfile combing_entropy_profile(const PureState& psi, int a, const std::vector<std::vector<int>>& b_blocks,
                                       LogBase base) {
  const int n = psi.parties();
  if (a < 0 || a >= n) throw std::invalid_argument("combing: source party out of range");
  std::vector<int> seen(n, 0);
  seen[a] = 1;
  for (const auto& block : b_blocks) {
    if (block.empty()) throw std::invalid_argument("combing: empty block");
    for (int k : block) {
      if (k < 0 || k >= n || seen[k]++) throw std::invalid_argument("combing: blocks must partition the other parties");
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != n) {
    throw std::invalid_argument("combing: blocks must partition the other parties");
  }
  CombingProfile out;
  const int keep_a[] = {a};
  out.source_entropy = von_neumann_entropy(reduce(psi, keep_a), base);
  for (const auto& block : b_blocks) {
    out.block_entropies.push_back(von_neumann_entropy(reduce(psi, block), base));
  }
  return out;
}

}  // namespace entangle
