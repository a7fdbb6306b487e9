#include "entangle/invariants3q.hpp"

#include "entangle/measures.hpp"

namespace entangle {

namespace {

void check_three_qubits(const PureState& psi) {
  if (psi.dims() != Dims{2, 2, 2}) throw std::invalid_argument("expected a three-qubit state");
}

MatrixX<cplx> single(const PureState& psi, int party) {
  const int keep[] = {party};
  return reduced_from_vector(psi.amplitudes(), psi.dims(), keep);
}

double kempe(const PureState& psi, int x, int y) {
  const MatrixX<cplx> rx = single(psi, x);
  const MatrixX<cplx> ry = single(psi, y);
  const int keep[] = {x, y};
  const MatrixX<cplx> rxy = reduced_from_vector(psi.amplitudes(), psi.dims(), keep);
  const double mixed = (kron(rx, ry) * rxy).trace().real();
  const double cube_x = (rx * rx * rx).trace().real();
  const double cube_y = (ry * ry * ry).trace().real();
  return 3.0 * mixed - cube_x - cube_y;
}

MatrixX<cplx> sigma_yy() {
  MatrixX<cplx> m = MatrixX<cplx>::Zero(4, 4);
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

// Concurrence from any factorization rho = W W^dagger: the singular values of
// W^T (sigma_y (x) sigma_y) W are the square roots of the eigenvalues of
// rho rho~, without taking square roots of near-zero eigenvalues.
double concurrence_from_factor(const MatrixX<cplx>& w) {
  const MatrixX<cplx> m = w.transpose() * sigma_yy() * w;
  const VectorX<double> mu = Eigen::JacobiSVD<MatrixX<cplx>>(m).singularValues();
  double c = mu.size() > 0 ? mu(0) : 0.0;
  for (Index k = 1; k < mu.size(); ++k) c -= mu(k);
  return std::max(0.0, c);
}

// U with U a = |1>.
MatrixX<cplx> rotate_to_one(const VectorX<cplx>& a) {
  MatrixX<cplx> u(2, 2);
  u << -a(1), a(0), std::conj(a(0)), std::conj(a(1));
  return u;
}

constexpr int kOffSupport[] = {0b011, 0b101, 0b110};

double off_support(const VectorX<cplx>& v) {
  double m = 0.0;
  for (int i : kOffSupport) m = std::max(m, std::abs(v(i)));
  return m;
}

}  // namespace

std::string to_string(SloccClass c) {
  switch (c) {
    case SloccClass::Product: return "Product";
    case SloccClass::Bisep_A_BC: return "Bisep_A_BC";
    case SloccClass::Bisep_B_AC: return "Bisep_B_AC";
    case SloccClass::Bisep_C_AB: return "Bisep_C_AB";
    case SloccClass::W: return "W";
    case SloccClass::GHZ: return "GHZ";
  }
  return "unknown";
}

cplx hyperdet3(const ComplexTensor& t) {
  if (t.dims != Dims{2, 2, 2}) throw std::invalid_argument("hyperdet3 requires a 2x2x2 tensor");
  auto T = [&](int i, int j, int k) { return t.data(4 * i + 2 * j + k); };
  const cplx squares = T(0, 0, 0) * T(0, 0, 0) * T(1, 1, 1) * T(1, 1, 1) +
                       T(0, 0, 1) * T(0, 0, 1) * T(1, 1, 0) * T(1, 1, 0) +
                       T(0, 1, 0) * T(0, 1, 0) * T(1, 0, 1) * T(1, 0, 1) +
                       T(1, 0, 0) * T(1, 0, 0) * T(0, 1, 1) * T(0, 1, 1);
  const cplx pairs =
      T(0, 0, 0) * T(1, 1, 1) * (T(0, 1, 1) * T(1, 0, 0) + T(1, 0, 1) * T(0, 1, 0) + T(1, 1, 0) * T(0, 0, 1)) +
      T(0, 1, 1) * T(1, 0, 0) * (T(1, 0, 1) * T(0, 1, 0) + T(1, 1, 0) * T(0, 0, 1)) +
      T(1, 0, 1) * T(0, 1, 0) * T(1, 1, 0) * T(0, 0, 1);
  const cplx quads = T(0, 0, 0) * T(1, 1, 0) * T(1, 0, 1) * T(0, 1, 1) + T(1, 1, 1) * T(0, 0, 1) * T(0, 1, 0) * T(1, 0, 0);
  return squares - 2.0 * pairs + 4.0 * quads;
}

std::array<double, 3> kempe_symmetric_check(const PureState& psi) {
  check_three_qubits(psi);
  return {kempe(psi, 0, 1), kempe(psi, 0, 2), kempe(psi, 1, 2)};
}

double wootters_concurrence(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw std::invalid_argument("wootters_concurrence requires a two-qubit state");
  const auto eig = hermitian_eig(rho.matrix());
  const Index rank = (eig.eigenvalues.array() > 1e-14).count();
  MatrixX<cplx> w(4, rank);
  for (Index k = 0; k < rank; ++k) w.col(k) = std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k);
  return concurrence_from_factor(w);
}

double one_party_tangle(const PureState& psi, int party) {
  check_three_qubits(psi);
  return std::max(0.0, 4.0 * single(psi, party).determinant().real());
}

double pair_tangle(const PureState& psi, int x, int y) {
  check_three_qubits(psi);
  const int keep[] = {x, y};
  // rho_xy = G G^dagger with G the (xy) x (rest) coefficient matrix
  const MatrixX<cplx> g = coefficient_matrix(psi.amplitudes(), psi.dims(), keep);
  const double c = concurrence_from_factor(g);
  return c * c;
}

Tangles tangles(const PureState& psi) {
  check_three_qubits(psi);
  Tangles t;
  t.tau1 = (one_party_tangle(psi, 0) + one_party_tangle(psi, 1) + one_party_tangle(psi, 2)) / 3.0;
  const double ab = pair_tangle(psi, 0, 1);
  const double bc = pair_tangle(psi, 1, 2);
  const double ac = pair_tangle(psi, 0, 2);
  t.tau2 = (ab + bc + ac) / 3.0;
  t.tau3 = one_party_tangle(psi, 0) - ab - ac;
  return t;
}

double monogamy_gap(const PureState& psi) {
  check_three_qubits(psi);
  return one_party_tangle(psi, 0) - pair_tangle(psi, 0, 1) - pair_tangle(psi, 0, 2);
}

std::array<double, 3> polytope_coords(const PureState& psi) {
  check_three_qubits(psi);
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = std::clamp(local_spectrum(psi, k)(1), 0.0, 0.5);
  return out;
}

SloccClass slocc_class_3qubit(const PureState& psi) {
  check_three_qubits(psi);
  std::array<bool, 3> rank_one{};
  int count = 0;
  for (int k = 0; k < 3; ++k) {
    rank_one[k] = local_spectrum(psi, k)(1) <= 1e-10;
    count += rank_one[k];
  }
  if (count >= 2) return SloccClass::Product;
  if (count == 1) {
    if (rank_one[0]) return SloccClass::Bisep_A_BC;
    if (rank_one[1]) return SloccClass::Bisep_B_AC;
    return SloccClass::Bisep_C_AB;
  }
  return tangles(psi).tau3 > kClassTol ? SloccClass::GHZ : SloccClass::W;
}

InvariantRecord lu_invariants(const PureState& psi) {
  check_three_qubits(psi);
  InvariantRecord rec;
  rec.i[0] = psi.amplitudes().squaredNorm();
  for (int k = 0; k < 3; ++k) {
    const MatrixX<cplx> r = single(psi, k);
    rec.i[k + 1] = r.squaredNorm();
    const VectorX<double> ev = hermitian_eigenvalues(r);
    rec.ranks[k] = static_cast<int>((ev.array() > 1e-10).count());
    rec.polytope[k] = std::clamp(ev(1), 0.0, 0.5);
  }
  rec.i[4] = kempe(psi, 0, 1);
  rec.i[5] = 4.0 * std::norm(hyperdet3(psi.tensor()));
  const auto t = tangles(psi);
  rec.tau1 = t.tau1;
  rec.tau2 = t.tau2;
  rec.tau3 = t.tau3;
  rec.class_label = slocc_class_3qubit(psi);
  return rec;
}

AcinForm acin_canonical_form(const PureState& psi) {
  check_three_qubits(psi);
  AcinForm out;
  VectorX<cplx> phi = psi.amplitudes();
  for (auto& u : out.local_unitaries) u = MatrixX<cplx>::Identity(2, 2);

  if (off_support(phi) > 1e-12) {
    // At a stationary point |abc> of the product overlap, the components
    // <a_perp b c|psi>, <a b_perp c|psi>, <a b c_perp|psi> vanish. Rotating
    // |abc> onto |111> therefore empties |011>, |101>, |110>.
    OptimizerOptions opts;
    opts.restarts = 4;
    opts.tol = 1e-15;
    opts.seed = 0x5eed;
    opts.max_iterations = 20000;
    auto best = max_product_overlap(psi, opts);
    auto rotated = [&](const std::vector<VectorX<cplx>>& factors) {
      std::array<MatrixX<cplx>, 3> us;
      for (int k = 0; k < 3; ++k) us[k] = rotate_to_one(factors[k]);
      return us;
    };
    auto us = rotated(best.factors);
    phi = apply_local(psi, us);
    for (int round = 0; round < 20 && off_support(phi) > 1e-11; ++round) {
      best = refine_product_overlap(psi, best.factors, -1.0, 5000);
      us = rotated(best.factors);
      phi = apply_local(psi, us);
    }
    if (off_support(phi) > 1e-8) {
      throw convergence_error("acin_canonical_form: could not zero the |011>, |101>, |110> components");
    }
    out.local_unitaries = us;
  }

  // diag(1, e^{i delta_X}) per qubit plus a global phase g makes the
  // |100>, |010>, |001>, |111> components real and non-negative.
  const double a1 = std::arg(phi(0b100));
  const double a2 = std::arg(phi(0b010));
  const double a3 = std::arg(phi(0b001));
  const double a4 = std::arg(phi(0b111));
  const double g = (a4 - a1 - a2 - a3) / 2.0;
  const std::array<double, 3> delta = {-a1 - g, -a2 - g, -a3 - g};
  for (int k = 0; k < 3; ++k) {
    MatrixX<cplx> d = MatrixX<cplx>::Identity(2, 2);
    d(1, 1) = std::polar(1.0, delta[k]);
    if (k == 0) d *= std::polar(1.0, g);
    out.local_unitaries[k] = d * out.local_unitaries[k];
  }
  out.canonical = apply_local(psi, out.local_unitaries);
  const int support[] = {0b000, 0b100, 0b010, 0b001, 0b111};
  for (int j = 0; j < 5; ++j) out.r[j] = std::abs(out.canonical(support[j]));
  out.theta = out.r[0] > 1e-14 ? std::arg(out.canonical(0b000)) : 0.0;
  return out;
}

}  // namespace entangle
