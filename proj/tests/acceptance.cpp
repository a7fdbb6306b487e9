// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "entangle/invariants3q.hpp"
#include "entangle/measures.hpp"
#include "entangle/protocols.hpp"
#include "entangle/schmidt.hpp"
#include "entangle/separability.hpp"
#include "entangle/special.hpp"
#include "entangle/states.hpp"
#include "oracles.hpp"

using namespace entangle;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<PureState> haar(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PureState> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(random_pure_state({2, 2, 2}, rng));
  return out;
}

const std::vector<PureState>& sample() {
  static const auto s = haar(10000, 2024);
  return s;
}

PureState one_plus_bell(int lone) {
  VectorX<cplx> v = VectorX<cplx>::Zero(8);
  for (int b : {0, 1}) {
    int idx = 0;
    for (int k = 0; k < 3; ++k)
      if (k != lone) idx |= b << (2 - k);
    v(idx) = 1 / std::sqrt(2.0);
  }
  return PureState(v, {2, 2, 2});
}

Outcome reference_rows() {
  struct Row {
    PureState psi;
    std::array<double, 6> i;
    std::array<double, 3> tau;
    std::array<int, 3> ranks;
  };
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::vector<VectorX<cplx>> f;
  for (int k = 0; k < 3; ++k) f.push_back(random_pure_state({2}, rng).amplitudes());
  const double half[] = {0.5, 0.5};
  const std::vector<Row> rows = {
      {product_state(f), {1, 1, 1, 1, 1, 0}, {0, 0, 0}, {1, 1, 1}},
      {one_plus_bell(0), {1, 1, 0.5, 0.5, 0.25, 0}, {2.0 / 3, 1.0 / 3, 0}, {1, 2, 2}},
      {one_plus_bell(1), {1, 0.5, 1, 0.5, 0.25, 0}, {2.0 / 3, 1.0 / 3, 0}, {2, 1, 2}},
      {one_plus_bell(2), {1, 0.5, 0.5, 1, 0.25, 0}, {2.0 / 3, 1.0 / 3, 0}, {2, 2, 1}},
      {w_state(), {1, 5.0 / 9, 5.0 / 9, 5.0 / 9, 2.0 / 9, 0}, {8.0 / 9, 4.0 / 9, 0}, {2, 2, 2}},
      {ghz_state(3, 2, half), {1, 0.5, 0.5, 0.5, 0.25, 0.25}, {1, 0, 1}, {2, 2, 2}},
  };
  int bad = 0;
  double worst = 0.0;
  for (const auto& row : rows) {
    const auto r = lu_invariants(row.psi);
    for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(r.i[k] - row.i[k]));
    worst = std::max({worst, std::abs(r.tau1 - row.tau[0]), std::abs(r.tau2 - row.tau[1]),
                      std::abs(r.tau3 - row.tau[2])});
    if (r.ranks != row.ranks) ++bad;
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && bad == 0 && t < 1.0,
          fmt("6 rows, max deviation %.2e, rank mismatches %d, %.3f s", worst, bad, t)};
}

Outcome tangle_identities() {
  const auto t0 = Clock::now();
  double e1 = 0, e2 = 0, e3 = 0, e2c = 0;
  for (const auto& psi : sample()) {
    const auto r = lu_invariants(psi);
    const double iav = (r.i[1] + r.i[2] + r.i[3]) / 3.0;
    e1 = std::max(e1, std::abs(r.tau1 - 2 * (1 - iav)));
    e2 = std::max(e2, std::abs(r.tau2 - (1 - iav - 2 * r.i[5])));
    e3 = std::max(e3, std::abs(r.tau3 - 2 * std::sqrt(r.i[5])));
    e2c = std::max(e2c, std::abs(r.tau2 - (1 - iav - std::sqrt(r.i[5]))));
  }
  const double t = seconds_since(t0);
  std::printf("      tau1=2(1-Iav): %.2e  tau2=1-Iav-2I6: %.2e  tau3=2sqrt(I6): %.2e\n", e1, e2, e3);
  std::printf("      (tau2=1-Iav-sqrt(I6) holds to %.2e)\n", e2c);
  return {e1 <= 1e-8 && e2 <= 1e-8 && e3 <= 1e-8 && t < 30.0,
          fmt("10000 Haar states, worst deviation %.2e, %.2f s", std::max({e1, e2, e3}), t)};
}

Outcome monogamy() {
  int fails = 0;
  double lo = 1.0;
  for (const auto& psi : sample()) {
    const double g = monogamy_gap(psi);
    lo = std::min(lo, g);
    if (g < -1e-9) ++fails;
  }
  return {fails == 0, fmt("10000 states, min gap %.3e, failures %d", lo, fails)};
}

Outcome kempe() {
  double lo = 2.0, hi = -1.0, spread = 0.0;
  for (const auto& psi : sample()) {
    const auto v = kempe_symmetric_check(psi);
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
    spread = std::max({spread, std::abs(v[0] - v[1]), std::abs(v[0] - v[2])});
  }
  std::mt19937_64 rng(4);
  double near_w = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    VectorX<cplx> dv = random_complex_gaussian(8, rng);
    dv *= 0.05 * std::uniform_real_distribution<double>(0, 1)(rng) / dv.norm();
    const auto psi = PureState::normalized(w_state().amplitudes() + dv, {2, 2, 2});
    near_w = std::max(near_w, kempe_symmetric_check(psi)[0] - 2.0 / 9);
  }
  const bool ok = lo >= 2.0 / 9 - 1e-9 && hi <= 1 + 1e-9 && spread <= 1e-9 && near_w < 0.01;
  return {ok, fmt("I5 in [%.6f, %.6f], pairing spread %.2e, near-W excess %.4f", lo, hi, spread, near_w)};
}

Outcome sl_invariance() {
  std::mt19937_64 rng(5);
  auto sl2 = [&] {
    MatrixX<cplx> m(2, 2);
    std::normal_distribution<double> g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cplx(g(rng), g(rng));
    return MatrixX<cplx>(m / std::sqrt(m.determinant()));
  };
  double worst = 0.0;
  int skipped = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto psi = random_pure_state({2, 2, 2}, rng);
    const std::vector<MatrixX<cplx>> ops = {sl2(), sl2(), sl2()};
    const double before = std::abs(hyperdet3(psi.tensor()));
    const double after = std::abs(hyperdet3(ComplexTensor(apply_local(psi, ops), {2, 2, 2})));
    if (before < 1e-12) {
      ++skipped;
      continue;
    }
    worst = std::max(worst, std::abs(after - before) / before);
  }
  return {worst < 1e-8, fmt("500 transforms, max relative change %.2e, skipped %d", worst, skipped)};
}

std::vector<double> random_simplex(int d, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double s = 0.0;
  for (double& x : p) s += (x = e(rng));
  for (double& x : p) x /= s;
  std::sort(p.rbegin(), p.rend());
  return p;
}

Outcome nielsen() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dim(2, 6);
  int mismatches = 0, bell_fail = 0, product_fail = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dim(rng);
    const auto src = random_simplex(d, rng), tgt = random_simplex(d, rng);
    if (nielsen_convertible(src, tgt) != oracle::majorizes(tgt, src)) ++mismatches;
    const std::vector<double> bell(d, 1.0 / d);
    std::vector<double> prod(d, 0.0);
    prod[0] = 1.0;
    if (!nielsen_convertible(bell, tgt)) ++bell_fail;
    if (nielsen_convertible(prod, tgt)) ++product_fail;
  }
  return {mismatches == 0 && bell_fail == 0 && product_fail == 0,
          fmt("1000 pairs d<=6, oracle mismatches %d, Bell failures %d, product conversions %d", mismatches,
              bell_fail, product_fail)};
}

Outcome catalysis() {
  const std::vector<double> src = {0.4, 0.4, 0.1, 0.1}, tgt = {0.5, 0.25, 0.25, 0.0};
  const bool direct = nielsen_convertible(src, tgt);
  const auto eta = find_catalyst(src, tgt, 2, 100);
  const bool verified = eta && oracle::majorizes(oracle::outer(tgt, *eta), oracle::outer(src, *eta));
  return {!direct && verified, eta ? fmt("direct %s, catalyst (%.2f, %.2f) verified %s", direct ? "yes" : "no",
                                         (*eta)[0], (*eta)[1], verified ? "yes" : "no")
                                   : fmt("direct %s, no catalyst found", direct ? "yes" : "no")};
}

Outcome teleportation() {
  double dist = 0.0, pdev = 0.0;
  std::mt19937_64 rng(8);
  for (int d = 2; d <= 4; ++d) {
    dist = std::max(dist, teleport_choi_distance(d));
    for (const auto& b : teleport(DensityMatrix(oracle::random_density(d, rng), {d}), d))
      pdev = std::max(pdev, std::abs(b.probability - 1.0 / (d * d)));
  }
  return {dist <= 1e-8 && pdev <= 1e-10, fmt("d=2..4, Choi distance %.2e, branch probability deviation %.2e", dist, pdev)};
}

Outcome bound_entanglement() {
  double upb_min = 1.0;
  bool upb_ppt = true;
  for (const auto& [bip, r] : ppt_all_bipartitions(upb_state())) {
    upb_ppt = upb_ppt && r.ppt;
    upb_min = std::min(upb_min, r.min_eigenvalue);
  }
  const bool unext = upb_unextendibility_check(upb_vectors(), 100, 0);
  bool smolin_ppt = true;
  for (const auto& [bip, r] : ppt_all_bipartitions(smolin_state()))
    if (bip.largest_block() == 2) smolin_ppt = smolin_ppt && r.ppt;
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      for (const auto& br : unlock_smolin({a, b})) {
        const double c = br.post_state ? wootters_concurrence(*br.post_state) : 0.0;
        worst = std::max(worst, std::abs(c * c - 1.0));
      }
    }
  }
  return {upb_ppt && upb_min >= -1e-10 && unext && smolin_ppt && worst <= 1e-9,
          fmt("UPB PPT %s (min eig %.2e), unextendible %s, Smolin pair cuts PPT %s, unlock tangle deviation %.2e",
              upb_ppt ? "yes" : "no", upb_min, unext ? "yes" : "no", smolin_ppt ? "yes" : "no", worst)};
}

Outcome geometric() {
  // independent dense-restart oracle runs before the optimizer
  const double og = 1.0 - oracle::max_product_overlap_3q(ghz_state().amplitudes());
  const double ow = 1.0 - oracle::max_product_overlap_3q(w_state().amplitudes());
  const bool certified = std::abs(og - 0.5) <= 1e-6 && std::abs(ow - 5.0 / 9) <= 1e-6;
  OptimizerOptions o;
  o.restarts = 32;
  const double g = geometric_measure(ghz_state(), o).value;
  const double w = geometric_measure(w_state(), o).value;
  std::mt19937_64 rng(10);
  double prod = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<VectorX<cplx>> f;
    for (int k = 0; k < 3; ++k) f.push_back(random_pure_state({2}, rng).amplitudes());
    prod = std::max(prod, geometric_measure(product_state(f), o).value);
  }
  return {certified && std::abs(g - 0.5) <= 1e-6 && std::abs(w - 5.0 / 9) <= 1e-6 && prod <= 1e-10,
          fmt("oracle GHZ %.8f W %.8f; GHZ %.8f W %.8f; product max %.2e", og, ow, g, w, prod)};
}

Outcome convex_roof_sweep() {
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double p = k / 19.0;
    const MatrixX<cplx> m =
        p * DensityMatrix(bell_state(2)).matrix() + (1 - p) * MatrixX<cplx>::Identity(4, 4) / 4.0;
    const DensityMatrix rho(m, {2, 2});
    const double c = wootters_concurrence(rho);
    OptimizerOptions o;
    o.restarts = 4;
    o.seed = k;
    const double v = convex_roof(rho, [](const PureState& s) { return tangle_two_qubit_det(s); }, 5, o).value;
    worst = std::max(worst, std::abs(v - c * c));
  }
  return {worst <= 2e-3, fmt("20-point noisy Bell sweep, max deviation %.2e", worst)};
}

Outcome acin() {
  const int support[] = {0b000, 0b100, 0b010, 0b001, 0b111};
  int failures = 0;
  double off = 0.0, inv = 0.0;
  for (const auto& psi : haar(1000, 12)) {
    try {
      const auto form = acin_canonical_form(psi);
      for (int idx = 0; idx < 8; ++idx)
        if (std::find(std::begin(support), std::end(support), idx) == std::end(support))
          off = std::max(off, std::abs(form.canonical(idx)));
      const auto a = lu_invariants(psi);
      const auto b = lu_invariants(PureState::normalized(form.canonical, {2, 2, 2}));
      for (int k = 0; k < 6; ++k) inv = std::max(inv, std::abs(a.i[k] - b.i[k]));
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return {failures == 0 && off < 1e-8 && inv <= 1e-8,
          fmt("1000 states, max off-support %.2e, invariant drift %.2e, failures %d", off, inv, failures)};
}

Outcome lme_ame() {
  const bool lme = is_lme(psi25_state(), 1e-8);
  int wrong = 0;
  auto expect = [&](int n, int d, AmeFeasibility f) {
    if (ame_feasibility(n, d).feasible != f) ++wrong;
  };
  expect(4, 2, AmeFeasibility::NotExists);
  for (int n = 7; n <= 40; ++n) expect(n, 2, AmeFeasibility::NotExists);
  expect(4, 6, AmeFeasibility::Exists);
  for (int d = 7; d <= 20; ++d) expect(4, d, AmeFeasibility::Exists);
  for (int d = 2; d <= 32; ++d)
    if (is_prime_power(d))
      for (int n = 2; n <= d; ++n) expect(n, d, AmeFeasibility::Exists);
  for (int d = 2; d <= 12; ++d) {
    for (int n = 2; n <= 60; ++n) {
      const bool even_out = n % 2 == 0 && n > 2 * (d * d - 1);
      const bool odd_out = n % 2 == 1 && n > 2 * (d * (d + 1) - 1);
      if (even_out || odd_out) expect(n, d, AmeFeasibility::NotExists);
    }
  }
  return {lme && wrong == 0, fmt("psi25 LME %s, feasibility mismatches %d", lme ? "yes" : "no", wrong)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"reference invariant rows", reference_rows},
      {"tangle identities", tangle_identities},
      {"monogamy", monogamy},
      {"Kempe bounds and symmetry", kempe},
      {"Det3 SL invariance", sl_invariance},
      {"Nielsen correctness", nielsen},
      {"catalysis", catalysis},
      {"teleportation", teleportation},
      {"UPB / Smolin / unlock", bound_entanglement},
      {"geometric measure", geometric},
      {"convex roof vs Wootters", convex_roof_sweep},
      {"Acin canonical form", acin},
      {"LME / AME", lme_ame},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& [name, run] = criteria[k];
    Outcome out{false, ""};
    try {
      out = run();
    } catch (const std::exception& e) {
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", out.pass ? "PASS" : "FAIL", k + 1, name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
