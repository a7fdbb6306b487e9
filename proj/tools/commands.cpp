#include "commands.hpp"

#include <cstdio>
#include <random>
#include <sstream>

#include "entangle/invariants3q.hpp"
#include "entangle/measures.hpp"
#include "entangle/protocols.hpp"
#include "entangle/schmidt.hpp"
#include "entangle/separability.hpp"
#include "entangle/special.hpp"

namespace entangle::cli {

namespace {

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw usage_error("not a number: '" + text + "'");
  }
  if (used != t.size()) throw usage_error("not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text) {
  const double v = parse_real(text);
  if (v != static_cast<int>(v)) throw usage_error("not an integer: '" + text + "'");
  return static_cast<int>(v);
}

json inapplicable(const std::string& reason) { return {{"status", "inapplicable"}, {"reason", reason}}; }

json vector_json(const VectorX<double>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

bool all_qubits(const Dims& dims) {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
}

double min_local_eigenvalue(const DensityMatrix& rho, int party) {
  const int keep[] = {party};
  return std::max(0.0, hermitian_eigenvalues(partial_trace(rho, keep).matrix()).minCoeff());
}

}  // namespace

cplx parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw usage_error("empty complex number");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t pos = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      pos = k;
      break;
    }
  }
  const std::string re = pos == std::string::npos ? "0" : body.substr(0, pos);
  std::string im = pos == std::string::npos ? body : body.substr(pos);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {parse_real(re), parse_real(im)};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (!trim(item).empty()) out.push_back(parse_real(item));
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw usage_error("grid must be start:stop:step");
    const double start = parse_real(parts[0]), stop = parse_real(parts[1]), step = parse_real(parts[2]);
    if (!(step > 0.0)) throw usage_error("grid step must be positive");
    if (stop >= start) {
      const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
      for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    }
  } else {
    out = parse_real_list(text);
  }
  if (out.empty()) throw usage_error("empty grid");
  return out;
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw usage_error("range must be lo:hi");
    for (int v = parse_int(parts[0]); v <= parse_int(parts[1]); ++v) out.push_back(v);
  } else {
    for (const auto& item : split(text, ','))
      if (!trim(item).empty()) out.push_back(parse_int(item));
  }
  if (out.empty()) throw usage_error("empty range");
  return out;
}

Eigen::MatrixXi parse_edges(const std::string& text, int vertices) {
  std::vector<std::pair<int, int>> edges;
  int m = vertices;
  for (const auto& item : split(text, ',')) {
    if (trim(item).empty()) continue;
    const auto ends = split(trim(item), '-');
    if (ends.size() != 2) throw usage_error("edges look like 0-1,1-2");
    const int u = parse_int(ends[0]), v = parse_int(ends[1]);
    if (u < 0 || v < 0) throw usage_error("negative vertex index");
    edges.emplace_back(u, v);
    if (vertices <= 0) m = std::max({m, u + 1, v + 1});
  }
  if (m <= 0) throw usage_error("graph needs --edges or --vertices");
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(m, m);
  for (auto [u, v] : edges) {
    if (u >= m || v >= m) throw usage_error("edge endpoint exceeds --vertices");
    adj(u, v) = adj(v, u) = 1;
  }
  return adj;
}

Partition parse_partition(const std::string& text, int parties) {
  const std::string s = trim(text);
  std::vector<std::vector<int>> blocks;
  if (!s.empty() && s.front() == '[') {
    try {
      return partition_from_json(json::parse(s));
    } catch (const json::exception& e) {
      throw usage_error(std::string("bad partition JSON: ") + e.what());
    }
  }
  for (const auto& part : split(s, '|')) {
    std::vector<int> block;
    if (!part.empty() && std::isalpha(static_cast<unsigned char>(part.front()))) {
      for (char c : part) block.push_back(std::toupper(static_cast<unsigned char>(c)) - 'A');
    } else {
      for (const auto& item : split(part, ','))
        if (!trim(item).empty()) block.push_back(parse_int(item));
    }
    blocks.push_back(std::move(block));
  }
  Partition p(std::move(blocks));
  if (p.parties() != parties) throw usage_error("partition does not cover the state's parties");
  return p;
}

StateDocument make_state(const std::string& name, const MakeParams& params) {
  StateDocument doc{PureState(VectorX<cplx>::Ones(1), Dims{1}), name, ""};
  if (name == "bell") {
    doc.state = bell_state(params.d);
  } else if (name == "ghz") {
    std::vector<double> lambda = params.lambda.empty() ? std::vector<double>(params.d, 1.0 / params.d)
                                                       : parse_real_list(params.lambda);
    doc.state = ghz_state(params.n, params.d, lambda);
  } else if (name == "w") {
    doc.state = w_state();
  } else if (name == "graph") {
    doc.state = graph_state(parse_edges(params.edges, params.vertices));
  } else if (name == "smolin") {
    doc.state = smolin_state();
  } else if (name == "upb") {
    doc.state = upb_state();
  } else if (name == "psi25") {
    doc.state = psi25_state();
  } else if (name == "phi-a") {
    doc.state = phi_a_state(parse_complex(params.a));
  } else if (name == "acin") {
    const auto r = parse_real_list(params.r);
    if (r.size() != 5) throw usage_error("--r needs five comma-separated values");
    double norm = 0.0;
    for (double x : r) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw usage_error("--r must not be all zero");
    std::array<double, 5> rr{};
    for (int k = 0; k < 5; ++k) rr[k] = r[k] / norm;
    if (std::abs(norm - 1.0) > 1e-10) doc.note = "r rescaled to unit norm";
    doc.state = acin_state(rr, params.theta);
  } else {
    throw usage_error("unknown state '" + name + "' (bell, ghz, w, graph, smolin, upb, psi25, phi-a, acin)");
  }
  return doc;
}

json analyze(const StateDocument& doc, const std::vector<std::string>& which, const GlobalOptions& opts,
             bool& converged) {
  const Dims& dims = doc.dims();
  const int n = static_cast<int>(dims.size());
  const bool pure = doc.is_pure();
  const bool three_qubits = pure && dims == Dims{2, 2, 2};
  json report;
  report["state"] = {{"dims", dims}, {"type", pure ? "pure" : "mixed"}};
  if (!doc.name.empty()) report["state"]["name"] = doc.name;
  json& out = report["analyses"];
  out = json::object();

  for (const auto& id : which) {
    if (id == "invariants") {
      out[id] = three_qubits ? to_json(lu_invariants(std::get<PureState>(doc.state)))
                             : inapplicable("requires a three-qubit pure state");
    } else if (id == "tangles") {
      if (three_qubits) {
        const auto& psi = std::get<PureState>(doc.state);
        const auto t = tangles(psi);
        out[id] = {{"tau1", t.tau1},
                   {"tau2", t.tau2},
                   {"tau3", t.tau3},
                   {"tau_A|BC", one_party_tangle(psi, 0)},
                   {"tau_B|AC", one_party_tangle(psi, 1)},
                   {"tau_C|AB", one_party_tangle(psi, 2)},
                   {"tau_AB", pair_tangle(psi, 0, 1)},
                   {"tau_AC", pair_tangle(psi, 0, 2)},
                   {"tau_BC", pair_tangle(psi, 1, 2)},
                   {"monogamy_gap", monogamy_gap(psi)}};
      } else if (dims == Dims{2, 2}) {
        const double c = wootters_concurrence(doc.density());
        out[id] = {{"concurrence", c}, {"tangle", c * c}};
      } else {
        out[id] = inapplicable("requires two or three qubits (three only when pure)");
      }
    } else if (id == "class") {
      if (!pure) {
        out[id] = inapplicable("pure states only; use ppt for mixed states");
      } else if (n > 8) {
        out[id] = inapplicable("more than 8 parties");
      } else {
        const auto& psi = std::get<PureState>(doc.state);
        const auto rep = classify_pure(psi, opts.tol);
        json cuts = json::object();
        for (const auto& [p, product] : rep.bipartition_product) cuts[p.label()] = product;
        out[id] = {{"finest_product_partition", to_json(rep.finest_product_partition)},
                   {"producibility", rep.producibility_m},
                   {"genuinely_multipartite", rep.genuinely_multipartite},
                   {"fully_separable", rep.fully_separable},
                   {"bipartition_product", cuts}};
        if (three_qubits) out[id]["slocc_class"] = to_string(slocc_class_3qubit(psi));
      }
    } else if (id == "schmidt") {
      if (!pure || n < 2 || n > 8) {
        out[id] = inapplicable("requires a pure state on 2 to 8 parties");
      } else {
        const auto& psi = std::get<PureState>(doc.state);
        json cuts = json::array();
        for (const auto& bip : enumerate_bipartitions(n)) {
          const auto s = schmidt(psi, bip);
          cuts.push_back({{"partition", to_json(bip)},
                          {"label", bip.label()},
                          {"lambda", vector_json(s.lambda)},
                          {"rank", schmidt_rank(psi, bip)},
                          {"entropy", entanglement_entropy(psi, bip)}});
        }
        out[id] = cuts;
      }
    } else if (id == "ppt") {
      if (n < 2 || n > 6) {
        out[id] = inapplicable("requires 2 to 6 parties");
      } else {
        json cuts = json::array();
        bool all = true;
        for (const auto& [bip, r] : ppt_all_bipartitions(doc.density())) {
          all = all && r.ppt;
          cuts.push_back({{"partition", to_json(bip)},
                          {"label", bip.label()},
                          {"ppt", r.ppt},
                          {"min_eigenvalue", r.min_eigenvalue},
                          {"verdict", cut_verdict(r) == CutVerdict::EntangledNpt ? "entangled" : "inconclusive"}});
        }
        out[id] = {{"all_ppt", all}, {"cuts", cuts}};
      }
    } else if (id == "polytope") {
      if (!pure || !all_qubits(dims)) {
        out[id] = inapplicable("requires a pure qubit state");
      } else {
        const auto& psi = std::get<PureState>(doc.state);
        json coords = json::array();
        for (int k = 0; k < n; ++k) coords.push_back(std::clamp(local_spectrum(psi, k)(1), 0.0, 0.5));
        out[id] = {{"coords", coords}};
      }
    } else if (id == "geometric-measure") {
      if (!pure || doc.dims().empty() || std::get<PureState>(doc.state).dim() > 1024) {
        out[id] = inapplicable("requires a pure state of total dimension <= 1024");
      } else {
        OptimizerOptions o;
        o.seed = opts.seed;
        o.restarts = opts.restarts;
        const auto r = geometric_measure(std::get<PureState>(doc.state), o);
        converged = converged && r.converged;
        out[id] = {{"value", r.value}, {"converged", r.converged}, {"restarts", r.restarts_used}};
      }
    } else {
      throw usage_error("unknown analysis '" + id + "'");
    }
  }
  return report;
}

json convert_check(const StateDocument& source, const StateDocument& target, const Partition& bipartition,
                   int catalyst_dim, int grid) {
  if (!source.is_pure() || !target.is_pure()) throw usage_error("convert-check needs pure states");
  if (source.dims() != target.dims()) throw usage_error("source and target dims differ");
  const auto& psi = std::get<PureState>(source.state);
  const auto& phi = std::get<PureState>(target.state);
  const auto ls = schmidt(psi, bipartition).lambda;
  const auto lt = schmidt(phi, bipartition).lambda;
  json out = {{"bipartition", to_json(bipartition)},
              {"convertible", nielsen_convertible(psi, phi, bipartition)},
              {"reverse_convertible", nielsen_convertible(phi, psi, bipartition)},
              {"schmidt_source", vector_json(ls)},
              {"schmidt_target", vector_json(lt)}};
  if (catalyst_dim > 0) {
    const auto c = find_catalyst(psi, phi, bipartition, catalyst_dim, grid);
    out["catalyst"] = {{"dim", catalyst_dim}, {"grid", grid}, {"found", c.has_value()}, {"lambda", nullptr}};
    if (c) out["catalyst"]["lambda"] = *c;
  }
  return out;
}

Table sweep(const std::string& family, const std::string& grid, const std::vector<std::string>& analyses) {
  for (const auto& a : analyses) {
    if (a != "purity" && a != "ppt" && a != "polytope" && a != "invariants") {
      throw usage_error("unknown sweep analysis '" + a + "' (purity, ppt, polytope, invariants)");
    }
  }
  struct Point {
    std::vector<json> params;
    std::optional<PureState> pure;
    std::optional<DensityMatrix> mixed;
  };
  std::vector<Point> points;
  Table t;
  if (family == "ghz-noise") {
    t.columns = {"p"};
    const MatrixX<cplx> ghz = DensityMatrix(ghz_state()).matrix();
    const MatrixX<cplx> id = maximally_mixed({2, 2, 2}).matrix();
    for (double p : parse_grid(grid)) {
      if (p < 0.0 || p > 1.0) throw usage_error("ghz-noise needs p in [0, 1]");
      points.push_back({{p}, std::nullopt, DensityMatrix(p * ghz + (1.0 - p) * id, {2, 2, 2})});
    }
  } else if (family == "phi-a") {
    t.columns = {"a"};
    for (double a : parse_grid(grid)) points.push_back({{a}, phi_a_state(a), std::nullopt});
  } else if (family == "acin-grid") {
    t.columns = {"r0", "r1", "r2", "r3", "r4", "theta"};
    for (const auto& item : split(grid, ';')) {
      if (trim(item).empty()) continue;
      auto v = parse_real_list(item);
      if (v.size() != 5 && v.size() != 6) throw usage_error("acin-grid points are r0,r1,r2,r3,r4[,theta]");
      std::array<double, 5> r{};
      double norm = 0.0;
      for (int k = 0; k < 5; ++k) norm += v[k] * v[k];
      norm = std::sqrt(norm);
      if (!(norm > 0.0)) throw usage_error("acin-grid point is all zero");
      for (int k = 0; k < 5; ++k) r[k] = v[k] / norm;
      const double theta = v.size() == 6 ? v[5] : 0.0;
      points.push_back({{r[0], r[1], r[2], r[3], r[4], theta}, acin_state(r, theta), std::nullopt});
    }
    if (points.empty()) throw usage_error("empty grid");
  } else {
    throw usage_error("unknown sweep family '" + family + "' (ghz-noise, phi-a, acin-grid)");
  }

  const int parties = family == "phi-a" ? 4 : 3;
  for (const auto& a : analyses) {
    if (a == "purity") t.columns.push_back("purity");
    if (a == "ppt") {
      t.columns.push_back("ppt_all");
      t.columns.push_back("ppt_min_eigenvalue");
    }
    if (a == "polytope")
      for (int k = 0; k < parties; ++k) t.columns.push_back("lambda_min_" + std::to_string(k));
    if (a == "invariants") {
      for (const char* c : {"i1", "i2", "i3", "i4", "i5", "i6", "tau1", "tau2", "tau3"}) t.columns.push_back(c);
    }
  }

  for (const auto& pt : points) {
    std::vector<json> row = pt.params;
    const DensityMatrix rho = pt.pure ? DensityMatrix(*pt.pure) : *pt.mixed;
    for (const auto& a : analyses) {
      if (a == "purity") row.push_back(purity(rho));
      if (a == "ppt") {
        bool all = true;
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& [bip, r] : ppt_all_bipartitions(rho)) {
          all = all && r.ppt;
          lo = std::min(lo, r.min_eigenvalue);
        }
        row.push_back(all);
        row.push_back(lo);
      }
      if (a == "polytope")
        for (int k = 0; k < parties; ++k) row.push_back(min_local_eigenvalue(rho, k));
      if (a == "invariants") {
        if (pt.pure && pt.pure->dims() == Dims{2, 2, 2}) {
          const auto rec = lu_invariants(*pt.pure);
          for (double v : rec.i) row.push_back(v);
          row.push_back(rec.tau1);
          row.push_back(rec.tau2);
          row.push_back(rec.tau3);
        } else {
          for (int k = 0; k < 9; ++k) row.push_back(nullptr);
        }
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

json teleport_demo(int d, const GlobalOptions& opts) {
  if (d < 2 || d > 16) throw usage_error("teleport-demo needs 2 <= d <= 16");
  std::mt19937_64 rng(opts.seed);
  MatrixX<cplx> g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = random_complex_gaussian(d, rng);
  MatrixX<cplx> m = g * g.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint()) / 2.0;
  const DensityMatrix input(m, {d});
  json branches = json::array();
  for (const auto& o : teleport(input, d)) {
    const double dist =
        o.post_state ? 0.5 * trace_norm_hermitian(MatrixX<cplx>(o.post_state->matrix() - input.matrix())) : 1.0;
    branches.push_back({{"label", o.label}, {"probability", o.probability}, {"trace_distance_to_input", dist}});
  }
  return {{"d", d}, {"seed", opts.seed}, {"choi_distance", teleport_choi_distance(d)}, {"branches", branches}};
}

json unlock_demo(std::array<int, 2> pair) {
  const auto bell = generalized_bell_basis(2);
  std::vector<int> rest;
  for (int k = 0; k < 4; ++k)
    if (k != pair[0] && k != pair[1]) rest.push_back(k);
  json branches = json::array();
  for (const auto& o : unlock_smolin(pair)) {
    json row = {{"label", o.label}, {"probability", o.probability}};
    if (o.post_state) {
      const double c = wootters_concurrence(*o.post_state);
      int best = 0;
      double best_f = -1.0;
      for (std::size_t i = 0; i < bell.size(); ++i) {
        const auto& v = bell[i].amplitudes();
        const double f = (v.adjoint() * o.post_state->matrix() * v).value().real();
        if (f > best_f) {
          best_f = f;
          best = static_cast<int>(i);
        }
      }
      row["tangle"] = c * c;
      row["bell_index"] = best;
      row["bell_fidelity"] = best_f;
    }
    branches.push_back(row);
  }
  return {{"joined", pair}, {"remaining", rest}, {"branches", branches}};
}

Table ame_table(const std::vector<int>& ns, const std::vector<int>& ds) {
  Table t;
  t.columns = {"n", "d", "feasible", "rule"};
  for (int n : ns) {
    for (int d : ds) {
      if (n < 2 || d < 2) throw usage_error("ame-table needs n >= 2 and d >= 2");
      const auto v = ame_feasibility(n, d);
      t.rows.push_back({n, d, to_string(v.feasible), v.reason});
    }
  }
  return t;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
  out += "\n";
  char buf[64];
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      const json& cell = row[c];
      if (cell.is_number_integer()) {
        out += std::to_string(cell.get<long>());
      } else if (cell.is_number()) {
        std::snprintf(buf, sizeof buf, "%.17g", cell.get<double>());
        out += buf;
      } else if (cell.is_boolean()) {
        out += cell.get<bool>() ? "true" : "false";
      } else if (cell.is_string()) {
        out += cell.get<std::string>();
      }
    }
    out += "\n";
  }
  return out;
}

json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
    rows.push_back(obj);
  }
  return rows;
}

}  // namespace entangle::cli
