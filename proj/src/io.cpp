#include "entangle/io.hpp"

namespace entangle {

namespace {

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

const Dims& StateDocument::dims() const {
  return std::visit([](const auto& s) -> const Dims& { return s.dims(); }, state);
}

DensityMatrix StateDocument::density() const {
  if (is_pure()) return DensityMatrix(std::get<PureState>(state));
  return std::get<DensityMatrix>(state);
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const StateDocument& doc) {
  json j;
  j["dims"] = doc.dims();
  if (doc.is_pure()) {
    const auto& psi = std::get<PureState>(doc.state);
    j["type"] = "pure";
    json amps = json::array();
    for (Index i = 0; i < psi.dim(); ++i) amps.push_back(complex_to_json(psi[i]));
    j["amplitudes"] = std::move(amps);
  } else {
    const auto& rho = std::get<DensityMatrix>(doc.state);
    j["type"] = "mixed";
    json m = json::array();
    for (Index r = 0; r < rho.dim(); ++r)
      for (Index c = 0; c < rho.dim(); ++c) m.push_back(complex_to_json(rho.matrix()(r, c)));
    j["matrix"] = std::move(m);
  }
  if (!doc.name.empty()) j["name"] = doc.name;
  if (!doc.note.empty()) j["note"] = doc.note;
  return j;
}

StateDocument state_document_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("state document must be a JSON object");
  if (!j.contains("dims") || !j["dims"].is_array()) throw std::invalid_argument("state document needs a dims array");
  Dims dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer()) throw std::invalid_argument("dims must be integers");
    dims.push_back(d.get<int>());
  }
  const long total = total_dim(dims);
  const std::string type = j.value("type", "");
  const std::string name = j.value("name", "");
  const std::string note = j.value("note", "");
  if (type == "pure") {
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) throw std::invalid_argument("missing amplitudes");
    const auto& a = j["amplitudes"];
    if (static_cast<long>(a.size()) != total) throw std::invalid_argument("amplitude count does not match dims");
    VectorX<cplx> v(total);
    for (long i = 0; i < total; ++i) v(i) = complex_from_json(a[i]);
    return {PureState(std::move(v), std::move(dims)), name, note};
  }
  if (type == "mixed") {
    if (!j.contains("matrix") || !j["matrix"].is_array()) throw std::invalid_argument("missing matrix");
    const auto& m = j["matrix"];
    MatrixX<cplx> rho(total, total);
    const bool nested = static_cast<long>(m.size()) == total && total > 0 && m[0].is_array() && m[0].size() > 0 &&
                        m[0][0].is_array();
    if (nested) {
      for (long r = 0; r < total; ++r) {
        if (!m[r].is_array() || static_cast<long>(m[r].size()) != total) throw std::invalid_argument("ragged matrix rows");
        for (long c = 0; c < total; ++c) rho(r, c) = complex_from_json(m[r][c]);
      }
    } else {
      if (static_cast<long>(m.size()) != total * total) throw std::invalid_argument("matrix size does not match dims");
      for (long r = 0; r < total; ++r)
        for (long c = 0; c < total; ++c) rho(r, c) = complex_from_json(m[r * total + c]);
    }
    return {DensityMatrix(std::move(rho), std::move(dims)), name, note};
  }
  throw std::invalid_argument("state document type must be \"pure\" or \"mixed\"");
}

json to_json(const InvariantRecord& rec) {
  json j;
  for (int k = 0; k < 6; ++k) j["i" + std::to_string(k + 1)] = rec.i[k];
  j["tau1"] = rec.tau1;
  j["tau2"] = rec.tau2;
  j["tau3"] = rec.tau3;
  j["ranks"] = rec.ranks;
  j["polytope"] = rec.polytope;
  j["class"] = to_string(rec.class_label);
  return j;
}

json to_json(const Partition& p) { return p.blocks(); }

Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("partition must be a list of blocks");
  try {
    return Partition(j.get<std::vector<std::vector<int>>>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed partition: ") + e.what());
  }
}

}  // namespace entangle
