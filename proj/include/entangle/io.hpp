#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "entangle/invariants3q.hpp"
#include "entangle/partition.hpp"
#include "entangle/states.hpp"

namespace entangle {

using json = nlohmann::json;

/// {"dims": [...], "type": "pure"|"mixed", "amplitudes"|"matrix": [[re, im], ...],
///  "name": optional, "note": optional}. Matrices are written flat, row-major;
/// nested rows are accepted on input.
struct StateDocument {
  std::variant<PureState, DensityMatrix> state;
  std::string name;
  std::string note;

  bool is_pure() const { return std::holds_alternative<PureState>(state); }
  const Dims& dims() const;
  /// The pure state as a density matrix, or the mixed state itself.
  DensityMatrix density() const;
};

json to_json(const StateDocument& doc);
/// Throws invalid_argument on malformed documents.
StateDocument state_document_from_json(const json& j);

json complex_to_json(cplx z);
json to_json(const InvariantRecord& rec);
json to_json(const Partition& p);
Partition partition_from_json(const json& j);

}  // namespace entangle
