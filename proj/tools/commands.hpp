#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entangle/io.hpp"

namespace entangle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonConvergence = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  /// Product-state purity tolerance for classification.
  double tol = 1e-9;
  int restarts = 32;
};

/// Raised for bad command-line input; maps to exit code 2.
struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

cplx parse_complex(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
/// "start:stop:step" (inclusive) or a comma list.
std::vector<double> parse_grid(const std::string& text);
/// "2:8" or "2,3,5".
std::vector<int> parse_int_range(const std::string& text);
/// "0-1,1-2" with vertex count inferred unless `vertices` > 0.
Eigen::MatrixXi parse_edges(const std::string& text, int vertices);
/// "AB|C", "0,1|2" or a JSON list of blocks.
Partition parse_partition(const std::string& text, int parties);

struct MakeParams {
  int n = 3;
  int d = 2;
  std::string lambda;
  std::string edges;
  int vertices = 0;
  std::string a = "1";
  std::string r;
  double theta = 0.0;
};

StateDocument make_state(const std::string& name, const MakeParams& params);

inline const std::vector<std::string> kAllAnalyses = {"invariants", "tangles", "class", "schmidt",
                                                      "ppt",        "polytope", "geometric-measure"};

/// Report with one section per requested analysis. Sections that do not
/// apply to the state are {"status": "inapplicable", "reason": ...}.
/// `converged` is cleared when an optimizer stops early.
json analyze(const StateDocument& doc, const std::vector<std::string>& which, const GlobalOptions& opts,
             bool& converged);

json convert_check(const StateDocument& source, const StateDocument& target, const Partition& bipartition,
                   int catalyst_dim, int grid);

/// Column names plus rows; cells are numbers, booleans or null.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

/// family in {ghz-noise, phi-a, acin-grid}; analyses from {purity, ppt, polytope, invariants}.
Table sweep(const std::string& family, const std::string& grid, const std::vector<std::string>& analyses);

json teleport_demo(int d, const GlobalOptions& opts);
json unlock_demo(std::array<int, 2> pair);
Table ame_table(const std::vector<int>& ns, const std::vector<int>& ds);

std::string to_csv(const Table& t);
json to_json(const Table& t);

}  // namespace entangle::cli
