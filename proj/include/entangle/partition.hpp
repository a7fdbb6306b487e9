#pragma once

#include <compare>
#include <string>
#include <vector>

namespace entangle {

/// Disjoint non-empty blocks covering {0, ..., n-1}; stored canonically with
/// each block sorted and blocks ordered by their smallest element.
class Partition {
 public:
  /// The ground set is inferred as {0, ..., total size - 1}.
  explicit Partition(std::vector<std::vector<int>> blocks);

  /// `left` versus its complement in {0, ..., n-1}.
  static Partition bipartition(std::vector<int> left, int n);
  /// Finest partition: every party alone.
  static Partition singletons(int n);
  /// Coarsest partition: one block.
  static Partition whole(int n);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int parties() const { return n_; }
  int largest_block() const;

  /// e.g. [[0,1],[2]]
  std::string to_json_string() const;
  /// e.g. AB|C (parties lettered from A)
  std::string label() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<std::vector<int>> blocks_;
  int n_ = 0;
};

}  // namespace entangle
