#include "entangle/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace entangle {

Partition::Partition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  std::vector<int> all;
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition blocks must be non-empty");
    std::sort(b.begin(), b.end());
    all.insert(all.end(), b.begin(), b.end());
  }
  if (blocks_.empty()) throw std::invalid_argument("partition has no blocks");
  std::sort(all.begin(), all.end());
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (all[k] != static_cast<int>(k)) {
      throw std::invalid_argument("partition blocks must be disjoint and cover 0..n-1");
    }
  }
  n_ = static_cast<int>(all.size());
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::bipartition(std::vector<int> left, int n) {
  std::vector<int> right;
  for (int k = 0; k < n; ++k) {
    if (std::find(left.begin(), left.end(), k) == left.end()) right.push_back(k);
  }
  if (left.empty() || right.empty()) throw std::invalid_argument("bipartition sides must be non-empty");
  return Partition({std::move(left), std::move(right)});
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks;
  for (int k = 0; k < n; ++k) blocks.push_back({k});
  return Partition(std::move(blocks));
}

Partition Partition::whole(int n) {
  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k;
  return Partition({std::move(all)});
}

int Partition::largest_block() const {
  std::size_t m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.size());
  return static_cast<int>(m);
}

std::string Partition::to_json_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(blocks_[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

std::string Partition::label() const {
  std::string s;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += "|";
    for (int k : blocks_[i]) {
      s += k < 26 ? std::string(1, static_cast<char>('A' + k)) : "(" + std::to_string(k) + ")";
    }
  }
  return s;
}

}  // namespace entangle
