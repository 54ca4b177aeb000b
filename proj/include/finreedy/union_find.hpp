#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace finreedy {

// Disjoint sets whose representative is always the least member, so the
// partition it induces is canonical regardless of the order of unions.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::size_t size() const noexcept { return parent_.size(); }

  std::uint32_t find(std::uint32_t x) noexcept {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
    return true;
  }

  bool connected(std::uint32_t a, std::uint32_t b) noexcept { return find(a) == find(b); }

  /// Dense class index per element; classes are numbered in order of their
  /// least member.
  std::vector<std::uint32_t> classes(std::size_t* count = nullptr) {
    std::vector<std::uint32_t> index(parent_.size());
    std::vector<std::uint32_t> of_root(parent_.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < parent_.size(); ++i) {
      const std::uint32_t r = find(i);
      if (of_root[r] == UINT32_MAX) of_root[r] = next++;
      index[i] = of_root[r];
    }
    if (count != nullptr) *count = next;
    return index;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace finreedy
