#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace sdperc {

// Weighted quick-union with path halving.
class UnionFind {
 public:
  using Id = std::int32_t;

  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Id{0});
  }

  Id find(Id i) {
    while (parent_[static_cast<std::size_t>(i)] != i) {
      auto& p = parent_[static_cast<std::size_t>(i)];
      p = parent_[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  }

  // Returns the surviving root.
  Id unite(Id a, Id b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    return a;
  }

  bool connected(Id a, Id b) { return find(a) == find(b); }
  Id size_of(Id i) { return size_[static_cast<std::size_t>(find(i))]; }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<Id> parent_;
  std::vector<Id> size_;
};

}  // namespace sdperc
