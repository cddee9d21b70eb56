#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdperc/lattice.hpp"

namespace sdperc {

// Identifies the graph a configuration lives on. Boxes are deterministic, so
// (kind, side) pins the vertex set.
struct GraphTag {
  LatticeKind kind = LatticeKind::SquareSite;
  int side = 0;
  std::size_t vertices = 0;

  friend bool operator==(const GraphTag&, const GraphTag&) = default;
};

inline GraphTag tag_of(const FiniteGraph& g) { return {g.kind(), g.side(), g.vertex_count()}; }

// A 0/1 field over the sites of one box: X, Y, X*, Z or a red colouring.
class Config {
 public:
  Config() = default;
  explicit Config(const FiniteGraph& g, std::uint8_t fill = 0)
      : tag_(tag_of(g)), bits_(g.vertex_count(), fill ? 1 : 0) {}
  Config(const FiniteGraph& g, std::vector<std::uint8_t> bits);

  const GraphTag& tag() const { return tag_; }
  std::size_t size() const { return bits_.size(); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::span<std::uint8_t> bits() { return bits_; }

  std::size_t count() const;
  bool on(const FiniteGraph& g) const { return tag_ == tag_of(g); }

  friend bool operator==(const Config&, const Config&) = default;

 private:
  GraphTag tag_;
  std::vector<std::uint8_t> bits_;
};

// Throws UsageError when `c` was not built for `g`.
void require_on(const FiniteGraph& g, const Config& c, const char* what);

// Pointwise operations; operands must share a graph.
Config operator|(const Config& a, const Config& b);
Config operator&(const Config& a, const Config& b);
Config operator~(const Config& a);

// a <= b at every site.
bool pointwise_leq(const Config& a, const Config& b);

}  // namespace sdperc
