#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sdperc/config.hpp"
#include "sdperc/lattice.hpp"

namespace sdperc {

// Finite-volume stand-in for "belongs to an infinite occupied cluster".
enum class InfinityProxy : std::uint8_t {
  SpansOpposite,    // touches left and right, or bottom and top
  TouchesBoundary,  // touches any side
};

std::string_view to_string(InfinityProxy proxy);
InfinityProxy parse_infinity_proxy(std::string_view name);  // "spans" | "touches"

bool is_infinite(std::uint8_t side_flags, InfinityProxy proxy);

struct ClusterLabels {
  // Root site of each occupied site's cluster; kNone for vacant sites.
  std::vector<FiniteGraph::Index> root;
  // Indexed by root site; meaningful only at roots.
  std::vector<std::int32_t> size;
  std::vector<std::uint8_t> flags;
  // One entry per cluster, ascending.
  std::vector<FiniteGraph::Index> roots;

  std::size_t cluster_count() const { return roots.size(); }
  bool occupied(FiniteGraph::Index i) const {
    return root[static_cast<std::size_t>(i)] != FiniteGraph::kNone;
  }
  std::uint8_t flags_of(FiniteGraph::Index i) const {
    return flags[static_cast<std::size_t>(root[static_cast<std::size_t>(i)])];
  }
  bool spans_left_right() const;
  bool spans_any() const;
};

ClusterLabels label_clusters(const FiniteGraph& graph, const Config& config);

// X*: occupied sites whose cluster is not proxy-infinite. Removes every such
// cluster, not only the largest.
Config destroy(const FiniteGraph& graph, const Config& x,
               InfinityProxy proxy = InfinityProxy::SpansOpposite);
Config destroy(const FiniteGraph& graph, const Config& x, const ClusterLabels& labels,
               InfinityProxy proxy);

// An occupied path joins some site of `from` to some site of `to`. A single
// occupied site in both sets counts.
bool connects(const FiniteGraph& graph, const Config& config,
              std::span<const FiniteGraph::Index> from,
              std::span<const FiniteGraph::Index> to);

// Origin joined to the box boundary by an occupied path.
bool origin_reaches_boundary(const FiniteGraph& graph, const Config& config);

// Some occupied cluster touches both the left and the right side.
bool spans_left_right(const FiniteGraph& graph, const Config& config);

}  // namespace sdperc
