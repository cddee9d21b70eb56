#include "sdperc/catastrophe.hpp"

#include <algorithm>
#include <string>

#include "sdperc/error.hpp"
#include "sdperc/union_find.hpp"

namespace sdperc {

using Index = FiniteGraph::Index;

std::string_view to_string(InfinityProxy proxy) {
  return proxy == InfinityProxy::SpansOpposite ? "spans" : "touches";
}

InfinityProxy parse_infinity_proxy(std::string_view name) {
  if (name == "spans") return InfinityProxy::SpansOpposite;
  if (name == "touches") return InfinityProxy::TouchesBoundary;
  throw UsageError("unknown infinity proxy '" + std::string(name) + "' (spans|touches)");
}

bool is_infinite(std::uint8_t f, InfinityProxy proxy) {
  using namespace side_bits;
  if (proxy == InfinityProxy::TouchesBoundary) return (f & kAny) != 0;
  return ((f & kLeft) && (f & kRight)) || ((f & kBottom) && (f & kTop));
}

bool ClusterLabels::spans_left_right() const {
  for (Index r : roots) {
    auto f = flags[static_cast<std::size_t>(r)];
    if ((f & side_bits::kLeft) && (f & side_bits::kRight)) return true;
  }
  return false;
}

bool ClusterLabels::spans_any() const {
  for (Index r : roots)
    if (is_infinite(flags[static_cast<std::size_t>(r)], InfinityProxy::SpansOpposite)) return true;
  return false;
}

ClusterLabels label_clusters(const FiniteGraph& graph, const Config& config) {
  require_on(graph, config, "label_clusters");
  const std::size_t n = graph.vertex_count();
  auto bits = config.bits();

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    for (Index j : graph.neighbors(static_cast<Index>(i))) {
      if (static_cast<std::size_t>(j) > i && bits[static_cast<std::size_t>(j)])
        uf.unite(static_cast<Index>(i), j);
    }
  }

  ClusterLabels out;
  out.root.assign(n, FiniteGraph::kNone);
  out.size.assign(n, 0);
  out.flags.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    Index r = uf.find(static_cast<Index>(i));
    out.root[i] = r;
    auto ri = static_cast<std::size_t>(r);
    if (out.size[ri] == 0) out.roots.push_back(r);
    ++out.size[ri];
    out.flags[ri] |= graph.boundary_flags(static_cast<Index>(i));
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

Config destroy(const FiniteGraph& graph, const Config& x, const ClusterLabels& labels,
               InfinityProxy proxy) {
  require_on(graph, x, "destroy");
  if (labels.root.size() != x.size()) throw UsageError("destroy: labels do not match configuration");
  Config out = x;
  auto ob = out.bits();
  for (std::size_t i = 0; i < ob.size(); ++i) {
    if (ob[i] && is_infinite(labels.flags_of(static_cast<Index>(i)), proxy)) ob[i] = 0;
  }
  return out;
}

Config destroy(const FiniteGraph& graph, const Config& x, InfinityProxy proxy) {
  return destroy(graph, x, label_clusters(graph, x), proxy);
}

bool connects(const FiniteGraph& graph, const Config& config, std::span<const Index> from,
              std::span<const Index> to) {
  require_on(graph, config, "connects");
  const auto n = graph.vertex_count();
  for (Index v : from)
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw UsageError("connects: 'from' out of range");
  for (Index v : to)
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw UsageError("connects: 'to' out of range");
  if (from.empty() || to.empty()) return false;

  ClusterLabels labels = label_clusters(graph, config);
  std::vector<std::uint8_t> hit(n, 0);
  for (Index v : from)
    if (labels.occupied(v)) hit[static_cast<std::size_t>(labels.root[static_cast<std::size_t>(v)])] = 1;
  for (Index v : to)
    if (labels.occupied(v) && hit[static_cast<std::size_t>(labels.root[static_cast<std::size_t>(v)])])
      return true;
  return false;
}

bool origin_reaches_boundary(const FiniteGraph& graph, const Config& config) {
  require_on(graph, config, "origin_reaches_boundary");
  Index o = graph.origin();
  if (!config[static_cast<std::size_t>(o)]) return false;
  if (graph.boundary_flags(o)) return true;
  // Flood from the origin only; cheaper than labelling the whole box.
  std::vector<std::uint8_t> seen(graph.vertex_count(), 0);
  std::vector<Index> stack{o};
  seen[static_cast<std::size_t>(o)] = 1;
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    for (Index u : graph.neighbors(v)) {
      auto ui = static_cast<std::size_t>(u);
      if (seen[ui] || !config[ui]) continue;
      if (graph.boundary_flags(u)) return true;
      seen[ui] = 1;
      stack.push_back(u);
    }
  }
  return false;
}

bool spans_left_right(const FiniteGraph& graph, const Config& config) {
  return label_clusters(graph, config).spans_left_right();
}

}  // namespace sdperc
