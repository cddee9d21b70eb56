#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdperc/catastrophe.hpp"
#include "sdperc/lattice.hpp"
#include "sdperc/sdp.hpp"

namespace sdperc {

// Ground truth by summing p^a (1-p)^b delta^c (1-delta)^e over every (X, Y)
// on boxes with at most 12 sites. Sums are compensated in long double.

inline constexpr std::size_t kMaxOracleSites = 12;

enum class OracleEvent : std::uint8_t {
  Always,
  Theta,           // origin joined to the boundary in Z
  Spanning,        // left-right spanning cluster in Z
  OriginOccupied,  // Z at the origin
};

std::string_view to_string(OracleEvent event);
OracleEvent parse_oracle_event(std::string_view name);  // always|theta|spanning|origin

struct ExactResult {
  std::string event;
  double probability = 0.0;
  std::uint64_t configurations = 0;
};

using SamplePredicate = std::function<bool(const FiniteGraph&, const SdpSample&)>;

// Bitmask enumeration through the production destroy/label code.
ExactResult enumerate_event(const FiniteGraph& graph, double p, double delta, InfinityProxy proxy,
                            const SamplePredicate& event, std::string name);
ExactResult enumerate_event(const FiniteGraph& graph, double p, double delta, InfinityProxy proxy,
                            OracleEvent event);

// Second route: recursive branching over (X, Y) with zero-weight pruning and
// its own depth-first connectivity; shares nothing with the production
// cluster code beyond the graph's adjacency.
ExactResult enumerate_event_recursive(const FiniteGraph& graph, double p, double delta,
                                      InfinityProxy proxy, OracleEvent event);

struct ConditionalResult {
  double joint_y1 = 0.0;  // P(Y_v = 1, R_F = pattern)
  double joint_y0 = 0.0;  // P(Y_v = 0, R_F = pattern)
  double conditional = 0.0;
  std::uint64_t configurations = 0;
};

// Exact P(Y_v = 1 | R_u = r_u, u in F) for the neighbourhood colouring, by
// enumerating X on F and Y on {v} ∪ D_u (u in F). Throws NumericalError for a
// zero-probability pattern or more than 26 free bits.
ConditionalResult enumerate_conditional(const FiniteGraph& graph, FiniteGraph::Index v,
                                        std::span<const FiniteGraph::Index> F,
                                        std::span<const std::uint8_t> pattern, double p,
                                        double delta);

// Exact P(R_v = 1 | R_u = r_u, u in F), v not in F; joint_y1 holds
// P(R_v = 1, pattern) and joint_y0 holds P(R_v = 0, pattern).
ConditionalResult enumerate_red_conditional(const FiniteGraph& graph, FiniteGraph::Index v,
                                            std::span<const FiniteGraph::Index> F,
                                            std::span<const std::uint8_t> pattern, double p,
                                            double delta);

// Joint law of the tilde colouring at `sites` over all (X, Y) on the box:
// entry k is the probability that red at sites[i] equals bit i of k.
std::vector<double> enumerate_tilde_red_law(const FiniteGraph& graph,
                                            std::span<const FiniteGraph::Index> sites, double p,
                                            double delta);

}  // namespace sdperc
